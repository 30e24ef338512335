#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <onlz/nav_trie.hpp>
#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>

namespace onlz {

/// Structural change reported by SparseSuffixTree::extend, in creation order.
struct TreeEvent {
    enum class Kind { split, leaf };
    using Vertex = std::uint32_t;
    static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

    Kind kind;
    Vertex vertex;         ///< the new internal vertex or leaf
    Vertex parent;
    Vertex lower = kNone;  ///< split: the vertex now hanging below \c vertex
    Vertex left = kNone;   ///< leaf: previous sibling in child order
    Vertex right = kNone;  ///< leaf: next sibling in child order
};

/// \brief Implicit suffix tree of the meta-word W', built online with
/// Ukkonen's algorithm.
///
/// Meta-characters are the r-character blocks of the text; block k (1-based)
/// is read straight from the packed text. Edge labels are block intervals.
/// Children of a vertex are kept in a crit-bit navigation trie keyed by the
/// first block of their edge, so child order is numeric (and thus
/// lexicographic) block order and any character prefix of a block selects a
/// contiguous run of children.
class SparseSuffixTree {
public:
    using Vertex = TreeEvent::Vertex;
    static constexpr Vertex kNone = TreeEvent::kNone;
    static constexpr Vertex kRoot = 0;

    SparseSuffixTree(Params const& params, PackedText const& text);

    /// \brief Appends block t+1 of the text to the tree.
    ///
    /// The block must be fully present in the text. Returns the splits and
    /// new leaves in creation order.
    std::vector<TreeEvent> extend();

    /// Number of blocks in the tree, t.
    std::uint64_t blocks() const { return t_; }

    /// Packed value of block k (1-based).
    std::uint64_t meta(std::uint64_t k) const { return text_->pack((k - 1) * params_.r + 1, params_.r); }

    /// True iff the suffix of W' starting at block j is a leaf.
    bool is_block_suffix_leaf(std::uint64_t j) const { return j >= 1 && j <= leaf_count_; }

    /// Child of \p v whose edge starts with block value \p m, or kNone.
    Vertex resolve_edge(Vertex v, std::uint64_t m) const;

    /// \brief First and last child of \p v whose edge starts with the
    /// \p k-character prefix \p prefix (packed like a block).
    std::optional<std::pair<Vertex, Vertex>> child_span(Vertex v, std::uint64_t prefix, unsigned k) const;

    /// Character \p offset (1-based) of the label of the edge into \p u.
    CharCode edge_char(Vertex u, std::uint64_t offset) const;

    /// Label length of the edge into \p u, in characters.
    std::uint64_t edge_length(Vertex u) const { return (edge_end(u) - vertices_[u].start) * params_.r; }

    /// String depth of \p v in characters.
    std::uint64_t depth(Vertex v) const;

    /// Block border of a leaf: (j - 1) r + 1 for suffix start block j.
    std::uint64_t leaf_border(Vertex leaf) const { return (vertices_[leaf].suffix - 1) * params_.r + 1; }

    /// Suffix start block of a leaf (1-based).
    std::uint64_t leaf_suffix(Vertex leaf) const { return vertices_[leaf].suffix; }

    bool is_leaf(Vertex v) const { return vertices_[v].suffix != 0; }
    Vertex parent(Vertex v) const { return vertices_[v].parent; }
    Vertex suffix_link(Vertex v) const { return vertices_[v].link; }

    /// First block (1-based) and one-past-last block of the edge into \p u.
    std::pair<std::uint64_t, std::uint64_t> edge_blocks(Vertex u) const {
        return {vertices_[u].start + 1, edge_end(u) + 1};
    }

    /// Children of \p v in order.
    std::vector<Vertex> children(Vertex v) const;

    std::uint64_t leaf_count() const { return leaf_count_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t nav_node_count() const { return nav_.node_count(); }
    std::uint64_t remainder() const { return remainder_; }

private:
    static constexpr std::uint64_t kOpen = std::numeric_limits<std::uint64_t>::max();

    struct Node {
        std::uint64_t start;        // 0-based first block of the incoming edge
        std::uint64_t end;          // exclusive; kOpen for leaves
        Vertex parent = kNone;
        Vertex link = kNone;
        NavForest::Ref nav = NavForest::kEmpty;
        std::uint64_t depth_blocks = 0; // internal vertices only
        std::uint64_t suffix = 0;       // leaves: 1-based start block
    };

    std::uint64_t edge_end(Vertex u) const { return vertices_[u].end == kOpen ? t_ : vertices_[u].end; }
    std::uint64_t block0(std::uint64_t k) const { return meta(k + 1); } // 0-based access
    std::uint64_t key_of(Vertex u) const { return block0(vertices_[u].start); }

    Vertex new_vertex(std::uint64_t start, std::uint64_t end, Vertex parent);
    NavForest::Neighbors add_child(Vertex v, Vertex child);

    Params params_;
    PackedText const* text_;
    std::vector<Node> vertices_;
    NavForest nav_;
    std::uint64_t t_ = 0;
    std::uint64_t leaf_count_ = 0;

    // Ukkonen active point
    Vertex active_node_ = kRoot;
    std::uint64_t active_edge_ = 0;
    std::uint64_t active_len_ = 0;
    std::uint64_t remainder_ = 0;
};

} // namespace onlz
