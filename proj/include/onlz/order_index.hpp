#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <onlz/avl_sequence.hpp>
#include <onlz/sparse_suffix_tree.hpp>

namespace onlz {

/// \brief Euler tour of the suffix tree kept in a balanced tree with
/// suffix-leaf counts, giving leaf ranks and subtree rank spans in O(log n).
///
/// Internal vertices (and the root) appear twice, at their first and last
/// visit; leaves appear once and carry their block border.
class OrderIndex {
public:
    using Vertex = SparseSuffixTree::Vertex;

    struct LeafEntry {
        Vertex vertex;
        std::uint64_t border;
    };

    OrderIndex();

    /// \brief Places a new vertex into the tour.
    ///
    /// A split vertex brackets the vertex it was inserted above; a leaf goes
    /// right after its left sibling's last copy, right before its right
    /// sibling's first copy, or right after its parent's first copy when it is
    /// the only child. \p border is used for leaves only.
    void apply(TreeEvent const& ev, std::uint64_t border = 0);

    /// (rank of leftmost leaf, rank of rightmost leaf) below \p v; for a leaf
    /// both are its own rank. Empty subtrees give (k+1, k).
    std::pair<std::uint64_t, std::uint64_t> subtree_span(Vertex v) const;

    std::uint64_t leaf_rank(Vertex leaf) const;

    /// The k-th suffix leaf in left-to-right order; throws std::out_of_range.
    LeafEntry kth_suffix_leaf(std::uint64_t k) const;

    std::uint64_t leaf_count() const { return seq_.total().leaves; }
    std::size_t entry_count() const { return seq_.size(); }
    std::int32_t height() const { return seq_.height(); }

    /// Tour as (vertex, is_first_or_only_copy) pairs.
    std::vector<std::pair<Vertex, bool>> tour() const;

    /// Recomputes every subtree count from scratch and compares.
    bool check_counts() const;

private:
    struct Entry {
        Vertex vertex;
        std::uint64_t border;
        bool suffix_leaf;
        bool first_copy;
    };
    struct Summary {
        std::uint64_t leaves = 0;
        static Summary of(Entry const& e) { return {e.suffix_leaf ? 1u : 0u}; }
        friend Summary operator+(Summary const& a, Summary const& b) { return {a.leaves + b.leaves}; }
    };
    using Seq = AvlSequence<Entry, Summary>;

    void remember(Vertex v, Seq::Handle first, Seq::Handle last);

    Seq seq_;
    std::vector<Seq::Handle> first_;
    std::vector<Seq::Handle> last_;
};

} // namespace onlz
