#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>

namespace onlz {

/// \brief Uncompacted trie over the suffixes of the 2r-character windows
/// W[rj+1..r(j+2)].
///
/// Each node stores the leftmost starting position of an inserted suffix whose
/// path passes through it. Descending with an upper bound on that position
/// answers "longest prefix of W[from..to] that occurs starting at or before
/// max_pos", which is what short factors need.
class BlockTrie {
public:
    using Node = std::uint32_t;
    static constexpr Node kRoot = 0;
    static constexpr Node kNone = std::numeric_limits<Node>::max();
    static constexpr std::uint64_t kNoPos = std::numeric_limits<std::uint64_t>::max();

    /// Alphabets up to this size use dense child arrays.
    static constexpr std::uint64_t kDenseSigmaLimit = 64;

    BlockTrie() : BlockTrie(Params{}) {}
    explicit BlockTrie(Params const& params);

    /// \brief Ingests window j, truncated to W[rj+1..min(r(j+2), text.size())].
    ///
    /// If the window word is already represented nothing changes; otherwise
    /// all of its suffixes are inserted and every node on an insertion path
    /// has its min_pos lowered to the suffix start.
    void ingest_window(PackedText const& text, std::uint64_t j);

    /// \brief Follows W[from..to] from \p node while the child exists and its
    /// min_pos is at most \p max_pos.
    ///
    /// Returns the last accepted node and the number of accepted characters.
    std::pair<Node, std::uint64_t> descend(Node node, PackedText const& text, std::uint64_t from,
                                           std::uint64_t to, std::uint64_t max_pos) const;

    Node child(Node v, CharCode c) const;
    std::uint64_t min_pos(Node v) const { return min_pos_[v]; }
    std::size_t node_count() const { return min_pos_.size(); }

    /// Number of window ingestions that inserted suffixes.
    std::size_t inserted_windows() const { return inserted_windows_; }

    /// All (child code, child node) pairs of \p v in code order.
    std::vector<std::pair<CharCode, Node>> children(Node v) const;

private:
    Node add_child(Node v, CharCode c);

    Params params_;
    bool dense_ = true;
    std::vector<std::uint64_t> min_pos_;
    std::vector<Node> dense_children_;                                 // node * sigma + code
    std::vector<std::vector<std::pair<CharCode, Node>>> sparse_children_; // sorted by code
    std::size_t inserted_windows_ = 0;
};

} // namespace onlz
