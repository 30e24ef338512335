#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <onlz/dynamic_bit_vector.hpp>

namespace onlz {

/// \brief Dynamic wavelet tree over integer values in [0, max_value].
///
/// The value range of a node [lo, hi] is split at floor((lo + hi) / 2); a 0 bit
/// routes a value to the lower half. Nodes are created lazily on first use.
/// Positions are 1-based.
class DynamicWaveletTree {
public:
    using Value = std::uint64_t;

    DynamicWaveletTree() : DynamicWaveletTree(1) {}
    explicit DynamicWaveletTree(Value max_value);

    /// Inserts \p val so that it becomes element k+1 (k elements precede it).
    void insert(std::uint64_t k, Value val);

    Value access(std::uint64_t k) const;

    /// \brief Up to \p limit distinct positions in [first, last] whose value
    /// lies in [lo, hi].
    ///
    /// The range is decomposed into maximal wavelet nodes whose value interval
    /// is contained in [lo, hi]; if more than \p limit matches exist, the first
    /// limit-1 matches of that decomposition (value order, then position) and
    /// its very last match are returned. Positions are recovered by walking
    /// up with select.
    std::vector<std::uint64_t> range_candidates(std::uint64_t first, std::uint64_t last, Value lo,
                                                Value hi, std::size_t limit) const;

    /// Number of matches in [first, last] with value in [lo, hi].
    std::uint64_t range_count(std::uint64_t first, std::uint64_t last, Value lo, Value hi) const;

    std::uint64_t size() const { return size_; }
    Value max_value() const { return max_value_; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Total number of bits stored in node vectors.
    std::uint64_t total_bits() const;

    /// Maximum root-to-leaf depth of the value range, in edges.
    unsigned depth_bound() const;

    /// Nodes touched by the last range query (descent plus upward walks).
    std::size_t last_query_visits() const { return last_visits_; }

    /// Checks length conservation at every node; used by tests.
    bool check_lengths() const;

private:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    struct Node {
        Node(Value l, Value h) : lo(l), hi(h) {}
        Value lo, hi;
        std::uint32_t parent = kNone;
        std::uint32_t child[2] = {kNone, kNone};
        std::uint64_t count = 0;   // elements routed through this node
        DynamicBitVector bits;     // empty at leaves
    };

    struct Cover {
        std::uint32_t node;
        std::uint64_t first, last;
    };

    void collect(std::uint32_t x, std::uint64_t first, std::uint64_t last, Value lo, Value hi,
                 std::vector<Cover>& out) const;
    std::uint64_t to_root(std::uint32_t x, std::uint64_t k) const;

    Value max_value_;
    std::uint64_t size_ = 0;
    std::vector<Node> nodes_;
    mutable std::size_t last_visits_ = 0;
};

} // namespace onlz
