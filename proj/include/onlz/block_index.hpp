#pragma once

#include <cstdint>

#include <onlz/order_index.hpp>
#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>
#include <onlz/sparse_suffix_tree.hpp>
#include <onlz/wavelet_tree.hpp>

namespace onlz {

/// \brief The suffix tree of the meta-word together with its leaf order and
/// the GBWT sequence, kept in step.
///
/// GBWT[k] is the bit-reversed block preceding the suffix of the k-th leaf, or
/// the sentinel for the suffix starting at block 1.
class BlockIndex {
public:
    BlockIndex(Params const& params, PackedText const& text);

    BlockIndex(BlockIndex const&) = delete;
    BlockIndex& operator=(BlockIndex const&) = delete;

    /// Adds the next block of the text, which must be fully appended.
    void extend();

    SparseSuffixTree const& tree() const { return tree_; }
    OrderIndex const& order() const { return order_; }
    DynamicWaveletTree const& gbwt() const { return gbwt_; }

private:
    Params params_;
    SparseSuffixTree tree_;
    OrderIndex order_;
    DynamicWaveletTree gbwt_;
};

} // namespace onlz
