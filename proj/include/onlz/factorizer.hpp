#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <onlz/block_index.hpp>
#include <onlz/block_source.hpp>
#include <onlz/block_trie.hpp>
#include <onlz/factor.hpp>
#include <onlz/order_index.hpp>
#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>
#include <onlz/sparse_suffix_tree.hpp>
#include <onlz/wavelet_tree.hpp>

namespace onlz {

/// The source delivered more or fewer characters than declared.
class InputLengthMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-factor accounting.
struct FactorTrace {
    bool long_path = false;             ///< the factor needed the suffix-tree procedure
    std::uint64_t first_step_chars = 0; ///< characters read while waiting for the leaf
    std::uint64_t exist_calls = 0;
};

/// Snapshot taken right after each block read.
struct Progress {
    std::uint64_t read_pos = 0;   ///< characters read so far
    std::uint64_t ell = 0;        ///< total length of finalized factors
    std::uint64_t confirmed = 0;  ///< confirmed length of the factor in progress
    std::uint64_t factors = 0;    ///< number of finalized factors
};

class Factorizer;

class FactorObserver {
public:
    virtual ~FactorObserver() = default;
    virtual void on_factor(Factor const&, FactorTrace const&) {}
    virtual void on_block(Factorizer const&, Progress const&) {}
};

struct EngineStats {
    std::uint64_t n = 0;
    std::uint64_t factors = 0;
    unsigned r = 0;
    std::uint64_t blocks_read = 0;
    std::uint64_t leaves = 0;
    std::uint64_t tree_vertices = 0;
    std::uint64_t trie_nodes = 0;
    std::uint64_t wavelet_nodes = 0;
    std::uint64_t wavelet_bits = 0;
    std::uint64_t order_entries = 0;
    std::uint64_t exist_calls = 0;
    std::uint64_t max_lag = 0;
};

/// \brief Online LZ factorizer.
///
/// Reads the text in blocks of r characters and emits each factor as soon as
/// it is determined. The reader is never more than one block ahead of the
/// confirmed frontier: a block is pulled only when the finalized length plus
/// the confirmed length of the current factor reaches the last read position.
///
/// Short factors (< r) come from a trie over 2r-character windows. Longer
/// ones use a suffix tree over the block meta-word; candidate occurrences that
/// start inside a block are checked with an Exist query that combines leaf
/// rank spans with a wavelet tree over the bit-reversed preceding blocks.
class Factorizer {
public:
    explicit Factorizer(Params const& params);

    Factorizer(Factorizer const&) = delete;
    Factorizer& operator=(Factorizer const&) = delete;

    /// Runs to completion; may be called once per instance.
    void run(BlockSource& source, FactorObserver& observer);

    /// \brief Exist query over leaf ranks [first, last].
    ///
    /// Looks for a leaf border beta != \p excluded preceded by
    /// Y = W[y_start..y_start+y_len-1] with occurrence start beta - y_len in
    /// [1, occ_cap]. Returns one such border. For an empty Y the leaf of
    /// block 1 (no preceding block) qualifies as well.
    std::optional<std::uint64_t> exist(std::uint64_t first, std::uint64_t last, std::uint64_t y_start,
                                       unsigned y_len, std::uint64_t excluded,
                                       std::uint64_t occ_cap) const;

    Params const& params() const { return params_; }
    PackedText const& text() const { return text_; }
    BlockTrie const& trie() const { return trie_; }
    SparseSuffixTree const& tree() const { return index_.tree(); }
    OrderIndex const& order() const { return index_.order(); }
    DynamicWaveletTree const& gbwt() const { return index_.gbwt(); }

    EngineStats stats() const;

private:
    struct Locus;

    void compute_factor();
    void long_factor(std::uint64_t ell_blocks);
    void descend_tree(unsigned m, std::uint64_t excluded);
    void finish_at_end();

    void read_block();
    void ensure_readable(std::uint64_t pos);
    void ingest_windows();
    void emit(std::uint64_t length, FactorKind kind, std::optional<std::uint64_t> witness);
    void raise(std::uint64_t length, std::optional<std::uint64_t> witness);

    Params params_;
    PackedText text_;
    BlockTrie trie_;
    BlockIndex index_;

    BlockSource* source_ = nullptr;
    FactorObserver* observer_ = nullptr;
    std::vector<CharCode> buffer_;
    bool done_ = false;

    std::uint64_t read_pos_ = 0;
    std::uint64_t ell_ = 0;
    std::uint64_t confirmed_ = 0;                  // M
    std::optional<std::uint64_t> witness_;         // occurrence start for the confirmed prefix
    std::uint64_t factors_ = 0;
    std::uint64_t next_window_ = 0;
    std::uint64_t blocks_read_ = 0;
    std::uint64_t epoch_ = 0;                      // bumped on every tree extension
    std::uint64_t max_lag_ = 0;
    std::uint64_t exist_total_ = 0;
    FactorTrace trace_;
};

/// Factorizes an in-memory text.
std::vector<Factor> factorize(std::span<CharCode const> text, Params const& params);

/// Same, reporting to \p observer as well.
std::vector<Factor> factorize(std::span<CharCode const> text, Params const& params, FactorObserver& observer);

} // namespace onlz
