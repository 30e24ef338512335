#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <onlz/factor.hpp>
#include <onlz/params.hpp>

namespace onlz::oracle {

/// \brief Brute-force LZ factorization, O(n^2) character comparisons.
///
/// Copies carry the leftmost witness.
std::vector<Factor> lz_naive(std::span<CharCode const> text);

/// \brief LZ factorization from a suffix array with previous/next smaller
/// values; suitable for texts of a few million characters.
///
/// Copies carry some earlier occurrence as witness.
std::vector<Factor> lz_suffix_array(std::span<CharCode const> text);

/// Suffix array (0-based starts) by prefix doubling.
std::vector<std::uint32_t> suffix_array(std::span<CharCode const> text);

/// \brief Checks that \p factors tile \p text, that every length is maximal
/// and that every witness is a genuine earlier occurrence, using \p reference
/// for the maximal lengths. Returns the 1-based index of the first bad factor.
std::optional<std::uint64_t> first_mismatch(std::span<CharCode const> text, std::span<Factor const> factors,
                                            std::span<Factor const> reference);

/// \brief Suffix structures of the block meta-word W'[1..t] built from scratch.
struct MetaStructures {
    /// Start blocks j (1-based) whose suffix is a leaf, sorted by suffix.
    std::vector<std::uint64_t> leaf_order;
    /// Value per leaf in leaf_order: reversed W'[j-1], or the sentinel for j = 1.
    std::vector<std::uint64_t> gbwt;
};

/// \brief Implicit suffix tree of a word, built from its substrings.
///
/// Explicit vertices are the root, the right-branching substrings and the
/// suffixes that occur only once. Every edge is reported as
/// (parent path label, edge label); every leaf as (path label, start index).
struct NaiveTree {
    using Word = std::vector<std::uint64_t>;
    std::set<std::pair<Word, Word>> edges;
    std::set<std::pair<Word, std::uint64_t>> leaves;
};

NaiveTree naive_implicit_tree(std::span<std::uint64_t const> word);

MetaStructures meta_structures(Params const& p, std::span<CharCode const> text, std::uint64_t t);

/// Block values W'[1..t].
std::vector<std::uint64_t> meta_word(Params const& p, std::span<CharCode const> text, std::uint64_t t);

/// \brief Naive Exist: a border among \p borders (1-based positions), other
/// than \p excluded, that is preceded by Y with occurrence start in
/// [1, occ_cap]. Empty Y accepts every border.
std::optional<std::uint64_t> naive_exist(std::span<CharCode const> text, std::span<std::uint64_t const> borders,
                                         std::span<CharCode const> y, std::uint64_t excluded,
                                         std::uint64_t occ_cap);

} // namespace onlz::oracle
