#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

namespace onlz {

/// Dense character code in [0, sigma).
using CharCode = std::uint32_t;

/// Largest supported alphabet.
inline constexpr std::uint64_t kMaxSigma = 1ULL << 16;

/// \brief Global parameters of one factorization run.
///
/// The block size r is chosen so that two consecutive blocks span at most
/// half of log2(n) bits, which keeps the block trie at O(sqrt(n) r^2) nodes.
struct Params {
    std::uint64_t n = 0;        ///< total text length in characters
    std::uint64_t sigma = 0;    ///< alphabet size
    unsigned bpc = 0;           ///< bits per character
    unsigned r = 0;             ///< block size in characters
    unsigned w = 0;             ///< meta-character width in bits, r * bpc
    std::uint64_t sentinel = 0; ///< 2^w, the value for "no preceding block"

    /// Number of full blocks in the text.
    std::uint64_t full_blocks() const { return n / r; }

    /// Largest real meta-character value, 2^w - 1.
    std::uint64_t max_meta() const { return sentinel - 1; }
};

/// \brief Derives bpc, r, w and the sentinel from n and sigma.
///
/// r = max(1, floor(log2(n) / (4 bpc))) unless \p r_override is given.
/// Throws std::invalid_argument for n = 0, sigma = 0, sigma > 2^16 and for
/// overrides that would make a meta-character wider than 63 bits.
Params choose_parameters(std::uint64_t n, std::uint64_t sigma,
                         std::optional<unsigned> r_override = std::nullopt);

/// Bit-packed meta-character, first block character in the most significant
/// position.
struct MetaChar {
    std::uint64_t value = 0;
    unsigned width = 0;

    friend bool operator==(MetaChar const&, MetaChar const&) = default;
};

/// Character k (1-based) of a block, recovered by two shifts.
CharCode extract_char(Params const& p, MetaChar m, unsigned k);

/// The w-bit string of \p m reversed end to end.
std::uint64_t reversed_value(MetaChar m);

/// Reverses the low \p width bits of \p x.
std::uint64_t reverse_bits(std::uint64_t x, unsigned width);

/// \brief Value interval of reversed blocks that end with a word Y.
///
/// \p y_bits holds the |Y| characters of Y packed like a meta-character
/// (first character most significant). A block B ends with Y iff
/// reversed_value(B) lies in the returned closed interval. For |Y| = 0 the
/// interval is [0, 2^w - 1], which never contains the sentinel.
std::pair<std::uint64_t, std::uint64_t> y_range(Params const& p, std::uint64_t y_bits,
                                                unsigned y_len);

} // namespace onlz
