#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <onlz/params.hpp>

namespace onlz {

/// \brief Append-only text stored at a fixed number of bits per character.
///
/// Positions are 1-based. Characters are laid out most significant bit first,
/// so any run of k consecutive characters reads back as one integer with the
/// first character in the high bits; this is what makes block packing O(1).
class PackedText {
public:
    PackedText() = default;
    explicit PackedText(Params const& params);

    void append(CharCode c);

    /// Character at 1-based position i.
    CharCode operator[](std::uint64_t i) const {
        return static_cast<CharCode>(read_bits((i - 1) * bpc_, bpc_));
    }

    CharCode at(std::uint64_t i) const;

    std::uint64_t size() const { return len_; }
    std::uint64_t capacity() const { return cap_; }
    unsigned bits_per_char() const { return bpc_; }

    /// \brief Reads \p k <= 64 bits starting at bit offset \p offset.
    std::uint64_t read_bits(std::uint64_t offset, unsigned k) const {
        if(k == 0) return 0;
        std::size_t const word = offset >> 6;
        unsigned const shift = offset & 63;
        std::uint64_t hi = words_[word] << shift;
        if(shift + k > 64) hi |= words_[word + 1] >> (64 - shift);
        return hi >> (64 - k);
    }

    /// Packs k characters starting at 1-based position \p start.
    std::uint64_t pack(std::uint64_t start, unsigned k) const {
        return read_bits((start - 1) * bpc_, k * bpc_);
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t len_ = 0;
    std::uint64_t cap_ = 0;
    unsigned bpc_ = 1;
    CharCode max_code_ = 0;
};

/// Packs the block W[start..start+r-1]; throws std::out_of_range when the
/// block is not fully appended.
MetaChar pack_block(Params const& p, PackedText const& text, std::uint64_t start);

/// \brief Longest common prefix of W[i..] and W[j..], at most \p cap, never
/// reading past text.size().
std::uint64_t lcp(PackedText const& text, std::uint64_t i, std::uint64_t j,
                  std::uint64_t cap = std::numeric_limits<std::uint64_t>::max());

} // namespace onlz
