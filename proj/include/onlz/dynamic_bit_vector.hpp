#pragma once

#include <array>
#include <cstdint>

#include <onlz/avl_sequence.hpp>

namespace onlz {

/// \brief Insert-only bit vector with access, rank and select in O(log n).
///
/// Bits live in fixed-capacity chunks kept in a height-balanced tree; a chunk
/// that fills up is split in half. Positions are 1-based; an insertion point
/// p in [0, size()] means "after the first p bits".
class DynamicBitVector {
public:
    static constexpr unsigned kChunkBits = 512;

    void insert(std::uint64_t pos, bool bit);
    void push_back(bool bit) { insert(size(), bit); }

    bool access(std::uint64_t i) const;

    /// Number of \p bit values among positions 1..i.
    std::uint64_t rank(bool bit, std::uint64_t i) const;
    std::uint64_t rank1(std::uint64_t i) const { return rank(true, i); }
    std::uint64_t rank0(std::uint64_t i) const { return rank(false, i); }

    /// Position of the k-th \p bit value; throws std::out_of_range if absent.
    std::uint64_t select(bool bit, std::uint64_t k) const;
    std::uint64_t select1(std::uint64_t k) const { return select(true, k); }
    std::uint64_t select0(std::uint64_t k) const { return select(false, k); }

    std::uint64_t size() const { return chunks_.total().len; }
    std::uint64_t ones() const { return chunks_.total().ones; }
    std::uint64_t count(bool bit) const { return bit ? ones() : size() - ones(); }

    std::size_t chunk_count() const { return chunks_.size(); }
    std::int32_t height() const { return chunks_.height(); }

private:
    struct Chunk {
        std::array<std::uint64_t, kChunkBits / 64> words{};
        std::uint32_t len = 0;

        bool get(std::uint32_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
        std::uint32_t ones() const;
        std::uint32_t rank1(std::uint32_t i) const; // ones among the first i bits
        std::uint32_t select(bool bit, std::uint32_t k) const; // 0-based offset
        void insert(std::uint32_t q, bool bit);
    };

    struct Summary {
        std::uint64_t len = 0;
        std::uint64_t ones = 0;
        static Summary of(Chunk const& c) { return {c.len, c.ones()}; }
        friend Summary operator+(Summary const& a, Summary const& b) {
            return {a.len + b.len, a.ones + b.ones};
        }
    };

    using Tree = AvlSequence<Chunk, Summary>;
    Tree chunks_;
};

} // namespace onlz
