#include <onlz/dynamic_bit_vector.hpp>

#include <bit>
#include <stdexcept>

namespace onlz {

std::uint32_t DynamicBitVector::Chunk::ones() const {
    std::uint32_t c = 0;
    for(auto w : words) c += std::popcount(w);
    return c;
}

std::uint32_t DynamicBitVector::Chunk::rank1(std::uint32_t i) const {
    std::uint32_t c = 0;
    std::uint32_t const full = i >> 6;
    for(std::uint32_t k = 0; k < full; ++k) c += std::popcount(words[k]);
    if(i & 63) c += std::popcount(words[full] & ((1ULL << (i & 63)) - 1));
    return c;
}

std::uint32_t DynamicBitVector::Chunk::select(bool bit, std::uint32_t k) const {
    // k is 1-based and known to be within this chunk
    for(std::uint32_t wi = 0; wi * 64 < len; ++wi) {
        std::uint64_t x = bit ? words[wi] : ~words[wi];
        std::uint32_t const valid = std::min<std::uint32_t>(64, len - wi * 64);
        if(valid < 64) x &= (1ULL << valid) - 1;
        std::uint32_t const c = std::popcount(x);
        if(k <= c) {
            for(std::uint32_t j = 1; j < k; ++j) x &= x - 1;
            return wi * 64 + std::countr_zero(x);
        }
        k -= c;
    }
    throw std::logic_error("chunk select out of range");
}

void DynamicBitVector::Chunk::insert(std::uint32_t q, bool bit) {
    std::uint32_t const wq = q >> 6;
    std::uint32_t const off = q & 63;
    std::uint32_t const last = len >> 6; // word holding the new last bit
    std::uint64_t carry = bit;
    for(std::uint32_t k = wq; k <= last && k < words.size(); ++k) {
        std::uint64_t const w = words[k];
        std::uint64_t const next = w >> 63;
        if(k == wq) {
            std::uint64_t const mask = off == 0 ? 0 : ((1ULL << off) - 1);
            words[k] = (w & mask) | (carry << off) | ((w & ~mask) << 1);
        } else {
            words[k] = (w << 1) | carry;
        }
        carry = next;
    }
    ++len;
}

void DynamicBitVector::insert(std::uint64_t pos, bool bit) {
    if(pos > size()) throw std::out_of_range("bit vector insertion point beyond end");
    if(chunks_.empty()) {
        Chunk c;
        c.insert(0, bit);
        chunks_.push_back(c);
        return;
    }

    Tree::Handle x = chunks_.root();
    while(true) {
        auto const& n = chunks_.node(x);
        std::uint64_t const left_len = chunks_.sum(n.left).len;
        if(n.left != Tree::kNil && pos <= left_len) {
            x = n.left;
            continue;
        }
        pos -= left_len;
        if(pos <= n.item.len) break;
        pos -= n.item.len;
        x = n.right;
    }

    Chunk& c = chunks_.item(x);
    c.insert(static_cast<std::uint32_t>(pos), bit);
    if(c.len == kChunkBits) {
        Chunk upper;
        std::uint32_t const half = kChunkBits / 2;
        for(std::uint32_t i = half; i < kChunkBits; ++i) {
            if(c.get(i)) upper.words[(i - half) >> 6] |= 1ULL << ((i - half) & 63);
        }
        upper.len = kChunkBits - half;
        for(std::uint32_t wi = half / 64; wi < c.words.size(); ++wi) c.words[wi] = 0;
        c.len = half;
        chunks_.refresh(x);
        chunks_.insert_after(x, upper);
    } else {
        chunks_.refresh(x);
    }
}

bool DynamicBitVector::access(std::uint64_t i) const {
    if(i < 1 || i > size()) throw std::out_of_range("bit vector access out of range");
    std::uint64_t idx = i - 1;
    Tree::Handle x = chunks_.root();
    while(true) {
        auto const& n = chunks_.node(x);
        std::uint64_t const left_len = chunks_.sum(n.left).len;
        if(idx < left_len) {
            x = n.left;
            continue;
        }
        idx -= left_len;
        if(idx < n.item.len) return n.item.get(static_cast<std::uint32_t>(idx));
        idx -= n.item.len;
        x = n.right;
    }
}

std::uint64_t DynamicBitVector::rank(bool bit, std::uint64_t i) const {
    if(i > size()) i = size();
    std::uint64_t const full = i;
    std::uint64_t ones = 0;
    Tree::Handle x = chunks_.root();
    while(x != Tree::kNil && i > 0) {
        auto const& n = chunks_.node(x);
        auto const left = chunks_.sum(n.left);
        if(i <= left.len) {
            x = n.left;
            continue;
        }
        ones += left.ones;
        i -= left.len;
        if(i <= n.item.len) {
            ones += n.item.rank1(static_cast<std::uint32_t>(i));
            break;
        }
        ones += n.item.ones();
        i -= n.item.len;
        x = n.right;
    }
    return bit ? ones : full - ones;
}

std::uint64_t DynamicBitVector::select(bool bit, std::uint64_t k) const {
    if(k < 1 || k > count(bit)) throw std::out_of_range("select beyond population count");
    std::uint64_t pos = 0;
    Tree::Handle x = chunks_.root();
    while(true) {
        auto const& n = chunks_.node(x);
        auto const left = chunks_.sum(n.left);
        std::uint64_t const lc = bit ? left.ones : left.len - left.ones;
        if(k <= lc) {
            x = n.left;
            continue;
        }
        k -= lc;
        pos += left.len;
        std::uint64_t const own_ones = n.item.ones();
        std::uint64_t const own = bit ? own_ones : n.item.len - own_ones;
        if(k <= own) return pos + n.item.select(bit, static_cast<std::uint32_t>(k)) + 1;
        k -= own;
        pos += n.item.len;
        x = n.right;
    }
}

} // namespace onlz
