#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace onlz {

Params choose_parameters(std::uint64_t n, std::uint64_t sigma, std::optional<unsigned> r_override) {
    if(n == 0) throw std::invalid_argument("text length must be at least 1");
    if(sigma == 0) throw std::invalid_argument("alphabet size must be at least 1");
    if(sigma > kMaxSigma) throw std::invalid_argument("alphabet size above 2^16 is not supported");

    Params p;
    p.n = n;
    p.sigma = sigma;
    // ceil(log2(max(sigma, 2)))
    p.bpc = static_cast<unsigned>(std::bit_width(std::max<std::uint64_t>(sigma, 2) - 1));

    if(r_override) {
        if(*r_override == 0) throw std::invalid_argument("block size must be at least 1");
        p.r = *r_override;
    } else {
        // largest r with 2^(4 bpc r) <= n, i.e. r = floor(log2(n) / (4 bpc))
        unsigned const log2n = static_cast<unsigned>(std::bit_width(n) - 1);
        p.r = std::max(1u, log2n / (4 * p.bpc));
    }
    if(static_cast<std::uint64_t>(p.r) * p.bpc > 63) {
        throw std::invalid_argument("block of " + std::to_string(p.r) +
                                    " characters does not fit a 63-bit meta-character");
    }
    p.w = p.r * p.bpc;
    p.sentinel = 1ULL << p.w;
    return p;
}

CharCode extract_char(Params const& p, MetaChar m, unsigned k) {
    if(k < 1 || k > p.r) throw std::out_of_range("block character index out of range");
    unsigned const shift = (p.r - k) * p.bpc;
    return static_cast<CharCode>((m.value >> shift) & ((1ULL << p.bpc) - 1));
}

std::uint64_t reverse_bits(std::uint64_t x, unsigned width) {
    std::uint64_t y = 0;
    for(unsigned i = 0; i < width; ++i) {
        y = (y << 1) | (x & 1);
        x >>= 1;
    }
    return y;
}

std::uint64_t reversed_value(MetaChar m) { return reverse_bits(m.value, m.width); }

std::pair<std::uint64_t, std::uint64_t> y_range(Params const& p, std::uint64_t y_bits, unsigned y_len) {
    if(y_len > p.r) throw std::invalid_argument("word longer than a block");
    unsigned const used = y_len * p.bpc;
    unsigned const pad = p.w - used;
    std::uint64_t const lo = reverse_bits(y_bits, used) << pad;
    std::uint64_t const hi = lo | ((1ULL << pad) - 1);
    return {lo, hi};
}

PackedText::PackedText(Params const& params)
    : words_((params.n * params.bpc + 63) / 64 + 1, 0),
      cap_(params.n),
      bpc_(params.bpc),
      max_code_(static_cast<CharCode>(params.sigma - 1)) {}

void PackedText::append(CharCode c) {
    if(len_ == cap_) throw std::length_error("text capacity exceeded");
    if(c > max_code_) throw std::out_of_range("character code outside the alphabet");
    std::uint64_t const offset = len_ * bpc_;
    std::size_t const word = offset >> 6;
    unsigned const shift = offset & 63;
    std::uint64_t const v = c;
    if(shift + bpc_ <= 64) {
        words_[word] |= v << (64 - shift - bpc_);
    } else {
        unsigned const spill = shift + bpc_ - 64;
        words_[word] |= v >> spill;
        words_[word + 1] |= v << (64 - spill);
    }
    ++len_;
}

CharCode PackedText::at(std::uint64_t i) const {
    if(i < 1 || i > len_) throw std::out_of_range("text position out of range");
    return (*this)[i];
}

MetaChar pack_block(Params const& p, PackedText const& text, std::uint64_t start) {
    if(start < 1 || start + p.r - 1 > text.size()) throw std::out_of_range("block not fully appended");
    return MetaChar{text.pack(start, p.r), p.w};
}

std::uint64_t lcp(PackedText const& text, std::uint64_t i, std::uint64_t j, std::uint64_t cap) {
    std::uint64_t const len = text.size();
    if(i == 0 || j == 0 || i > len || j > len) return 0;
    std::uint64_t const room = len - std::max(i, j) + 1;
    std::uint64_t const limit = std::min(cap, room);
    std::uint64_t l = 0;
    while(l < limit && text[i + l] == text[j + l]) ++l;
    return l;
}

} // namespace onlz
