#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>

namespace onlz::test {

/// Maps 'a', 'b', ... to codes 0, 1, ...
inline std::vector<CharCode> codes(std::string_view s) {
    std::vector<CharCode> out;
    out.reserve(s.size());
    for(char c : s) out.push_back(static_cast<CharCode>(c - 'a'));
    return out;
}

inline PackedText packed(Params const& p, std::vector<CharCode> const& t) {
    PackedText text(p);
    for(auto c : t) text.append(c);
    return text;
}

inline std::vector<CharCode> random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    std::vector<CharCode> t(n);
    for(auto& c : t) c = static_cast<CharCode>(rng() % sigma);
    return t;
}

/// Random text with planted repeats, which exercises long factors.
inline std::vector<CharCode> repetitive_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    auto t = random_text(rng, n, sigma);
    std::size_t const period = 1 + rng() % 24;
    for(std::size_t i = period; i < n; ++i)
        if(rng() % 16) t[i] = t[i - period];
    return t;
}

} // namespace onlz::test
