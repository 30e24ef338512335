#include <gtest/gtest.h>

#include <onlz/packed_text.hpp>
#include <onlz/params.hpp>

#include <bitset>
#include <random>
#include <string>

#include "support.hpp"

using namespace onlz;
using onlz::test::codes;

TEST(ChooseParameters, FormulaExamples) {
    auto p = choose_parameters(65536, 4);
    EXPECT_EQ(p.r, 2u);
    EXPECT_EQ(p.bpc, 2u);
    EXPECT_EQ(p.w, 4u);
    EXPECT_EQ(p.sentinel, 16u);

    p = choose_parameters(1u << 20, 2);
    EXPECT_EQ(p.r, 5u);
    EXPECT_EQ(p.bpc, 1u);
    EXPECT_EQ(p.w, 5u);
}

TEST(ChooseParameters, ClampsToOne) {
    EXPECT_EQ(choose_parameters(256, 256).r, 1u);
    EXPECT_EQ(choose_parameters(1, 1).r, 1u);
    EXPECT_EQ(choose_parameters(1, 1).bpc, 1u);
}

TEST(ChooseParameters, OverrideKeepsDerivedFields) {
    auto const p = choose_parameters(10, 4, 3u);
    EXPECT_EQ(p.r, 3u);
    EXPECT_EQ(p.w, 6u);
    EXPECT_EQ(p.sentinel, 64u);
}

TEST(ChooseParameters, RejectsBadInput) {
    EXPECT_THROW(choose_parameters(0, 4), std::invalid_argument);
    EXPECT_THROW(choose_parameters(10, 0), std::invalid_argument);
    EXPECT_THROW(choose_parameters(10, kMaxSigma + 1), std::invalid_argument);
    EXPECT_THROW(choose_parameters(10, 4, 0u), std::invalid_argument);
    EXPECT_THROW(choose_parameters(10, 4, 40u), std::invalid_argument);
}

TEST(ChooseParameters, FormulaKeepsTwoBlocksWithinLogN) {
    for(std::uint64_t n = 1; n < (1u << 22); n = n * 3 + 1) {
        for(std::uint64_t sigma : {1u, 2u, 3u, 4u, 5u, 16u, 26u, 200u}) {
            auto const p = choose_parameters(n, sigma);
            ASSERT_GE(p.r, 1u);
            ASSERT_EQ(p.w, p.r * p.bpc);
            if(4ull * p.bpc <= static_cast<std::uint64_t>(std::bit_width(n) - 1))
                ASSERT_LE(1ull << (2 * p.w), n) << "n=" << n << " sigma=" << sigma;
        }
    }
}

TEST(PackBlock, Examples) {
    auto const p = choose_parameters(16, 4, 2u);
    auto const text = test::packed(p, codes("baaadc"));
    EXPECT_EQ(pack_block(p, text, 1).value, 4u);
    EXPECT_EQ(pack_block(p, text, 3).value, 0u);
    EXPECT_EQ(pack_block(p, text, 5).value, 14u);
    EXPECT_THROW(pack_block(p, text, 6), std::out_of_range);
    EXPECT_THROW(pack_block(p, text, 0), std::out_of_range);
}

TEST(ExtractChar, InvertsPacking) {
    auto const p = choose_parameters(16, 4, 2u);
    EXPECT_EQ(extract_char(p, MetaChar{4, 4}, 1), 1u);
    EXPECT_EQ(extract_char(p, MetaChar{4, 4}, 2), 0u);
    EXPECT_EQ(extract_char(p, MetaChar{14, 4}, 2), 2u);
    EXPECT_THROW(extract_char(p, MetaChar{14, 4}, 3), std::out_of_range);
}

TEST(ExtractChar, RoundTripOnRandomBlocks) {
    std::mt19937_64 rng(11);
    for(unsigned sigma : {2u, 3u, 5u, 26u, 300u}) {
        for(unsigned r = 1; r <= 4; ++r) {
            auto const p = choose_parameters(1000, sigma, r);
            auto const t = test::random_text(rng, 200, sigma);
            auto const text = test::packed(p, t);
            for(std::uint64_t start = 1; start + r - 1 <= t.size(); ++start) {
                auto const m = pack_block(p, text, start);
                for(unsigned k = 1; k <= r; ++k) ASSERT_EQ(extract_char(p, m, k), t[start + k - 2]);
            }
        }
    }
}

TEST(ReversedValue, Examples) {
    EXPECT_EQ(reversed_value(MetaChar{0b0100, 4}), 0b0010u);
    EXPECT_EQ(reversed_value(MetaChar{0, 4}), 0u);
    EXPECT_EQ(reversed_value(MetaChar{0b1110, 4}), 0b0111u);
}

TEST(ReversedValue, MatchesStringReversalAndIsInvolutive) {
    for(unsigned w = 1; w <= 12; ++w) {
        for(std::uint64_t x = 0; x < (1u << w); x += 1 + x / 7) {
            auto s = std::bitset<64>(x).to_string().substr(64 - w);
            std::string rev(s.rbegin(), s.rend());
            ASSERT_EQ(reversed_value(MetaChar{x, w}), std::stoull(rev, nullptr, 2));
            ASSERT_EQ(reversed_value(MetaChar{reversed_value(MetaChar{x, w}), w}), x);
        }
    }
}

TEST(YRange, Examples) {
    auto const p = choose_parameters(16, 2, 2u);
    using Range = std::pair<std::uint64_t, std::uint64_t>;
    EXPECT_EQ(y_range(p, 1, 1), Range(2, 3));    // Y = "b"
    EXPECT_EQ(y_range(p, 0b01, 2), Range(2, 2)); // Y = "ab"
    EXPECT_EQ(y_range(p, 0, 0), Range(0, 3));
    EXPECT_THROW(y_range(p, 0, 3), std::invalid_argument);
}

// Exhaustive: B ends with Y iff reversed(B) lies in y_range(Y); the sentinel never does.
TEST(YRange, SoundAndCompleteExhaustive) {
    for(unsigned sigma : {2u, 3u, 4u}) {
        for(unsigned r = 1; r <= 4; ++r) {
            auto const p = choose_parameters(100, sigma, r);
            std::uint64_t blocks = 1;
            for(unsigned i = 0; i < r; ++i) blocks *= sigma;
            std::vector<std::vector<CharCode>> all;
            for(std::uint64_t b = 0; b < blocks; ++b) {
                std::vector<CharCode> chars(r);
                std::uint64_t x = b;
                for(unsigned i = r; i-- > 0; x /= sigma) chars[i] = static_cast<CharCode>(x % sigma);
                all.push_back(chars);
            }
            auto pack = [&](std::vector<CharCode> const& c, std::size_t from, std::size_t len) {
                std::uint64_t v = 0;
                for(std::size_t i = 0; i < len; ++i) v = (v << p.bpc) | c[from + i];
                return v;
            };
            for(unsigned ylen = 0; ylen <= r; ++ylen) {
                for(auto const& y : all) {
                    // y's last ylen characters form Y
                    auto const [lo, hi] = y_range(p, pack(y, r - ylen, ylen), ylen);
                    ASSERT_FALSE(lo <= p.sentinel && p.sentinel <= hi);
                    for(auto const& b : all) {
                        bool const ends = std::equal(y.end() - ylen, y.end(), b.end() - ylen);
                        std::uint64_t const rv = reversed_value(MetaChar{pack(b, 0, r), p.w});
                        ASSERT_EQ(ends, lo <= rv && rv <= hi);
                    }
                }
            }
        }
    }
}

TEST(PackedText, AccessAndBounds) {
    auto const p = choose_parameters(5, 300);
    PackedText t(p);
    EXPECT_THROW(t.append(300), std::out_of_range);
    for(CharCode c : {299u, 0u, 17u, 256u, 1u}) t.append(c);
    EXPECT_EQ(t.size(), 5u);
    EXPECT_EQ(t[1], 299u);
    EXPECT_EQ(t[4], 256u);
    EXPECT_EQ(t.at(5), 1u);
    EXPECT_THROW(t.at(0), std::out_of_range);
    EXPECT_THROW(t.at(6), std::out_of_range);
    EXPECT_THROW(t.append(0), std::length_error);
}

TEST(Lcp, Examples) {
    auto const p = choose_parameters(4, 2);
    auto const abab = test::packed(p, codes("abab"));
    EXPECT_EQ(lcp(abab, 1, 3), 2u);
    auto const aaaa = test::packed(p, codes("aaaa"));
    EXPECT_EQ(lcp(aaaa, 1, 2), 3u);
    EXPECT_EQ(lcp(aaaa, 2, 2), 3u);
    EXPECT_EQ(lcp(aaaa, 2, 2, 1), 1u);
}
