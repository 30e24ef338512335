#include <gtest/gtest.h>

#include <onlz/factorizer.hpp>
#include <onlz/oracle.hpp>

#include <random>

#include "support.hpp"

using namespace onlz;
using onlz::test::codes;

namespace {

std::vector<Factor> run(std::vector<CharCode> const& t, unsigned sigma, std::optional<unsigned> r = std::nullopt) {
    return factorize(t, choose_parameters(t.size(), sigma, r));
}

std::vector<std::pair<std::uint64_t, FactorKind>> shape(std::vector<Factor> const& f) {
    std::vector<std::pair<std::uint64_t, FactorKind>> out;
    for(auto const& x : f) out.emplace_back(x.length, x.kind);
    return out;
}

constexpr auto L = FactorKind::literal;
constexpr auto C = FactorKind::copy;

// Records factors and checks the online invariants at every block read.
class Watcher : public FactorObserver {
public:
    Watcher(std::vector<CharCode> const& text, std::vector<Factor> const& reference, unsigned r)
        : text_(text), reference_(reference), r_(r) {}

    void on_factor(Factor const& f, FactorTrace const& t) override {
        factors.push_back(f);
        if(t.exist_calls > f.length + r_) ++budget_violations;
        if(t.long_path && t.first_step_chars > f.length + r_) ++first_step_violations;
        if(t.long_path) ++long_factors;
    }

    void on_block(Factorizer const&, Progress const& p) override {
        if(p.read_pos > p.ell + p.confirmed + r_ || p.read_pos < p.ell + p.confirmed) ++lag_violations;
        if(p.factors != factors.size()) ++prefix_violations;
        for(std::size_t i = 0; i < factors.size(); ++i)
            if(factors[i].start != reference_[i].start || factors[i].length != reference_[i].length) ++prefix_violations;
        if(p.confirmed > 0) {
            bool found = false;
            for(std::uint64_t st = 1; st <= p.ell && !found; ++st)
                found = std::equal(text_.begin() + (st - 1), text_.begin() + (st - 1 + p.confirmed),
                                   text_.begin() + p.ell);
            if(!found) ++provisional_violations;
        }
    }

    std::vector<Factor> factors;
    int lag_violations = 0, prefix_violations = 0, provisional_violations = 0;
    int budget_violations = 0, first_step_violations = 0, long_factors = 0;

private:
    std::vector<CharCode> const& text_;
    std::vector<Factor> const& reference_;
    unsigned r_;
};

} // namespace

TEST(Factorize, AllDistinct) {
    EXPECT_EQ(shape(run(codes("abc"), 3)), (std::vector<std::pair<std::uint64_t, FactorKind>>{{1, L}, {1, L}, {1, L}}));
}

TEST(Factorize, SelfReferentialRun) {
    auto const f = run(codes("aaaaaaaa"), 2);
    ASSERT_EQ(shape(f), (std::vector<std::pair<std::uint64_t, FactorKind>>{{1, L}, {7, C}}));
    EXPECT_EQ(f[1].witness, 1u);
}

TEST(Factorize, Alternating) {
    auto const f = run(codes("abababab"), 2);
    ASSERT_EQ(shape(f), (std::vector<std::pair<std::uint64_t, FactorKind>>{{1, L}, {1, L}, {6, C}}));
    EXPECT_EQ(f[2].witness, 1u);
}

TEST(Factorize, ShortFactorsFromTrie) {
    EXPECT_EQ(shape(run(codes("aab"), 2, 2u)), (std::vector<std::pair<std::uint64_t, FactorKind>>{{1, L}, {1, C}, {1, L}}));
    auto const f = run(codes("abab"), 2, 2u);
    ASSERT_EQ(shape(f), (std::vector<std::pair<std::uint64_t, FactorKind>>{{1, L}, {1, L}, {2, C}}));
    EXPECT_EQ(f[2].witness, 1u);
}

TEST(Factorize, LongRunReturnsSixtyThree) {
    auto const f = run(std::vector<CharCode>(64, 0), 2);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[1].length, 63u);
}

TEST(Factorize, SingleCharacter) {
    auto const f = run({0}, 1);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].kind, L);
}

// A long factor whose only earlier occurrence is W[1..r]: found through the
// leaf of block 1, which has no preceding block.
TEST(Factorize, OccurrenceOnlyAtTextStart) {
    std::mt19937_64 rng(41);
    int found = 0;
    for(int it = 0; it < 20000 && found < 5; ++it) {
        unsigned const r = 2 + rng() % 3;
        auto const t = test::random_text(rng, 8 + rng() % 40, 2);
        auto const reference = oracle::lz_naive(t);
        for(auto const& g : reference) {
            if(g.length != r || g.kind != C) continue;
            int occurrences = 0;
            for(std::uint64_t st = 1; st < g.start; ++st)
                occurrences += std::equal(t.begin() + (st - 1), t.begin() + (st - 1 + r), t.begin() + (g.start - 1));
            if(occurrences != 1 || g.witness != 1u) continue;
            auto const f = run(t, 2, r);
            ASSERT_EQ(oracle::first_mismatch(t, f, reference), std::nullopt);
            ++found;
            break;
        }
    }
    EXPECT_EQ(found, 5);
}

TEST(Factorize, MatchesOracleOnRandomTexts) {
    std::mt19937_64 rng(43);
    for(int it = 0; it < 1500; ++it) {
        unsigned const sigma = std::array{2u, 3u, 4u, 16u, 26u}[rng() % 5];
        std::size_t const n = 1 + rng() % 300;
        auto const t = (it % 3) ? test::repetitive_text(rng, n, sigma) : test::random_text(rng, n, sigma);
        std::optional<unsigned> r;
        if(it % 2) r = 1 + rng() % 5;
        auto const f = run(t, sigma, r);
        auto const reference = oracle::lz_naive(t);
        ASSERT_EQ(oracle::first_mismatch(t, f, reference), std::nullopt) << "iteration " << it;
    }
}

TEST(Factorize, OnlineInvariants) {
    std::mt19937_64 rng(47);
    int long_factors = 0;
    for(int it = 0; it < 300; ++it) {
        unsigned const sigma = 2 + rng() % 3;
        auto const t = test::repetitive_text(rng, 1 + rng() % 400, sigma);
        auto const reference = oracle::lz_naive(t);
        auto const p = choose_parameters(t.size(), sigma, 1 + static_cast<unsigned>(rng() % 4));
        Watcher w(t, reference, p.r);
        Factorizer fz(p);
        SpanSource src(t);
        fz.run(src, w);
        ASSERT_EQ(oracle::first_mismatch(t, w.factors, reference), std::nullopt);
        ASSERT_EQ(w.lag_violations, 0);
        ASSERT_EQ(w.prefix_violations, 0);
        ASSERT_EQ(w.provisional_violations, 0);
        ASSERT_EQ(w.budget_violations, 0);
        ASSERT_EQ(w.first_step_violations, 0);
        ASSERT_LE(fz.stats().max_lag, p.r);
        long_factors += w.long_factors;
    }
    EXPECT_GT(long_factors, 100);
}

// Exist against a scan over the leaves in the interval, on mid-run snapshots.
// Queries have the shape the engine issues: Y = W[ell+1..ell+m-1], the
// interval holds the leaves whose suffix starts with P = W[ell+m..ell+m+L-1],
// the excluded border is b and occurrences must start at or before ell. Only
// lengths above the confirmed length are validated by the engine.
TEST(Exist, MatchesNaiveScan) {
    class Probe : public FactorObserver {
    public:
        explicit Probe(std::mt19937_64& rng) : rng_(rng) {}
        void on_block(Factorizer const& fz, Progress const& p) override {
            auto const& order = fz.order();
            std::uint64_t const leaves = order.leaf_count();
            unsigned const r = fz.params().r;
            std::uint64_t const tr = fz.tree().blocks() * r;
            if(leaves == 0) return;
            std::vector<CharCode> text(p.read_pos);
            for(std::uint64_t i = 1; i <= p.read_pos; ++i) text[i - 1] = fz.text()[i];
            std::vector<std::uint64_t> borders(leaves);
            for(std::uint64_t k = 1; k <= leaves; ++k) borders[k - 1] = order.kth_suffix_leaf(k).border;
            std::uint64_t const ell = p.ell, b = (ell / r + 1) * r + 1;

            for(int q = 0; q < 6; ++q) {
                unsigned const m = 1 + static_cast<unsigned>(rng_() % r);
                if(ell + m > p.read_pos) continue;
                std::uint64_t const max_len = p.read_pos - ell - m + 1;
                std::uint64_t const len = 1 + rng_() % max_len; // |P|
                if(m - 1 + len <= p.confirmed) continue;
                std::uint64_t lo = 0, hi = 0;
                for(std::uint64_t k = 1; k <= leaves; ++k) {
                    std::uint64_t const beta = borders[k - 1];
                    bool const in = beta + len - 1 <= tr &&
                                    std::equal(text.begin() + (beta - 1), text.begin() + (beta - 1 + len),
                                               text.begin() + (ell + m - 1));
                    if(!in) continue;
                    if(hi && hi != k - 1) ++non_contiguous;
                    if(!lo) lo = k;
                    hi = k;
                }
                if(!lo) continue;
                std::vector<std::uint64_t> const span(borders.begin() + (lo - 1), borders.begin() + hi);
                std::vector<CharCode> const y(text.begin() + ell, text.begin() + (ell + m - 1));
                auto const naive = oracle::naive_exist(text, span, y, b, ell);
                auto const got = fz.exist(lo, hi, ell + 1, m - 1, b, ell);
                ++checked;
                if(naive.has_value() != got.has_value()) ++mismatches;
                if(got && (std::find(span.begin(), span.end(), *got) == span.end() ||
                           !oracle::naive_exist(text, std::vector<std::uint64_t>{*got}, y, b, ell)))
                    ++mismatches;
            }
        }
        int checked = 0, mismatches = 0, non_contiguous = 0;

    private:
        std::mt19937_64& rng_;
    };

    std::mt19937_64 rng(53);
    int checked = 0;
    for(int it = 0; it < 80; ++it) {
        unsigned const sigma = 2 + rng() % 3;
        auto const t = (it % 2) ? test::repetitive_text(rng, 60 + rng() % 200, sigma)
                                : test::random_text(rng, 60 + rng() % 200, sigma);
        Probe probe(rng);
        Factorizer fz(choose_parameters(t.size(), sigma, 1 + static_cast<unsigned>(rng() % 4)));
        SpanSource src(t);
        fz.run(src, probe);
        ASSERT_EQ(probe.mismatches, 0);
        ASSERT_EQ(probe.non_contiguous, 0);
        checked += probe.checked;
    }
    EXPECT_GE(checked, 1000);
}

TEST(Exist, EmptyIntervalAndExclusion) {
    auto const t = codes("abababab");
    Factorizer fz(choose_parameters(t.size(), 2, 2u));
    SpanSource src(t);
    FactorObserver none;
    fz.run(src, none);
    EXPECT_FALSE(fz.exist(3, 2, 1, 0, 0, 8));
    // a single leaf whose border is excluded
    auto const k = fz.order().leaf_rank(fz.order().kth_suffix_leaf(1).vertex);
    EXPECT_FALSE(fz.exist(k, k, 1, 0, fz.order().kth_suffix_leaf(1).border, 8));
}

TEST(Factorizer, InputLengthMismatch) {
    auto const t = codes("abcabc");
    auto const p_short = choose_parameters(t.size() + 3, 3);
    EXPECT_THROW(factorize(t, p_short), InputLengthMismatch);
    auto const p_long = choose_parameters(t.size() - 2, 3);
    EXPECT_THROW(factorize(t, p_long), InputLengthMismatch);
}

TEST(Factorizer, RunsOnlyOnce) {
    auto const t = codes("ab");
    Factorizer fz(choose_parameters(2, 2));
    SpanSource src(t);
    FactorObserver none;
    fz.run(src, none);
    EXPECT_THROW(fz.run(src, none), std::logic_error);
}
