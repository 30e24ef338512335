#include <onlz/oracle.hpp>

#include <algorithm>
#include <numeric>

namespace onlz::oracle {

namespace {

std::uint64_t naive_lcp(std::span<CharCode const> t, std::uint64_t i, std::uint64_t j) {
    std::uint64_t k = 0;
    while(i + k < t.size() && j + k < t.size() && t[i + k] == t[j + k]) ++k;
    return k;
}

Factor make(std::uint64_t index, std::uint64_t start0, std::uint64_t len, std::optional<std::uint64_t> src0) {
    Factor f;
    f.index = index;
    f.start = start0 + 1;
    if(len == 0) {
        f.length = 1;
        f.kind = FactorKind::literal;
    } else {
        f.length = len;
        f.kind = FactorKind::copy;
        f.witness = *src0 + 1;
    }
    return f;
}

} // namespace

std::vector<Factor> lz_naive(std::span<CharCode const> text) {
    std::vector<Factor> out;
    std::uint64_t pos = 0;
    while(pos < text.size()) {
        std::uint64_t best = 0;
        std::optional<std::uint64_t> src;
        for(std::uint64_t j = 0; j < pos; ++j) {
            std::uint64_t const l = naive_lcp(text, j, pos);
            if(l > best) {
                best = l;
                src = j;
            }
        }
        out.push_back(make(out.size() + 1, pos, best, src));
        pos += out.back().length;
    }
    return out;
}

std::vector<std::uint32_t> suffix_array(std::span<CharCode const> text) {
    std::size_t const n = text.size();
    std::vector<std::uint32_t> sa(n), tmp(n);
    std::vector<std::int64_t> rank(n), next(n);
    std::iota(sa.begin(), sa.end(), 0);
    for(std::size_t i = 0; i < n; ++i) rank[i] = text[i];
    for(std::size_t k = 1;; k <<= 1) {
        auto key2 = [&](std::uint32_t i) { return i + k < n ? rank[i + k] : -1; };
        auto cmp = [&](std::uint32_t a, std::uint32_t b) {
            if(rank[a] != rank[b]) return rank[a] < rank[b];
            return key2(a) < key2(b);
        };
        std::sort(sa.begin(), sa.end(), cmp);
        if(n == 0) break;
        next[sa[0]] = 0;
        for(std::size_t i = 1; i < n; ++i) next[sa[i]] = next[sa[i - 1]] + (cmp(sa[i - 1], sa[i]) ? 1 : 0);
        rank.swap(next);
        if(static_cast<std::size_t>(rank[sa[n - 1]]) == n - 1) break;
    }
    return sa;
}

std::vector<Factor> lz_suffix_array(std::span<CharCode const> text) {
    std::size_t const n = text.size();
    auto const sa = suffix_array(text);
    std::vector<std::uint32_t> isa(n);
    for(std::size_t i = 0; i < n; ++i) isa[sa[i]] = static_cast<std::uint32_t>(i);

    // Previous/next smaller suffix start (in text order) for each rank.
    constexpr std::int64_t kNone = -1;
    std::vector<std::int64_t> psv(n, kNone), nsv(n, kNone);
    std::vector<std::size_t> stack;
    for(std::size_t i = 0; i < n; ++i) {
        while(!stack.empty() && sa[stack.back()] > sa[i]) stack.pop_back();
        if(!stack.empty()) psv[i] = sa[stack.back()];
        stack.push_back(i);
    }
    stack.clear();
    for(std::size_t i = n; i-- > 0;) {
        while(!stack.empty() && sa[stack.back()] > sa[i]) stack.pop_back();
        if(!stack.empty()) nsv[i] = sa[stack.back()];
        stack.push_back(i);
    }

    std::vector<Factor> out;
    std::uint64_t pos = 0;
    while(pos < n) {
        std::size_t const k = isa[pos];
        std::uint64_t best = 0;
        std::optional<std::uint64_t> src;
        for(auto cand : {psv[k], nsv[k]}) {
            if(cand == kNone) continue;
            std::uint64_t const l = naive_lcp(text, static_cast<std::uint64_t>(cand), pos);
            if(l > best) {
                best = l;
                src = static_cast<std::uint64_t>(cand);
            }
        }
        out.push_back(make(out.size() + 1, pos, best, src));
        pos += out.back().length;
    }
    return out;
}

std::optional<std::uint64_t> first_mismatch(std::span<CharCode const> text, std::span<Factor const> factors,
                                            std::span<Factor const> reference) {
    std::size_t const count = std::max(factors.size(), reference.size());
    std::uint64_t expected_start = 1;
    for(std::size_t i = 0; i < count; ++i) {
        if(i >= factors.size() || i >= reference.size()) return i + 1;
        Factor const& f = factors[i];
        Factor const& g = reference[i];
        if(f.index != i + 1 || f.start != expected_start || f.start != g.start || f.length != g.length ||
           f.kind != g.kind)
            return i + 1;
        if(f.kind == FactorKind::copy) {
            if(!f.witness || *f.witness >= f.start || *f.witness < 1) return i + 1;
            for(std::uint64_t q = 0; q < f.length; ++q)
                if(text[*f.witness - 1 + q] != text[f.start - 1 + q]) return i + 1;
        } else if(f.length != 1 || f.witness) {
            return i + 1;
        }
        expected_start += f.length;
    }
    if(expected_start != text.size() + 1) return count;
    return std::nullopt;
}

std::vector<std::uint64_t> meta_word(Params const& p, std::span<CharCode const> text, std::uint64_t t) {
    std::vector<std::uint64_t> out(t);
    for(std::uint64_t k = 0; k < t; ++k) {
        std::uint64_t v = 0;
        for(unsigned i = 0; i < p.r; ++i) v = (v << p.bpc) | text[k * p.r + i];
        out[k] = v;
    }
    return out;
}

NaiveTree naive_implicit_tree(std::span<std::uint64_t const> word) {
    using Word = NaiveTree::Word;
    std::size_t const t = word.size();
    std::set<Word> substrings;
    for(std::size_t i = 0; i < t; ++i)
        for(std::size_t j = i; j <= t; ++j) substrings.emplace(word.begin() + i, word.begin() + j);

    std::set<Word> explicit_nodes{Word{}};
    std::set<Word> branching{Word{}};
    for(auto const& x : substrings) {
        std::set<std::uint64_t> next;
        for(auto const& y : substrings)
            if(y.size() == x.size() + 1 && std::equal(x.begin(), x.end(), y.begin())) next.insert(y.back());
        if(next.size() >= 2) {
            branching.insert(x);
            explicit_nodes.insert(x);
        }
    }
    NaiveTree out;
    for(std::size_t j = 0; j < t; ++j) {
        Word const suffix(word.begin() + j, word.end());
        bool elsewhere = false;
        for(std::size_t i = 0; i + suffix.size() <= t && !elsewhere; ++i)
            elsewhere = i != j && std::equal(suffix.begin(), suffix.end(), word.begin() + i);
        if(elsewhere) continue;
        explicit_nodes.insert(suffix);
        out.leaves.emplace(suffix, j + 1);
    }
    for(auto const& x : explicit_nodes) {
        if(x.empty()) continue;
        std::size_t len = x.size() - 1;
        while(!branching.count(Word(x.begin(), x.begin() + len))) --len;
        out.edges.emplace(Word(x.begin(), x.begin() + len), Word(x.begin() + len, x.end()));
    }
    return out;
}

MetaStructures meta_structures(Params const& p, std::span<CharCode const> text, std::uint64_t t) {
    auto const word = meta_word(p, text, t);
    // Suffix j (0-based) is a leaf iff it does not also start at another position.
    auto occurs_elsewhere = [&](std::uint64_t j) {
        std::uint64_t const len = t - j;
        for(std::uint64_t i = 0; i + len <= t; ++i)
            if(i != j && std::equal(word.begin() + j, word.end(), word.begin() + i)) return true;
        return false;
    };
    MetaStructures s;
    for(std::uint64_t j = 0; j < t; ++j)
        if(!occurs_elsewhere(j)) s.leaf_order.push_back(j + 1);
    std::sort(s.leaf_order.begin(), s.leaf_order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(word.begin() + (a - 1), word.end(), word.begin() + (b - 1), word.end());
    });
    for(auto j : s.leaf_order) {
        if(j == 1) {
            s.gbwt.push_back(p.sentinel);
            continue;
        }
        std::uint64_t const prev = word[j - 2];
        std::uint64_t rev = 0;
        for(unsigned b = 0; b < p.w; ++b) rev |= ((prev >> b) & 1u) << (p.w - 1 - b);
        s.gbwt.push_back(rev);
    }
    return s;
}

std::optional<std::uint64_t> naive_exist(std::span<CharCode const> text, std::span<std::uint64_t const> borders,
                                         std::span<CharCode const> y, std::uint64_t excluded,
                                         std::uint64_t occ_cap) {
    for(auto beta : borders) {
        if(beta == excluded || beta <= y.size() || beta - y.size() > occ_cap) continue;
        if(std::equal(y.begin(), y.end(), text.begin() + (beta - 1 - y.size()))) return beta;
    }
    return std::nullopt;
}

} // namespace onlz::oracle
