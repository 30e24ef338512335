#include <onlz/factorizer.hpp>

#include <algorithm>
#include <string>

namespace onlz {

namespace {

class NullObserver final : public FactorObserver {};

class CollectingObserver final : public FactorObserver {
public:
    explicit CollectingObserver(FactorObserver* next) : next_(next) {}
    void on_factor(Factor const& f, FactorTrace const& t) override {
        out.push_back(f);
        if(next_) next_->on_factor(f, t);
    }
    void on_block(Factorizer const& fz, Progress const& p) override {
        if(next_) next_->on_block(fz, p);
    }
    std::vector<Factor> out;

private:
    FactorObserver* next_;
};

} // namespace

/// Position of the tree descent for one shift m.
///
/// With u == kNone the matched string ends inside the first block below v,
/// d characters deep, and \c prefix holds those characters. Otherwise it ends
/// d characters down the edge into u.
struct Factorizer::Locus {
    SparseSuffixTree::Vertex v = SparseSuffixTree::kRoot;
    SparseSuffixTree::Vertex u = SparseSuffixTree::kNone;
    std::uint64_t d = 0;
    std::uint64_t prefix = 0;
};

Factorizer::Factorizer(Params const& params)
    : params_(params),
      text_(params),
      trie_(params),
      index_(params, text_),
      buffer_(params.r) {}

void Factorizer::run(BlockSource& source, FactorObserver& observer) {
    if(done_) throw std::logic_error("Factorizer::run called twice");
    done_ = true;
    source_ = &source;
    observer_ = &observer;

    while(ell_ < params_.n) compute_factor();

    CharCode extra[1];
    if(source.pull(std::span<CharCode>(extra, 1)) != 0)
        throw InputLengthMismatch("input is longer than the declared length " + std::to_string(params_.n));
}

std::optional<std::uint64_t> Factorizer::exist(std::uint64_t first, std::uint64_t last, std::uint64_t y_start,
                                               unsigned y_len, std::uint64_t excluded,
                                               std::uint64_t occ_cap) const {
    if(first > last || first < 1) return std::nullopt;
    auto [lo, hi] = y_range(params_, y_len ? text_.pack(y_start, y_len) : 0, y_len);
    if(y_len == 0) hi = params_.sentinel;
    for(auto k : gbwt().range_candidates(first, last, lo, hi, 3)) {
        std::uint64_t const beta = order().kth_suffix_leaf(k).border;
        if(beta != excluded && beta > y_len && beta - y_len <= occ_cap) return beta;
    }
    return std::nullopt;
}

EngineStats Factorizer::stats() const {
    EngineStats s;
    s.n = params_.n;
    s.factors = factors_;
    s.r = params_.r;
    s.blocks_read = blocks_read_;
    s.leaves = tree().leaf_count();
    s.tree_vertices = tree().vertex_count();
    s.trie_nodes = trie_.node_count();
    s.wavelet_nodes = gbwt().node_count();
    s.wavelet_bits = gbwt().total_bits();
    s.order_entries = order().entry_count();
    s.exist_calls = exist_total_;
    s.max_lag = max_lag_;
    return s;
}

void Factorizer::read_block() {
    if(read_pos_ >= params_.n) throw std::logic_error("read past the declared length");
    if(ell_ + confirmed_ != read_pos_) throw std::logic_error("block requested before the frontier reached it");

    std::uint64_t const want = std::min<std::uint64_t>(params_.r, params_.n - read_pos_);
    std::size_t got = 0;
    while(got < want) {
        std::size_t const k = source_->pull(std::span<CharCode>(buffer_.data() + got, want - got));
        if(k == 0) break;
        got += k;
    }
    if(got < want)
        throw InputLengthMismatch("input ended after " + std::to_string(read_pos_ + got) +
                                  " characters, expected " + std::to_string(params_.n));
    for(std::size_t i = 0; i < got; ++i) text_.append(buffer_[i]);
    read_pos_ += got;
    ++blocks_read_;

    if(got == params_.r) {
        index_.extend();
        ++epoch_;
    }
    ingest_windows();

    max_lag_ = std::max(max_lag_, read_pos_ - (ell_ + confirmed_));
    observer_->on_block(*this, Progress{read_pos_, ell_, confirmed_, factors_});
}

void Factorizer::ensure_readable(std::uint64_t pos) {
    while(pos > read_pos_) read_block();
}

void Factorizer::ingest_windows() {
    std::uint64_t const r = params_.r;
    while(r * (next_window_ + 2) <= read_pos_) trie_.ingest_window(text_, next_window_++);
    if(r * next_window_ + 1 <= read_pos_) trie_.ingest_window(text_, next_window_);
}

void Factorizer::raise(std::uint64_t length, std::optional<std::uint64_t> witness) {
    if(length > confirmed_ || (length == confirmed_ && !witness_ && witness)) {
        confirmed_ = length;
        witness_ = witness;
    }
}

void Factorizer::emit(std::uint64_t length, FactorKind kind, std::optional<std::uint64_t> witness) {
    Factor f;
    f.index = ++factors_;
    f.start = ell_ + 1;
    f.length = length;
    f.kind = kind;
    if(kind == FactorKind::copy) f.witness = witness;
    ell_ += length;
    confirmed_ = 0;
    witness_.reset();
    observer_->on_factor(f, trace_);
    trace_ = {};
}

void Factorizer::compute_factor() {
    std::uint64_t const n = params_.n;
    std::uint64_t const r = params_.r;
    std::uint64_t const ell_blocks = ell_ / r;
    confirmed_ = 0;
    witness_.reset();

    std::uint64_t const end1 = std::min(n, (ell_blocks + 1) * r);
    while(read_pos_ < end1) read_block();

    // Short factor: longest prefix of W[ell+1..ell+r] occurring at or before ell.
    auto [node, s] = trie_.descend(BlockTrie::kRoot, text_, ell_ + 1, end1, ell_);
    if(s > 0) raise(s, trie_.min_pos(node));
    std::uint64_t const end2 = std::min(n, ell_ + r);
    if(ell_ + s == end1 && end2 > end1) {
        ensure_readable(end2);
        auto const [node2, s2] = trie_.descend(node, text_, end1 + 1, end2, ell_);
        if(s2 > 0) {
            s += s2;
            raise(s, trie_.min_pos(node2));
        }
    }

    if(s < r || ell_ + r > n) {
        if(s == 0) emit(1, FactorKind::literal, std::nullopt);
        else emit(s, FactorKind::copy, witness_);
        return;
    }
    long_factor(ell_blocks);
}

void Factorizer::long_factor(std::uint64_t ell_blocks) {
    std::uint64_t const n = params_.n;
    std::uint64_t const r = params_.r;
    trace_.long_path = true;

    // Wait until the suffix at block ell'+1 becomes a leaf; everything before
    // it is then known to recur.
    std::uint64_t const before = read_pos_;
    while(!tree().is_block_suffix_leaf(ell_blocks + 1)) {
        std::uint64_t const covered = tree().blocks() * r - ell_;
        if(covered > confirmed_) {
            confirmed_ = covered;
            witness_.reset();
        }
        if(n - read_pos_ < r) break;
        read_block();
    }
    trace_.first_step_chars = read_pos_ - before;
    if(!tree().is_block_suffix_leaf(ell_blocks + 1)) {
        if(read_pos_ < n) read_block();
        trace_.first_step_chars = read_pos_ - before;
        finish_at_end();
        return;
    }

    std::uint64_t const b = (ell_blocks + 1) * r + 1;
    for(unsigned m = 1; m <= r; ++m) {
        // Occurrence starting at b - m is not a suffix-tree candidate: compare directly.
        if(b - m >= 1 && b - m <= ell_) {
            std::uint64_t const st = b - m;
            std::uint64_t q = 0;
            while(ell_ + q + 1 <= n) {
                ensure_readable(ell_ + q + 1);
                if(text_[st + q] != text_[ell_ + 1 + q]) break;
                ++q;
                raise(q, st);
            }
        }
        descend_tree(m, b);
    }
    emit(std::max<std::uint64_t>(confirmed_, r), FactorKind::copy, witness_);
}

// The input ended while the suffix at block ell'+1 was still implicit. The
// implicit block suffixes have no leaves, so the tree cannot list every
// candidate; the whole text is known by now and the factor is found by one
// KMP scan instead.
void Factorizer::finish_at_end() {
    std::uint64_t const n = params_.n;
    std::uint64_t const plen = n - ell_;
    auto pat = [&](std::uint64_t i) { return text_[ell_ + 1 + i]; };
    std::vector<std::uint32_t> fail(plen + 1, 0);
    for(std::uint64_t i = 1, k = 0; i < plen; ++i) {
        while(k > 0 && pat(i) != pat(k)) k = fail[k];
        if(pat(i) == pat(k)) ++k;
        fail[i + 1] = static_cast<std::uint32_t>(k);
    }
    std::uint64_t best = 0, best_start = 0;
    for(std::uint64_t i = 1, k = 0; i <= n; ++i) {
        if(k == plen) k = fail[k];
        while(k > 0 && text_[i] != pat(k)) k = fail[k];
        if(text_[i] == pat(k)) ++k;
        std::uint64_t const st = i - k + 1;
        if(k > best && st <= ell_) {
            best = k;
            best_start = st;
        }
    }
    raise(best, best_start);
    emit(std::max<std::uint64_t>(confirmed_, params_.r), FactorKind::copy, witness_);
}

void Factorizer::descend_tree(unsigned m, std::uint64_t excluded) {
    using SST = SparseSuffixTree;
    std::uint64_t const n = params_.n;
    std::uint64_t const y_start = ell_ + 1;
    unsigned const y_len = m - 1;

    Locus loc;
    std::uint64_t seen_epoch = epoch_;
    bool leaf_mode = false;
    std::uint64_t leaf_border = 0;

    enum class KeyKind { none, edge, span };
    struct Key {
        KeyKind kind = KeyKind::none;
        SST::Vertex a = SST::kNone, b = SST::kNone, c = SST::kNone;
        bool operator==(Key const&) const = default;
    };
    Key validated;
    std::uint64_t validated_border = 0;

    // Re-anchors the locus after the tree grew: a split may have put a new
    // vertex between v and u.
    auto repair = [&] {
        if(leaf_mode || loc.u == SST::kNone) return;
        std::uint64_t const depth = tree().depth(loc.v) + loc.d;
        SST::Vertex y = loc.u;
        while(tree().depth(tree().parent(y)) >= depth) y = tree().parent(y);
        loc.v = tree().parent(y);
        loc.u = y;
        loc.d = depth - tree().depth(loc.v);
    };

    auto leaf_valid = [&](SST::Vertex leaf) {
        std::uint64_t const beta = tree().leaf_border(leaf);
        if(beta == excluded || beta < m || beta - y_len > ell_) return false;
        for(unsigned i = 0; i < y_len; ++i)
            if(text_[beta - y_len + i] != text_[y_start + i]) return false;
        return true;
    };

    // Advances the locus by one character; false when no child continues.
    auto advance = [&](CharCode c) {
        if(loc.u != SST::kNone && loc.d == tree().edge_length(loc.u)) {
            loc.v = loc.u;
            loc.u = SST::kNone;
            loc.d = 0;
            loc.prefix = 0;
        }
        if(loc.u == SST::kNone) {
            std::uint64_t const p = (loc.prefix << params_.bpc) | c;
            auto const span = tree().child_span(loc.v, p, static_cast<unsigned>(loc.d + 1));
            if(!span) return false;
            ++loc.d;
            loc.prefix = p;
            if(span->first == span->second) loc.u = span->first;
            return true;
        }
        if(tree().edge_char(loc.u, loc.d + 1) != c) return false;
        ++loc.d;
        return true;
    };

    auto current_key = [&]() -> std::pair<Key, std::pair<std::uint64_t, std::uint64_t>> {
        if(loc.u != SST::kNone) return {Key{KeyKind::edge, loc.u}, order().subtree_span(loc.u)};
        auto const span = tree().child_span(loc.v, loc.prefix, static_cast<unsigned>(loc.d));
        if(!span) throw std::logic_error("descent locus lost its children");
        std::uint64_t const lo = order().subtree_span(span->first).first;
        std::uint64_t const hi = order().subtree_span(span->second).second;
        return {Key{KeyKind::span, loc.v, span->first, span->second}, {lo, hi}};
    };

    for(std::uint64_t matched = 0;; ++matched) {
        std::uint64_t const p = ell_ + m + matched;
        if(p > n) return;
        ensure_readable(p);
        if(epoch_ != seen_epoch) {
            repair();
            seen_epoch = epoch_;
        }
        CharCode const c = text_[p];
        if(leaf_mode) {
            if(text_[leaf_border + matched] != c) return;
        } else {
            if(!advance(c)) return;
            if(loc.u != SST::kNone && tree().is_leaf(loc.u)) {
                if(!leaf_valid(loc.u)) return;
                leaf_mode = true;
                leaf_border = tree().leaf_border(loc.u);
            }
        }

        std::uint64_t const len = y_len + matched + 1;
        if(len < confirmed_ || (len == confirmed_ && witness_)) continue;
        if(leaf_mode) {
            raise(len, leaf_border - y_len);
            continue;
        }
        auto const [key, ranks] = current_key();
        if(!(validated == key)) {
            ++trace_.exist_calls;
            ++exist_total_;
            auto const beta = exist(ranks.first, ranks.second, y_start, y_len, excluded, ell_);
            if(!beta) return;
            validated = key;
            validated_border = *beta;
        }
        raise(len, validated_border - y_len);
    }
}

std::vector<Factor> factorize(std::span<CharCode const> text, Params const& params) {
    NullObserver none;
    return factorize(text, params, none);
}

std::vector<Factor> factorize(std::span<CharCode const> text, Params const& params, FactorObserver& observer) {
    SpanSource src(text);
    CollectingObserver collect(&observer);
    Factorizer fz(params);
    fz.run(src, collect);
    return std::move(collect.out);
}

} // namespace onlz
