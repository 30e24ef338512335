#include <onlz/block_trie.hpp>

#include <algorithm>

namespace onlz {

BlockTrie::BlockTrie(Params const& params) : params_(params), dense_(params.sigma <= kDenseSigmaLimit) {
    min_pos_.push_back(kNoPos);
    if(dense_) {
        dense_children_.assign(std::max<std::uint64_t>(params_.sigma, 1), kNone);
    } else {
        sparse_children_.emplace_back();
    }
}

BlockTrie::Node BlockTrie::child(Node v, CharCode c) const {
    if(dense_) return dense_children_[std::size_t(v) * params_.sigma + c];
    auto const& kids = sparse_children_[v];
    auto it = std::lower_bound(kids.begin(), kids.end(), c,
                               [](auto const& e, CharCode x) { return e.first < x; });
    return (it != kids.end() && it->first == c) ? it->second : kNone;
}

BlockTrie::Node BlockTrie::add_child(Node v, CharCode c) {
    Node const u = static_cast<Node>(min_pos_.size());
    min_pos_.push_back(kNoPos);
    if(dense_) {
        dense_children_.resize(dense_children_.size() + params_.sigma, kNone);
        dense_children_[std::size_t(v) * params_.sigma + c] = u;
    } else {
        sparse_children_.emplace_back();
        auto& kids = sparse_children_[v];
        auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                   [](auto const& e, CharCode x) { return e.first < x; });
        kids.insert(it, {c, u});
    }
    return u;
}

void BlockTrie::ingest_window(PackedText const& text, std::uint64_t j) {
    std::uint64_t const r = params_.r;
    std::uint64_t const first = r * j + 1;
    std::uint64_t const last = std::min(r * (j + 2), text.size());
    if(first > last) return;

    // already represented: every suffix is, too, with an earlier or equal start
    Node v = kRoot;
    std::uint64_t pos = first;
    while(pos <= last) {
        Node const u = child(v, text[pos]);
        if(u == kNone) break;
        v = u;
        ++pos;
    }
    if(pos > last) return;

    ++inserted_windows_;
    for(std::uint64_t start = first; start <= last; ++start) {
        Node x = kRoot;
        for(std::uint64_t p = start; p <= last; ++p) {
            Node u = child(x, text[p]);
            if(u == kNone) u = add_child(x, text[p]);
            min_pos_[u] = std::min(min_pos_[u], start);
            x = u;
        }
    }
}

std::pair<BlockTrie::Node, std::uint64_t> BlockTrie::descend(Node node, PackedText const& text,
                                                             std::uint64_t from, std::uint64_t to,
                                                             std::uint64_t max_pos) const {
    std::uint64_t matched = 0;
    for(std::uint64_t p = from; p <= to && p <= text.size(); ++p) {
        Node const u = child(node, text[p]);
        if(u == kNone || min_pos_[u] > max_pos) break;
        node = u;
        ++matched;
    }
    return {node, matched};
}

std::vector<std::pair<CharCode, BlockTrie::Node>> BlockTrie::children(Node v) const {
    if(!dense_) return sparse_children_[v];
    std::vector<std::pair<CharCode, Node>> out;
    for(CharCode c = 0; c < params_.sigma; ++c) {
        Node const u = dense_children_[std::size_t(v) * params_.sigma + c];
        if(u != kNone) out.emplace_back(c, u);
    }
    return out;
}

} // namespace onlz
