#include <onlz/wavelet_tree.hpp>

#include <bit>
#include <stdexcept>

namespace onlz {

namespace {
DynamicWaveletTree::Value midpoint(DynamicWaveletTree::Value lo, DynamicWaveletTree::Value hi) {
    return lo + (hi - lo) / 2;
}
} // namespace

DynamicWaveletTree::DynamicWaveletTree(Value max_value) : max_value_(max_value) {
    nodes_.push_back(Node{0, max_value_});
}

void DynamicWaveletTree::insert(std::uint64_t k, Value val) {
    if(k > size_) throw std::out_of_range("wavelet insertion point beyond end");
    if(val > max_value_) throw std::out_of_range("wavelet value out of range");
    std::uint32_t x = 0;
    std::uint64_t pos = k;
    while(true) {
        ++nodes_[x].count;
        Value const lo = nodes_[x].lo, hi = nodes_[x].hi;
        if(lo == hi) break;
        Value const mid = midpoint(lo, hi);
        bool const bit = val > mid;
        nodes_[x].bits.insert(pos, bit);
        pos = nodes_[x].bits.rank(bit, pos);
        std::uint32_t c = nodes_[x].child[bit];
        if(c == kNone) {
            c = static_cast<std::uint32_t>(nodes_.size());
            Node n{bit ? mid + 1 : lo, bit ? hi : mid};
            n.parent = x;
            nodes_.push_back(std::move(n));
            nodes_[x].child[bit] = c;
        }
        x = c;
    }
    ++size_;
}

DynamicWaveletTree::Value DynamicWaveletTree::access(std::uint64_t k) const {
    if(k < 1 || k > size_) throw std::out_of_range("wavelet access out of range");
    std::uint32_t x = 0;
    while(nodes_[x].lo != nodes_[x].hi) {
        bool const bit = nodes_[x].bits.access(k);
        k = nodes_[x].bits.rank(bit, k);
        x = nodes_[x].child[bit];
    }
    return nodes_[x].lo;
}

void DynamicWaveletTree::collect(std::uint32_t x, std::uint64_t first, std::uint64_t last, Value lo,
                                 Value hi, std::vector<Cover>& out) const {
    if(x == kNone || first > last) return;
    ++last_visits_;
    Node const& n = nodes_[x];
    if(n.hi < lo || n.lo > hi) return;
    if(lo <= n.lo && n.hi <= hi) {
        out.push_back({x, first, last});
        return;
    }
    for(int bit = 0; bit < 2; ++bit) {
        std::uint64_t const f = n.bits.rank(bit, first - 1) + 1;
        std::uint64_t const l = n.bits.rank(bit, last);
        collect(n.child[bit], f, l, lo, hi, out);
    }
}

std::uint64_t DynamicWaveletTree::to_root(std::uint32_t x, std::uint64_t k) const {
    while(nodes_[x].parent != kNone) {
        std::uint32_t const p = nodes_[x].parent;
        bool const bit = nodes_[p].child[1] == x;
        k = nodes_[p].bits.select(bit, k);
        x = p;
        ++last_visits_;
    }
    return k;
}

std::vector<std::uint64_t> DynamicWaveletTree::range_candidates(std::uint64_t first, std::uint64_t last,
                                                                Value lo, Value hi,
                                                                std::size_t limit) const {
    last_visits_ = 0;
    std::vector<std::uint64_t> out;
    if(limit == 0 || first < 1 || first > last || lo > hi || size_ == 0) return out;
    if(last > size_) last = size_;

    std::vector<Cover> covers;
    collect(0, first, last, lo, hi, covers);

    std::uint64_t total = 0;
    for(auto const& c : covers) total += c.last - c.first + 1;

    if(total <= limit) {
        for(auto const& c : covers) {
            for(std::uint64_t k = c.first; k <= c.last; ++k) out.push_back(to_root(c.node, k));
        }
        return out;
    }

    // first limit-1 matches of the decomposition, then its last match
    std::size_t const head = limit - 1;
    for(auto const& c : covers) {
        for(std::uint64_t k = c.first; k <= c.last && out.size() < head; ++k) {
            out.push_back(to_root(c.node, k));
        }
        if(out.size() == head) break;
    }
    auto const& tail = covers.back();
    out.push_back(to_root(tail.node, tail.last));
    return out;
}

std::uint64_t DynamicWaveletTree::range_count(std::uint64_t first, std::uint64_t last, Value lo,
                                              Value hi) const {
    last_visits_ = 0;
    if(first < 1 || first > last || lo > hi || size_ == 0) return 0;
    if(last > size_) last = size_;
    std::vector<Cover> covers;
    collect(0, first, last, lo, hi, covers);
    std::uint64_t total = 0;
    for(auto const& c : covers) total += c.last - c.first + 1;
    return total;
}

std::uint64_t DynamicWaveletTree::total_bits() const {
    std::uint64_t b = 0;
    for(auto const& n : nodes_) b += n.bits.size();
    return b;
}

unsigned DynamicWaveletTree::depth_bound() const {
    // a range of m values has depth ceil(log2 m)
    return static_cast<unsigned>(std::bit_width(max_value_));
}

bool DynamicWaveletTree::check_lengths() const {
    for(auto const& n : nodes_) {
        if(n.lo == n.hi) continue;
        if(n.bits.size() != n.count) return false;
        std::uint64_t kids = 0;
        for(int bit = 0; bit < 2; ++bit) {
            if(n.child[bit] != kNone) kids += nodes_[n.child[bit]].count;
        }
        if(kids != n.count) return false;
        if(n.bits.count(true) != (n.child[1] == kNone ? 0 : nodes_[n.child[1]].count)) return false;
    }
    return true;
}

} // namespace onlz
