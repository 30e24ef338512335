#include <onlz/order_index.hpp>

#include <stdexcept>

namespace onlz {

OrderIndex::OrderIndex() {
    auto const a = seq_.push_back(Entry{SparseSuffixTree::kRoot, 0, false, true});
    auto const b = seq_.push_back(Entry{SparseSuffixTree::kRoot, 0, false, false});
    remember(SparseSuffixTree::kRoot, a, b);
}

void OrderIndex::remember(Vertex v, Seq::Handle first, Seq::Handle last) {
    if(first_.size() <= v) {
        first_.resize(v + 1, Seq::kNil);
        last_.resize(v + 1, Seq::kNil);
    }
    first_[v] = first;
    last_[v] = last;
}

void OrderIndex::apply(TreeEvent const& ev, std::uint64_t border) {
    auto const known = [&](Vertex v) { return v < first_.size() && first_[v] != Seq::kNil; };
    if(ev.kind == TreeEvent::Kind::split) {
        if(!known(ev.lower)) throw std::logic_error("split below a vertex missing from the tour");
        auto const a = seq_.insert_before(first_[ev.lower], Entry{ev.vertex, 0, false, true});
        auto const b = seq_.insert_after(last_[ev.lower], Entry{ev.vertex, 0, false, false});
        remember(ev.vertex, a, b);
        return;
    }

    Entry const e{ev.vertex, border, true, true};
    Seq::Handle h;
    if(ev.left != TreeEvent::kNone) {
        if(!known(ev.left)) throw std::logic_error("left sibling missing from the tour");
        h = seq_.insert_after(last_[ev.left], e);
    } else if(ev.right != TreeEvent::kNone) {
        if(!known(ev.right)) throw std::logic_error("right sibling missing from the tour");
        h = seq_.insert_before(first_[ev.right], e);
    } else {
        if(!known(ev.parent)) throw std::logic_error("parent missing from the tour");
        h = seq_.insert_after(first_[ev.parent], e);
    }
    remember(ev.vertex, h, h);
}

std::pair<std::uint64_t, std::uint64_t> OrderIndex::subtree_span(Vertex v) const {
    std::uint64_t const left = seq_.prefix_before(first_[v]).leaves + 1;
    std::uint64_t const right = seq_.prefix_through(last_[v]).leaves;
    return {left, right};
}

std::uint64_t OrderIndex::leaf_rank(Vertex leaf) const {
    return seq_.prefix_through(first_[leaf]).leaves;
}

OrderIndex::LeafEntry OrderIndex::kth_suffix_leaf(std::uint64_t k) const {
    if(k < 1 || k > leaf_count()) throw std::out_of_range("leaf rank out of range");
    auto x = seq_.root();
    while(true) {
        auto const& n = seq_.node(x);
        std::uint64_t const lc = seq_.sum(n.left).leaves;
        if(k <= lc) {
            x = n.left;
            continue;
        }
        k -= lc;
        if(n.item.suffix_leaf) {
            if(k == 1) return {n.item.vertex, n.item.border};
            --k;
        }
        x = n.right;
    }
}

std::vector<std::pair<OrderIndex::Vertex, bool>> OrderIndex::tour() const {
    std::vector<std::pair<Vertex, bool>> out;
    out.reserve(seq_.size());
    seq_.for_each([&](Seq::Handle, Entry const& e) { out.emplace_back(e.vertex, e.first_copy); });
    return out;
}

bool OrderIndex::check_counts() const {
    bool ok = true;
    auto rec = [&](auto&& self, Seq::Handle x) -> std::uint64_t {
        if(x == Seq::kNil) return 0;
        auto const& n = seq_.node(x);
        std::uint64_t const c = self(self, n.left) + (n.item.suffix_leaf ? 1 : 0) + self(self, n.right);
        if(c != n.sum.leaves) ok = false;
        return c;
    };
    rec(rec, seq_.root());
    return ok;
}

} // namespace onlz
