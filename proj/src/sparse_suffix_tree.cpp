#include <onlz/sparse_suffix_tree.hpp>

#include <stdexcept>

namespace onlz {

SparseSuffixTree::SparseSuffixTree(Params const& params, PackedText const& text)
    : params_(params), text_(&text), nav_(params.w) {
    vertices_.push_back(Node{0, 0});
}

SparseSuffixTree::Vertex SparseSuffixTree::new_vertex(std::uint64_t start, std::uint64_t end, Vertex parent) {
    Vertex const v = static_cast<Vertex>(vertices_.size());
    Node n{start, end};
    n.parent = parent;
    vertices_.push_back(n);
    return v;
}

NavForest::Neighbors SparseSuffixTree::add_child(Vertex v, Vertex child) {
    auto key = [this](NavForest::Payload u) { return key_of(u); };
    return nav_.insert(vertices_[v].nav, key_of(child), child, key);
}

SparseSuffixTree::Vertex SparseSuffixTree::resolve_edge(Vertex v, std::uint64_t m) const {
    auto key = [this](NavForest::Payload u) { return key_of(u); };
    auto const p = nav_.find(vertices_[v].nav, m, key);
    return p == NavForest::kNoPayload ? kNone : p;
}

std::optional<std::pair<SparseSuffixTree::Vertex, SparseSuffixTree::Vertex>>
SparseSuffixTree::child_span(Vertex v, std::uint64_t prefix, unsigned k) const {
    auto key = [this](NavForest::Payload u) { return key_of(u); };
    return nav_.span(vertices_[v].nav, prefix, k * params_.bpc, key);
}

CharCode SparseSuffixTree::edge_char(Vertex u, std::uint64_t offset) const {
    if(offset < 1 || offset > edge_length(u)) throw std::out_of_range("offset beyond edge label");
    return (*text_)[vertices_[u].start * params_.r + offset];
}

std::uint64_t SparseSuffixTree::depth(Vertex v) const {
    if(is_leaf(v)) return (t_ - vertices_[v].suffix + 1) * params_.r;
    return vertices_[v].depth_blocks * params_.r;
}

std::vector<SparseSuffixTree::Vertex> SparseSuffixTree::children(Vertex v) const {
    std::vector<Vertex> out;
    nav_.for_each(vertices_[v].nav, [&](NavForest::Payload u) { out.push_back(u); });
    return out;
}

std::vector<TreeEvent> SparseSuffixTree::extend() {
    if((t_ + 1) * params_.r > text_->size()) throw std::logic_error("next block is not in the text yet");
    std::vector<TreeEvent> events;
    std::uint64_t const pos = t_++;
    std::uint64_t const c = block0(pos);
    Vertex need_link = kNone;
    ++remainder_;

    auto make_leaf = [&](Vertex parent) {
        Vertex const leaf = new_vertex(pos, kOpen, parent);
        vertices_[leaf].suffix = pos - remainder_ + 2;
        ++leaf_count_;
        auto const nb = add_child(parent, leaf);
        events.push_back(TreeEvent{TreeEvent::Kind::leaf, leaf, parent, kNone, nb.left, nb.right});
    };

    while(remainder_ > 0) {
        if(active_len_ == 0) active_edge_ = pos;
        std::uint64_t const key = block0(active_edge_);
        Vertex const next = resolve_edge(active_node_, key);
        if(next == kNone) {
            make_leaf(active_node_);
            if(need_link != kNone) {
                vertices_[need_link].link = active_node_;
                need_link = kNone;
            }
        } else {
            std::uint64_t const elen = edge_end(next) - vertices_[next].start;
            if(active_len_ >= elen) {
                active_edge_ += elen;
                active_len_ -= elen;
                active_node_ = next;
                continue;
            }
            if(block0(vertices_[next].start + active_len_) == c) {
                ++active_len_;
                if(need_link != kNone) {
                    vertices_[need_link].link = active_node_;
                    need_link = kNone;
                }
                break;
            }
            std::uint64_t const s = vertices_[next].start;
            Vertex const split = new_vertex(s, s + active_len_, active_node_);
            vertices_[split].depth_blocks =
                (active_node_ == kRoot ? 0 : vertices_[active_node_].depth_blocks) + active_len_;
            nav_.replace(vertices_[active_node_].nav, key, split, [this](NavForest::Payload u) { return key_of(u); });
            vertices_[next].start = s + active_len_;
            vertices_[next].parent = split;
            events.push_back(TreeEvent{TreeEvent::Kind::split, split, active_node_, next});
            add_child(split, next);
            make_leaf(split);
            if(need_link != kNone) vertices_[need_link].link = split;
            need_link = split;
        }
        --remainder_;
        if(active_node_ == kRoot && active_len_ > 0) {
            --active_len_;
            active_edge_ = pos - remainder_ + 1;
        } else if(active_node_ != kRoot) {
            Vertex const l = vertices_[active_node_].link;
            active_node_ = l == kNone ? kRoot : l;
        }
    }
    return events;
}

} // namespace onlz
