#include <onlz/block_index.hpp>

namespace onlz {

BlockIndex::BlockIndex(Params const& params, PackedText const& text)
    : params_(params), tree_(params, text), gbwt_(params.sentinel) {}

void BlockIndex::extend() {
    for(auto const& ev : tree_.extend()) {
        if(ev.kind == TreeEvent::Kind::split) {
            order_.apply(ev);
            continue;
        }
        order_.apply(ev, tree_.leaf_border(ev.vertex));
        std::uint64_t const j = tree_.leaf_suffix(ev.vertex);
        std::uint64_t const val = j == 1 ? params_.sentinel : reverse_bits(tree_.meta(j - 1), params_.w);
        gbwt_.insert(order_.leaf_rank(ev.vertex) - 1, val);
    }
}

} // namespace onlz
