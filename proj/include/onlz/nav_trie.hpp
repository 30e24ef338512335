#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace onlz {

/// \brief A forest of compacted binary tries (crit-bit trees) over w-bit keys.
///
/// One trie per suffix-tree vertex; all share a node pool. Leaves hold an
/// opaque 31-bit payload (a suffix-tree vertex id) whose key is obtained
/// through a caller-supplied function, so keys are never stored twice.
/// Bit 0 is the most significant of the w bits, which makes in-order
/// traversal follow numeric key order and every character prefix of a block
/// a contiguous subtree.
class NavForest {
public:
    using Ref = std::uint32_t;
    using Payload = std::uint32_t;

    static constexpr Ref kEmpty = std::numeric_limits<Ref>::max();
    static constexpr Payload kNoPayload = std::numeric_limits<Payload>::max();

    /// Neighbours of a freshly inserted key among the previous keys.
    struct Neighbors {
        Payload left = kNoPayload;
        Payload right = kNoPayload;
    };

    NavForest() = default;
    explicit NavForest(unsigned width) : width_(width) {}

    unsigned width() const { return width_; }

    template<typename KeyFn>
    Payload find(Ref root, std::uint64_t key, KeyFn&& key_of) const {
        if(root == kEmpty) return kNoPayload;
        Ref x = root;
        while(!is_leaf(x)) x = nodes_[x].child[bit_of(key, nodes_[x].bit)];
        Payload const p = payload(x);
        return key_of(p) == key ? p : kNoPayload;
    }

    /// \brief Inserts \p value under \p key (which must be absent).
    ///
    /// Exactly one neighbour is reported unless the trie was empty: the
    /// predecessor when the new key went to the right of its crit-bit
    /// sibling subtree, the successor otherwise.
    template<typename KeyFn>
    Neighbors insert(Ref& root, std::uint64_t key, Payload value, KeyFn&& key_of) {
        if(root == kEmpty) {
            root = leaf_ref(value);
            return {};
        }
        Ref x = root;
        while(!is_leaf(x)) x = nodes_[x].child[bit_of(key, nodes_[x].bit)];
        std::uint64_t const diff = key ^ key_of(payload(x));
        unsigned const crit = width_ - static_cast<unsigned>(std::bit_width(diff));
        unsigned const dir = bit_of(key, crit);

        // walk to the slot where the new crit node goes
        Ref parent = kEmpty;
        unsigned pdir = 0;
        Ref cur = root;
        while(!is_leaf(cur) && nodes_[cur].bit < crit) {
            parent = cur;
            pdir = bit_of(key, nodes_[cur].bit);
            cur = nodes_[cur].child[pdir];
        }
        Ref const n = static_cast<Ref>(nodes_.size());
        Node node;
        node.bit = static_cast<std::uint8_t>(crit);
        node.child[dir] = leaf_ref(value);
        node.child[1 - dir] = cur;
        nodes_.push_back(node);
        if(parent == kEmpty) root = n;
        else nodes_[parent].child[pdir] = n;

        Neighbors nb;
        if(dir == 1) nb.left = payload(max_leaf(cur));
        else nb.right = payload(min_leaf(cur));
        return nb;
    }

    /// Replaces the payload stored under \p key.
    template<typename KeyFn>
    void replace(Ref& root, std::uint64_t key, Payload value, KeyFn&&) {
        if(is_leaf(root)) {
            root = leaf_ref(value);
            return;
        }
        Ref x = root;
        while(true) {
            unsigned const d = bit_of(key, nodes_[x].bit);
            Ref const c = nodes_[x].child[d];
            if(is_leaf(c)) {
                nodes_[x].child[d] = leaf_ref(value);
                return;
            }
            x = c;
        }
    }

    /// \brief Smallest and largest payload whose key starts with the top
    /// \p prefix_bits bits given in \p prefix.
    template<typename KeyFn>
    std::optional<std::pair<Payload, Payload>> span(Ref root, std::uint64_t prefix, unsigned prefix_bits,
                                                    KeyFn&& key_of) const {
        if(root == kEmpty) return std::nullopt;
        std::uint64_t const probe = prefix_bits == 0 ? 0 : prefix << (width_ - prefix_bits);
        Ref x = root;
        while(!is_leaf(x) && nodes_[x].bit < prefix_bits) x = nodes_[x].child[bit_of(probe, nodes_[x].bit)];
        Payload const lo = payload(min_leaf(x));
        if(prefix_bits > 0 && (key_of(lo) >> (width_ - prefix_bits)) != prefix) return std::nullopt;
        return std::make_pair(lo, payload(max_leaf(x)));
    }

    /// Visits payloads in key order.
    template<typename F>
    void for_each(Ref root, F&& f) const {
        if(root == kEmpty) return;
        std::vector<Ref> stack{root};
        while(!stack.empty()) {
            Ref const x = stack.back();
            stack.pop_back();
            if(is_leaf(x)) {
                f(payload(x));
            } else {
                stack.push_back(nodes_[x].child[1]);
                stack.push_back(nodes_[x].child[0]);
            }
        }
    }

    std::size_t node_count() const { return nodes_.size(); }

private:
    static constexpr Ref kLeafBit = 1u << 31;

    struct Node {
        std::uint8_t bit = 0;
        Ref child[2] = {kEmpty, kEmpty};
    };

    static bool is_leaf(Ref x) { return (x & kLeafBit) != 0; }
    static Ref leaf_ref(Payload p) { return p | kLeafBit; }
    static Payload payload(Ref x) { return x & ~kLeafBit; }

    unsigned bit_of(std::uint64_t key, unsigned i) const { return (key >> (width_ - 1 - i)) & 1; }

    Ref min_leaf(Ref x) const {
        while(!is_leaf(x)) x = nodes_[x].child[0];
        return x;
    }
    Ref max_leaf(Ref x) const {
        while(!is_leaf(x)) x = nodes_[x].child[1];
        return x;
    }

    unsigned width_ = 1;
    std::vector<Node> nodes_;
};

} // namespace onlz
