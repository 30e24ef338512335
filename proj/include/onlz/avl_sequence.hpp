#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

namespace onlz {

/// \brief Height-balanced binary tree over a sequence of items (in-order),
/// with a per-subtree summary.
///
/// \p Summary must provide a static `of(Item const&)` and an associative
/// `operator+`, with a default-constructed value as identity. Handles are
/// stable indices; nodes are never removed.
template<typename Item, typename Summary>
class AvlSequence {
public:
    using Handle = std::uint32_t;
    static constexpr Handle kNil = std::numeric_limits<Handle>::max();

    struct Node {
        Item item;
        Summary sum;
        Handle left = kNil;
        Handle right = kNil;
        Handle parent = kNil;
        std::int32_t height = 1;
    };

    Handle root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }

    Node const& node(Handle h) const { return nodes_[h]; }
    Item const& item(Handle h) const { return nodes_[h].item; }

    /// Mutable item access; call refresh(h) after changing it.
    Item& item(Handle h) { return nodes_[h].item; }

    Summary total() const { return root_ == kNil ? Summary{} : nodes_[root_].sum; }

    /// Subtree summary of \p h, identity for kNil.
    Summary sum(Handle h) const { return h == kNil ? Summary{} : nodes_[h].sum; }

    void reserve(std::size_t n) { nodes_.reserve(n); }

    /// Inserts \p item as the first element of the sequence.
    Handle push_front(Item item) {
        if(root_ == kNil) return make_root(std::move(item));
        Handle x = root_;
        while(nodes_[x].left != kNil) x = nodes_[x].left;
        return attach(x, true, std::move(item));
    }

    Handle push_back(Item item) {
        if(root_ == kNil) return make_root(std::move(item));
        Handle x = root_;
        while(nodes_[x].right != kNil) x = nodes_[x].right;
        return attach(x, false, std::move(item));
    }

    /// Inserts \p item immediately after \p pos in sequence order.
    Handle insert_after(Handle pos, Item item) {
        if(nodes_[pos].right == kNil) return attach(pos, false, std::move(item));
        Handle x = nodes_[pos].right;
        while(nodes_[x].left != kNil) x = nodes_[x].left;
        return attach(x, true, std::move(item));
    }

    /// Inserts \p item immediately before \p pos in sequence order.
    Handle insert_before(Handle pos, Item item) {
        if(nodes_[pos].left == kNil) return attach(pos, true, std::move(item));
        Handle x = nodes_[pos].left;
        while(nodes_[x].right != kNil) x = nodes_[x].right;
        return attach(x, false, std::move(item));
    }

    /// Summary of all items strictly before \p h.
    Summary prefix_before(Handle h) const {
        Summary acc = sum(nodes_[h].left);
        Handle x = h;
        while(nodes_[x].parent != kNil) {
            Handle const p = nodes_[x].parent;
            if(nodes_[p].right == x) acc = sum(nodes_[p].left) + Summary::of(nodes_[p].item) + acc;
            x = p;
        }
        return acc;
    }

    /// Summary of all items up to and including \p h.
    Summary prefix_through(Handle h) const { return prefix_before(h) + Summary::of(nodes_[h].item); }

    /// Recomputes summaries from \p h up to the root after an item change.
    void refresh(Handle h) {
        for(Handle x = h; x != kNil; x = nodes_[x].parent) pull(x);
    }

    /// Tree height, 0 for an empty tree.
    std::int32_t height() const { return root_ == kNil ? 0 : nodes_[root_].height; }

    /// Visits items in sequence order.
    template<typename F>
    void for_each(F&& f) const {
        std::vector<Handle> stack;
        Handle x = root_;
        while(x != kNil || !stack.empty()) {
            while(x != kNil) {
                stack.push_back(x);
                x = nodes_[x].left;
            }
            x = stack.back();
            stack.pop_back();
            f(x, nodes_[x].item);
            x = nodes_[x].right;
        }
    }

private:
    std::int32_t h(Handle x) const { return x == kNil ? 0 : nodes_[x].height; }

    void pull(Handle x) {
        Node& n = nodes_[x];
        n.sum = sum(n.left) + Summary::of(n.item) + sum(n.right);
        n.height = 1 + std::max(h(n.left), h(n.right));
    }

    Handle make_root(Item item) {
        Handle const x = static_cast<Handle>(nodes_.size());
        nodes_.push_back(Node{std::move(item), Summary{}, kNil, kNil, kNil, 1});
        pull(x);
        root_ = x;
        return x;
    }

    Handle attach(Handle parent, bool as_left, Item item) {
        Handle const x = static_cast<Handle>(nodes_.size());
        nodes_.push_back(Node{std::move(item), Summary{}, kNil, kNil, parent, 1});
        pull(x);
        if(as_left) nodes_[parent].left = x;
        else nodes_[parent].right = x;
        rebalance_from(parent);
        return x;
    }

    void replace_child(Handle parent, Handle old_child, Handle new_child) {
        if(parent == kNil) root_ = new_child;
        else if(nodes_[parent].left == old_child) nodes_[parent].left = new_child;
        else nodes_[parent].right = new_child;
        if(new_child != kNil) nodes_[new_child].parent = parent;
    }

    // x's right child y becomes the subtree root
    Handle rotate_left(Handle x) {
        Handle const y = nodes_[x].right;
        Handle const b = nodes_[y].left;
        replace_child(nodes_[x].parent, x, y);
        nodes_[x].right = b;
        if(b != kNil) nodes_[b].parent = x;
        nodes_[y].left = x;
        nodes_[x].parent = y;
        pull(x);
        pull(y);
        return y;
    }

    Handle rotate_right(Handle x) {
        Handle const y = nodes_[x].left;
        Handle const b = nodes_[y].right;
        replace_child(nodes_[x].parent, x, y);
        nodes_[x].left = b;
        if(b != kNil) nodes_[b].parent = x;
        nodes_[y].right = x;
        nodes_[x].parent = y;
        pull(x);
        pull(y);
        return y;
    }

    void rebalance_from(Handle x) {
        while(x != kNil) {
            pull(x);
            std::int32_t const bal = h(nodes_[x].left) - h(nodes_[x].right);
            if(bal > 1) {
                Handle const l = nodes_[x].left;
                if(h(nodes_[l].left) < h(nodes_[l].right)) rotate_left(l);
                x = rotate_right(x);
            } else if(bal < -1) {
                Handle const r = nodes_[x].right;
                if(h(nodes_[r].right) < h(nodes_[r].left)) rotate_right(r);
                x = rotate_left(x);
            }
            x = nodes_[x].parent;
        }
    }

    std::vector<Node> nodes_;
    Handle root_ = kNil;
};

} // namespace onlz
