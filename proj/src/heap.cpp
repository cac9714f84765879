#include "sscc/heap.hpp"

#include <stdexcept>

namespace sscc {
namespace {

int rank_of(const Heap& h) { return h ? h->rank : 0; }

// Keeps the leftist property: the left child's rank never falls below the
// right child's; the node's own rank is one more than its right child's.
Heap make_node(const ScheduleEntry& e, const Heap& l, const Heap& r) {
    auto n = std::make_shared<HeapNode>();
    n->entry = e;
    if (rank_of(l) >= rank_of(r)) {
        n->rank = rank_of(r) + 1;
        n->left = l;
        n->right = r;
    } else {
        n->rank = rank_of(l) + 1;
        n->left = r;
        n->right = l;
    }
    return n;
}

} // namespace

Heap heap_merge(const Heap& a, const Heap& b) {
    if (!a)
        return b;
    if (!b)
        return a;
    // Strict comparison on time only: equal roots keep the second heap's
    // root on top, which is what makes insertion order the tie-breaker.
    if (a->entry.time < b->entry.time)
        return make_node(a->entry, a->left, heap_merge(a->right, b));
    return make_node(b->entry, b->left, heap_merge(a, b->right));
}

Heap heap_insert(const ScheduleEntry& e, const Heap& h) {
    auto single = std::make_shared<HeapNode>();
    single->entry = e;
    return heap_merge(single, h);
}

const ScheduleEntry& heap_find_min(const Heap& h) {
    if (!h)
        throw std::logic_error("find_min on empty heap");
    return h->entry;
}

Heap heap_delete_min(const Heap& h) {
    if (!h)
        throw std::logic_error("delete_min on empty heap");
    return heap_merge(h->left, h->right);
}

Heap heap_delta(const Heap& h, const TimeValue& t) {
    if (!h)
        return h;
    auto n = std::make_shared<HeapNode>();
    n->rank = h->rank;
    n->entry = ScheduleEntry{h->entry.time.monus(t), h->entry.uid};
    n->left = heap_delta(h->left, t);
    n->right = heap_delta(h->right, t);
    return n;
}

std::size_t heap_size(const Heap& h) {
    return h ? 1 + heap_size(h->left) + heap_size(h->right) : 0;
}

std::vector<ScheduleEntry> heap_sorted(const Heap& h) {
    std::vector<ScheduleEntry> out;
    for (Heap cur = h; cur; cur = heap_delete_min(cur))
        out.push_back(cur->entry);
    return out;
}

bool heap_valid(const Heap& h) {
    if (!h)
        return true;
    if (h->rank != rank_of(h->right) + 1)
        return false;
    if (rank_of(h->left) < rank_of(h->right))
        return false;
    if (h->left && h->left->entry.time < h->entry.time)
        return false;
    if (h->right && h->right->entry.time < h->entry.time)
        return false;
    return heap_valid(h->left) && heap_valid(h->right);
}

} // namespace sscc
