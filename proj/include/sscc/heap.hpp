#pragma once

#include "sscc/rational.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace sscc {

struct ScheduleEntry {
    TimeValue time;
    std::uint64_t uid = 0;

    bool operator==(const ScheduleEntry& o) const {
        return time == o.time && uid == o.uid;
    }
};

// Persistent leftist min-heap keyed on time ONLY. Entries with equal times
// are never ordered by uid: merge prefers the second heap's root on ties, so
// equal-time determinism comes purely from insertion order. Structural
// sharing makes delta/merge cheap to snapshot.
struct HeapNode;
using Heap = std::shared_ptr<const HeapNode>;

struct HeapNode {
    int rank = 1; // length of the rightmost spine; empty heap has rank 0
    ScheduleEntry entry;
    Heap left, right;
};

inline bool heap_is_empty(const Heap& h) { return h == nullptr; }

Heap heap_merge(const Heap& a, const Heap& b);
Heap heap_insert(const ScheduleEntry& e, const Heap& h);

// Root entry; throws std::logic_error on an empty heap.
const ScheduleEntry& heap_find_min(const Heap& h);
Heap heap_delete_min(const Heap& h);

// Same shape, every time decreased by t (saturating at zero).
Heap heap_delta(const Heap& h, const TimeValue& t);

std::size_t heap_size(const Heap& h);

// Repeated delete_min; used by dumps and the structural test oracle.
std::vector<ScheduleEntry> heap_sorted(const Heap& h);

// Audits the leftist-rank invariant and the min-heap order; test support.
bool heap_valid(const Heap& h);

} // namespace sscc
