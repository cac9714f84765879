#pragma once

#include "sscc/formula.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sscc {

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

// Hierarchical space address: the path of child indices from the agent up to
// the root, innermost index first. The empty path is the root itself, so
// "3.1.root" is {3, 1}: child 3 of child 1 of the root.
struct AgentId {
    std::vector<unsigned> path;

    static AgentId root() { return {}; }

    static AgentId of(std::initializer_list<unsigned> innermost_first) {
        AgentId a;
        a.path.assign(innermost_first);
        return a;
    }

    bool is_root() const { return path.empty(); }

    // n . this — one level deeper.
    AgentId child(unsigned n) const {
        AgentId a;
        a.path.reserve(path.size() + 1);
        a.path.push_back(n);
        a.path.insert(a.path.end(), path.begin(), path.end());
        return a;
    }

    // Drops the innermost index; precondition: not the root.
    AgentId parent() const {
        AgentId a;
        a.path.assign(path.begin() + 1, path.end());
        return a;
    }

    // Number of components including the root marker.
    std::size_t depth() const { return path.size() + 1; }

    bool operator==(const AgentId& o) const { return path == o.path; }
    bool operator!=(const AgentId& o) const { return path != o.path; }

    std::string str() const;
    static AgentId parse(const std::string& text);
};

// Component count including the root marker (same as depth; provided as the
// store-independent size measure used by the ask cost model's sibling ops).
std::size_t size_aid(const AgentId& a);

// a is an ancestor of b or equal to it: a's path is a suffix of b's.
bool is_prefix(const AgentId& a, const AgentId& b);

// a is a direct child of b: a = n.b for some n.
bool is_son(const AgentId& a, const AgentId& b);

// Deterministic ordering: outermost-first lexicographic, so a parent sorts
// immediately before its subtree.
struct AgentIdLess {
    bool operator()(const AgentId& a, const AgentId& b) const {
        auto ia = a.path.rbegin(), ib = b.path.rbegin();
        for (; ia != a.path.rend() && ib != b.path.rend(); ++ia, ++ib) {
            if (*ia != *ib)
                return *ia < *ib;
        }
        return a.path.size() < b.path.size();
    }
};

// A space: its address, the constraint store accumulated so far, and the set
// of registered child indices. Stores only ever grow by conjunction.
struct AgentObject {
    AgentId id;
    FormulaPtr store;
    std::set<unsigned> children;
};

struct ProcessObject {
    AgentId location;
    std::uint64_t uid = 0;
    CommandPtr command;
};

// Merges duplicate agent objects (stores conjoined, child sets unioned),
// drops processes whose command is nil, and sorts agents by address.
// Idempotent.
void normalize_objects(std::vector<AgentObject>& agents,
                       std::vector<ProcessObject>& processes);

AgentObject* find_agent(std::vector<AgentObject>& agents, const AgentId& id);
const AgentObject* find_agent(const std::vector<AgentObject>& agents,
                              const AgentId& id);

// Returns the agent at `id`, creating it with a true store and no children
// when absent (agents come into being lazily the first time something
// executes at their address).
AgentObject& ensure_agent(std::vector<AgentObject>& agents, const AgentId& id);

} // namespace sscc
