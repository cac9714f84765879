#pragma once

#include "sscc/specfile.hpp"

#include <cstdint>

namespace sscc {

// Ready-made systems used by the unit tests, the acceptance audit and the
// command-line examples. Every constructor is pure: it assembles a
// SystemSpec in memory. The .sscc files shipped under fixtures/ are the
// render_spec output of these builders, and the tests check both directions.

// A host with three nested containers and constant per-space durations. A
// guard in space 0 reacts to X > 2 by extruding a bound on Y that descends
// into space 0.1; a second process posts Z != 10 inside space 2. Runs to
// quiescence deterministically (no distribution is sampled, no choice is
// taken), reaching its final state in exactly 13/5 time units.
SystemSpec fixture_container();

// Task assignment over two worker groups: an exclusive 0.60/0.40 choice
// between two encodings of group 1's pipeline (the first of which assigns
// four subtasks by independent 0.5 inclusions), in parallel with group 2's
// three workers and a completion detector that posts DONE at the root.
// Normally distributed durations, penalty factor 1/2.
SystemSpec fixture_tasks();

// The two-level inference chain: W == 5 told two levels down triggers
// Y == 32 beside it, knowledge extrudes upward level by level until X >= 10
// reaches the root and a detector posts DONE. The root store is a parameter:
// start it at X < 5 to drive the root inconsistent when X >= 10 arrives, or
// at `true` to observe plain derived knowledge.
SystemSpec fixture_inference_chain(FormulaPtr root_store);

// How the random hierarchy for the searching-agent case picks the one agent
// whose store gets the target formula.
enum class TargetSeeding {
    DeepestLeaf, // endpoint of the first-child spine (hand-traceable)
    RandomAgent, // seeded uniform pick among all non-root agents
};

struct HierarchyGenSpec {
    unsigned depth = 3; // levels below the root; must be >= 1
    // Child count per node, rounded to the nearest natural number.
    StochasticExpression branching = StochasticExpression::constant(2);
    TargetSeeding seeding = TargetSeeding::DeepestLeaf;
    std::uint64_t seed = 0;
};

// The formula the searching agent looks for and the one it posts on success.
FormulaPtr robot_target();
FormulaPtr robot_warning();

// Builds a seeded random space hierarchy from `gen`, plants robot_target()
// on exactly one agent, and places a single watch(tell(warning), target)
// process at the root. All four duration maps are the constant 1 at the
// root (spaces the walk enters inherit them), the penalty factor is 0 and
// the horizon is 10^4, so runs are unit-timed random walks.
//
// Generation is a seeded recursion: each node draws its child count from
// the branching law, truncated at the depth bound; the first-child spine is
// forced to exist all the way down, so the tree always has the requested
// depth. Throws std::invalid_argument when gen.depth == 0.
SystemSpec fixture_robot(const HierarchyGenSpec& gen);

} // namespace sscc
