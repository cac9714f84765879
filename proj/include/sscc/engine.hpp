#pragma once

#include "sscc/agent.hpp"
#include "sscc/command.hpp"
#include "sscc/formula.hpp"
#include "sscc/heap.hpp"
#include "sscc/random.hpp"
#include "sscc/rational.hpp"
#include "sscc/solver.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sscc {

// The four per-agent duration maps: how long a tell, an ask, a move into a
// child space, and an extrusion take at each agent. Unmapped agents inherit
// from their nearest mapped ancestor, or fall back to Norm(1.0, 0.2).
struct TimeMaps {
    using Map = std::map<AgentId, StochasticExpression, AgentIdLess>;
    Map tell, ask, space, extrusion;
};

struct SimulationState {
    TimeValue gtime;
    Heap pqueue;
    Heap pend;
    std::uint64_t next_id = 1;
    SampleCounter counter;
    bool flag = false;
    TimeMaps maps;
    mpq_class factor = 1; // multiplies size(store) in the ask delay
    TimeValue max_time;
    // When set, a searching watch weighs its moves exactly 1/n each instead
    // of normalizing n random draws (and consumes no counter indices for
    // them). Off by default; provided for comparing the two policies.
    bool uniform_search = false;
};

struct Configuration {
    std::vector<AgentObject> agents;
    std::vector<ProcessObject> processes;
    SimulationState sim;
};

// One rule application (or clock advance, for rule = "tick").
struct TraceEvent {
    std::string rule;
    std::uint64_t uid = 0; // the scheduled process (tick: the consumed entry)
    TimeValue gtime;       // clock when the event was recorded
    AgentId location;
    std::string detail;                  // formula/target/child index/duration
    int chosen_index = -1;               // exclusive: selected branch
    std::vector<int> included_indices;   // independent: selected branches
    std::vector<std::uint64_t> spawned;  // uids of processes actually created
};

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nearest mapped expression walking toward the root; Norm(1.0, 0.2) when the
// root itself is unmapped.
const StochasticExpression& get_ancestor(const TimeMaps::Map& tm, const AgentId& loc);

// One draw from the map at loc (with the Norm(1.0, 0.2) fallback).
std::pair<TimeValue, SampleCounter> f_time(const TimeMaps::Map& tm, const AgentId& loc,
                                           SampleCounter counter);

// Duration of executing a command at loc: Tell and TellChild draw from the
// tell map, In from the space map, Out from the extrusion map; every other
// command costs zero time and leaves the counter untouched.
std::pair<TimeValue, SampleCounter> get_time_cmd(const CommandPtr& c, const AgentId& loc,
                                                 const TimeMaps& maps,
                                                 SampleCounter counter);

SatProcedure internal_sat();

// Applies exactly one rule to the process whose uid sits at the schedule
// root. Every branch except delay leaves that root entry in place (tick
// removes it) and raises the flag. Throws EngineError when the configuration
// is stuck: a scheduled uid with no process object, a bare recursion
// variable, an extrusion whose index does not match its location, or a
// searching watch with nowhere to move.
TraceEvent step(Configuration& c, const SatProcedure& sat);

// Advances the clock by the root entry's time, removes it, rebases the rest,
// and drains the pending heap back in unshifted.
TraceEvent tick(Configuration& c);

enum class StopReason { Quiescent, TimeBound, StepBound };

std::string stop_reason_str(StopReason r);

struct RunResult {
    Configuration config;
    std::vector<TraceEvent> trace;
    StopReason reason = StopReason::Quiescent;
    std::uint64_t steps = 0;
};

// Observer sees the configuration right after each event (step or tick) has
// been applied and recorded.
using RunObserver = std::function<void(const Configuration&, const TraceEvent&)>;

// Alternates step and tick until the schedule drains (quiescence), the next
// tick would push gtime past max_time, or max_steps rule applications have
// fired (0 = unbounded; guards non-consuming recursion loops).
RunResult run(Configuration c, const SatProcedure& sat, std::uint64_t max_steps = 0,
              const RunObserver& observer = nullptr);

} // namespace sscc
