#pragma once

#include "sscc/solver.hpp"
#include "sscc/specfile.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sscc {

// ---------------------------------------------------------------------------
// Run observables: what one terminated simulation is worth as a number.

enum class ObservableKind {
    ExecutionTime,       // final global clock
    StorePredicateHolds, // 1 when the chosen store entails a formula, else 0
    AgentCount,          // number of spaces at the end of the run
    UserTagged,          // caller-supplied extractor
};

struct Observable {
    ObservableKind kind = ObservableKind::ExecutionTime;

    // StorePredicateHolds: the agent whose store is tested; empty means
    // "any agent's store entails it".
    std::optional<AgentId> agent;
    FormulaPtr formula;

    std::string name; // UserTagged label
    std::function<double(const Configuration&)> extractor;

    static Observable execution_time();
    static Observable store_holds(std::optional<AgentId> agent, FormulaPtr f);
    static Observable agent_count();
    static Observable user(std::string name,
                           std::function<double(const Configuration&)> fn);

    std::string label() const;
};

double evaluate_observable(const Observable& o, const Configuration& final_config,
                           const SatProcedure& sat);

// ---------------------------------------------------------------------------
// Confidence-interval estimation over independent seeded runs.

struct EstimateParams {
    double alpha = 0.05;              // interval level is (1 - alpha)
    double delta = 0.1;               // stop once interval width <= delta
    std::uint64_t batch = 30;         // samples between convergence checks, >= 2
    std::uint64_t max_samples = 100000;
    unsigned jobs = 1; // worker threads per batch; the SatProcedure must be
                       // thread-safe when > 1. Results do not depend on jobs.
};

struct EstimationResult {
    double mean = 0;
    double half_width = 0;
    std::uint64_t samples = 0;
    double alpha = 0;
    double delta = 0;
    bool converged = false; // half_width <= delta/2 reached within max_samples
};

// Student-t (1 - alpha) confidence half-width around the sample mean.
// Requires xs.size() >= 2; a zero-variance sample yields half-width 0.
std::pair<double, double> mean_half_width(const std::vector<double>& xs, double alpha);

// Runs independent simulations of `model` with seeds model.seed,
// model.seed + 1, ..., evaluating `obs` on each terminal configuration.
// After every batch the Student-t interval of the running sample is
// computed; estimation stops as soon as its width is at most delta, or
// flags non-convergence once max_samples runs are spent. Identical inputs
// give identical results. Throws std::invalid_argument on parameters
// outside their documented ranges.
EstimationResult estimate(const SystemSpec& model, const Observable& obs,
                          const SatProcedure& sat, const EstimateParams& params);

// ---------------------------------------------------------------------------
// Trace scanning: evaluate a state predicate on every post-step state of a
// batch of seeded runs. A testing aid, not exhaustive reachability analysis:
// it only sees states the chosen seeds actually visit.

enum class PredicateKind {
    InconsistentStore, // some store is unsatisfiable
    StoreEntails,      // some store entails a given formula
    EquivalentStores,  // two distinct agents, both stores not literally
                       // `true`, each entailing the other
    Custom,            // caller-supplied test over one store or a store pair
};

struct StatePredicate {
    PredicateKind kind = PredicateKind::InconsistentStore;

    FormulaPtr formula; // StoreEntails target

    // Custom: either a one-store test, a two-store test over ordered pairs,
    // or both. Matching agents become the witnesses.
    std::function<bool(const AgentObject&)> test_one;
    std::function<bool(const AgentObject&, const AgentObject&)> test_pair;

    static StatePredicate inconsistent_store();
    static StatePredicate store_entails(FormulaPtr f);
    static StatePredicate equivalent_stores();
    static StatePredicate custom(std::function<bool(const AgentObject&)> one,
                                 std::function<bool(const AgentObject&, const AgentObject&)>
                                     pair = nullptr);

    std::string label() const;
};

struct ScanMatch {
    std::uint64_t seed = 0;
    std::size_t event_index = 0; // index into that run's trace
    std::string rule;            // rule applied by the matching step
    TimeValue gtime;
    std::vector<AgentObject> witnesses; // the matching agent(s)
    std::vector<AgentObject> state;     // full agent snapshot at the match
};

// Runs `model` once per seed (overriding the horizon when `max_time` is
// given) and evaluates `pred` after every step; clock advances change no
// store and are skipped. Returns every match in seed order, then trace
// order. Never mutates `model`; scanning twice yields identical matches.
std::vector<ScanMatch> scan(const SystemSpec& model,
                            const std::vector<std::uint64_t>& seeds,
                            const StatePredicate& pred, const SatProcedure& sat,
                            std::optional<TimeValue> max_time = std::nullopt);

} // namespace sscc
