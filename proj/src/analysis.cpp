#include "sscc/analysis.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <stdexcept>
#include <thread>

namespace sscc {

// --------------------------------------------------------------------------
// Observables

Observable Observable::execution_time() { return {}; }

Observable Observable::store_holds(std::optional<AgentId> agent, FormulaPtr f) {
    Observable o;
    o.kind = ObservableKind::StorePredicateHolds;
    o.agent = std::move(agent);
    o.formula = std::move(f);
    return o;
}

Observable Observable::agent_count() {
    Observable o;
    o.kind = ObservableKind::AgentCount;
    return o;
}

Observable Observable::user(std::string name,
                            std::function<double(const Configuration&)> fn) {
    Observable o;
    o.kind = ObservableKind::UserTagged;
    o.name = std::move(name);
    o.extractor = std::move(fn);
    return o;
}

std::string Observable::label() const {
    switch (kind) {
    case ObservableKind::ExecutionTime:
        return "execution-time";
    case ObservableKind::StorePredicateHolds:
        return "store-holds(" + (agent ? agent->str() : std::string("any")) + ", " +
               render_formula(formula) + ")";
    case ObservableKind::AgentCount:
        return "agent-count";
    case ObservableKind::UserTagged:
        return name;
    }
    return {};
}

double evaluate_observable(const Observable& o, const Configuration& final_config,
                           const SatProcedure& sat) {
    switch (o.kind) {
    case ObservableKind::ExecutionTime:
        return final_config.sim.gtime.to_double();

    case ObservableKind::StorePredicateHolds: {
        if (!o.formula)
            throw std::invalid_argument("store-holds observable without a formula");
        if (o.agent) {
            const AgentObject* a = find_agent(final_config.agents, *o.agent);
            return a && entails_with(sat, a->store, o.formula) ? 1.0 : 0.0;
        }
        for (const AgentObject& a : final_config.agents)
            if (entails_with(sat, a.store, o.formula))
                return 1.0;
        return 0.0;
    }

    case ObservableKind::AgentCount:
        return static_cast<double>(final_config.agents.size());

    case ObservableKind::UserTagged:
        if (!o.extractor)
            throw std::invalid_argument("tagged observable without an extractor");
        return o.extractor(final_config);
    }
    return 0.0;
}

// --------------------------------------------------------------------------
// Estimation

std::pair<double, double> mean_half_width(const std::vector<double>& xs, double alpha) {
    if (xs.size() < 2)
        throw std::invalid_argument("confidence interval needs at least two samples");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");

    const double n = static_cast<double>(xs.size());
    double mean = 0;
    for (double x : xs)
        mean += x;
    mean /= n;

    double ss = 0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0)
        return {mean, 0.0};

    boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(dist, 1.0 - alpha / 2.0);
    return {mean, t * sd / std::sqrt(n)};
}

namespace {

double one_sample(const SystemSpec& model, std::uint64_t seed, const Observable& obs,
                  const SatProcedure& sat) {
    SystemSpec m = model;
    m.seed = seed;
    RunResult r = run(to_configuration(m), sat);
    return evaluate_observable(obs, r.config, sat);
}

} // namespace

EstimationResult estimate(const SystemSpec& model, const Observable& obs,
                          const SatProcedure& sat, const EstimateParams& params) {
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw std::invalid_argument("estimate: alpha must lie in (0, 1)");
    if (!(params.delta > 0.0))
        throw std::invalid_argument("estimate: delta must be positive");
    if (params.batch < 2)
        throw std::invalid_argument("estimate: batch must be at least 2");
    if (params.max_samples < params.batch)
        throw std::invalid_argument("estimate: max_samples smaller than one batch");

    EstimationResult res;
    res.alpha = params.alpha;
    res.delta = params.delta;

    std::vector<double> xs;
    xs.reserve(params.batch);

    while (xs.size() < params.max_samples) {
        const std::size_t from = xs.size();
        const std::size_t upto = static_cast<std::size_t>(
            std::min<std::uint64_t>(params.max_samples, from + params.batch));
        xs.resize(upto);

        if (params.jobs <= 1) {
            for (std::size_t i = from; i < upto; ++i)
                xs[i] = one_sample(model, model.seed + i, obs, sat);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < params.jobs; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = from + w; i < upto; i += params.jobs)
                        xs[i] = one_sample(model, model.seed + i, obs, sat);
                });
            }
            for (std::thread& t : pool)
                t.join();
        }

        auto [mean, half] = mean_half_width(xs, params.alpha);
        res.mean = mean;
        res.half_width = half;
        res.samples = xs.size();
        if (2.0 * half <= params.delta) {
            res.converged = true;
            break;
        }
    }
    return res;
}

// --------------------------------------------------------------------------
// Scanning

StatePredicate StatePredicate::inconsistent_store() { return {}; }

StatePredicate StatePredicate::store_entails(FormulaPtr f) {
    StatePredicate p;
    p.kind = PredicateKind::StoreEntails;
    p.formula = std::move(f);
    return p;
}

StatePredicate StatePredicate::equivalent_stores() {
    StatePredicate p;
    p.kind = PredicateKind::EquivalentStores;
    return p;
}

StatePredicate StatePredicate::custom(
    std::function<bool(const AgentObject&)> one,
    std::function<bool(const AgentObject&, const AgentObject&)> pair) {
    StatePredicate p;
    p.kind = PredicateKind::Custom;
    p.test_one = std::move(one);
    p.test_pair = std::move(pair);
    return p;
}

std::string StatePredicate::label() const {
    switch (kind) {
    case PredicateKind::InconsistentStore:
        return "inconsistent-store";
    case PredicateKind::StoreEntails:
        return "store-entails(" + render_formula(formula) + ")";
    case PredicateKind::EquivalentStores:
        return "equivalent-stores";
    case PredicateKind::Custom:
        return "custom";
    }
    return {};
}

namespace {

bool literally_true(const FormulaPtr& f) { return f && f->kind == FKind::True; }

// Matching agents of one state, in agent order; pair predicates witness both
// members in order.
std::vector<AgentObject> predicate_witnesses(const StatePredicate& pred,
                                             const Configuration& c,
                                             const SatProcedure& sat) {
    std::vector<AgentObject> out;
    switch (pred.kind) {
    case PredicateKind::InconsistentStore:
        for (const AgentObject& a : c.agents)
            if (check_unsat_with(sat, a.store) == std::optional<bool>(true))
                out.push_back(a);
        break;

    case PredicateKind::StoreEntails:
        if (!pred.formula)
            throw std::invalid_argument("store-entails predicate without a formula");
        for (const AgentObject& a : c.agents)
            if (entails_with(sat, a.store, pred.formula))
                out.push_back(a);
        break;

    case PredicateKind::EquivalentStores:
        for (std::size_t i = 0; i < c.agents.size(); ++i) {
            if (literally_true(c.agents[i].store))
                continue;
            for (std::size_t j = i + 1; j < c.agents.size(); ++j) {
                if (literally_true(c.agents[j].store))
                    continue;
                if (entails_with(sat, c.agents[i].store, c.agents[j].store) &&
                    entails_with(sat, c.agents[j].store, c.agents[i].store)) {
                    out.push_back(c.agents[i]);
                    out.push_back(c.agents[j]);
                }
            }
        }
        break;

    case PredicateKind::Custom:
        if (pred.test_one)
            for (const AgentObject& a : c.agents)
                if (pred.test_one(a))
                    out.push_back(a);
        if (pred.test_pair)
            for (std::size_t i = 0; i < c.agents.size(); ++i)
                for (std::size_t j = i + 1; j < c.agents.size(); ++j)
                    if (pred.test_pair(c.agents[i], c.agents[j])) {
                        out.push_back(c.agents[i]);
                        out.push_back(c.agents[j]);
                    }
        break;
    }
    return out;
}

} // namespace

std::vector<ScanMatch> scan(const SystemSpec& model,
                            const std::vector<std::uint64_t>& seeds,
                            const StatePredicate& pred, const SatProcedure& sat,
                            std::optional<TimeValue> max_time) {
    std::vector<ScanMatch> matches;
    for (std::uint64_t seed : seeds) {
        SystemSpec m = model;
        m.seed = seed;
        if (max_time)
            m.max_time = *max_time;

        std::size_t index = 0;
        RunObserver watcher = [&](const Configuration& c, const TraceEvent& ev) {
            const std::size_t here = index++;
            if (ev.rule == "tick")
                return;
            std::vector<AgentObject> ws = predicate_witnesses(pred, c, sat);
            if (ws.empty())
                return;
            ScanMatch match;
            match.seed = seed;
            match.event_index = here;
            match.rule = ev.rule;
            match.gtime = c.sim.gtime;
            match.witnesses = std::move(ws);
            match.state = c.agents;
            matches.push_back(std::move(match));
        };
        run(to_configuration(m), sat, 0, watcher);
    }
    return matches;
}

} // namespace sscc
