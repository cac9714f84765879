#include "sscc/engine.hpp"

#include <algorithm>
#include <utility>

namespace sscc {
namespace {

const StochasticExpression& default_duration() {
    static const StochasticExpression d = StochasticExpression::norm(1.0, 0.2);
    return d;
}

ProcessObject* find_process(Configuration& c, std::uint64_t uid) {
    for (auto& p : c.processes)
        if (p.uid == uid)
            return &p;
    return nullptr;
}

AgentObject& agent_at(Configuration& c, const AgentId& loc) {
    AgentObject* ag = find_agent(c.agents, loc);
    if (!ag)
        throw EngineError("no agent object at " + loc.str());
    return *ag;
}

// Creates the process object and schedules its entry in the pending heap.
// Nil commands are neither spawned nor scheduled: their object would be
// erased by normalization while the entry stayed behind as a permanently
// stuck schedule root. The caller still burns the uid, keeping the numbering
// aligned with configurations that spawn something real there.
void spawn_scheduled(Configuration& c, const AgentId& loc, std::uint64_t uid,
                     const CommandPtr& cmd, const TimeValue& when, TraceEvent& ev) {
    if (cmd->kind == CKind::Nil)
        return;
    c.processes.push_back(ProcessObject{loc, uid, cmd});
    c.sim.pend = heap_insert(ScheduleEntry{when, uid}, c.sim.pend);
    ev.spawned.push_back(uid);
}

} // namespace

const StochasticExpression& get_ancestor(const TimeMaps::Map& tm, const AgentId& loc) {
    auto it = tm.find(loc);
    if (it != tm.end())
        return it->second;
    if (loc.is_root())
        return default_duration();
    return get_ancestor(tm, loc.parent());
}

std::pair<TimeValue, SampleCounter> f_time(const TimeMaps::Map& tm, const AgentId& loc,
                                           SampleCounter counter) {
    auto it = tm.find(loc);
    const StochasticExpression& e = (it != tm.end()) ? it->second : default_duration();
    return sample_time(e, counter);
}

std::pair<TimeValue, SampleCounter> get_time_cmd(const CommandPtr& c, const AgentId& loc,
                                                 const TimeMaps& maps,
                                                 SampleCounter counter) {
    switch (c->kind) {
        case CKind::Tell:
        case CKind::TellChild:
            return f_time(maps.tell, loc, counter);
        case CKind::In:
            return f_time(maps.space, loc, counter);
        case CKind::Out:
            return f_time(maps.extrusion, loc, counter);
        default:
            return {TimeValue(), counter};
    }
}

SatProcedure internal_sat() {
    return [](const FormulaPtr& f) { return check_sat(f); };
}

TraceEvent step(Configuration& c, const SatProcedure& sat) {
    SimulationState& sim = c.sim;
    if (sim.flag)
        throw EngineError("step: flag already raised (tick missing)");
    if (heap_is_empty(sim.pqueue))
        throw EngineError("step: empty schedule");

    const ScheduleEntry root = heap_find_min(sim.pqueue);
    ProcessObject* proc = find_process(c, root.uid);
    if (!proc)
        throw EngineError("step: scheduled uid " + std::to_string(root.uid) +
                          " has no process object");
    const AgentId loc = proc->location;
    const CommandPtr cmd = proc->command;

    TraceEvent ev;
    ev.uid = root.uid;
    ev.gtime = sim.gtime;
    ev.location = loc;

    bool consumed = true;

    switch (cmd->kind) {
        case CKind::Tell: {
            AgentObject& ag = agent_at(c, loc);
            ag.store = conjoin(ag.store, cmd->formula);
            ev.rule = "tell";
            ev.detail = render_formula(cmd->formula);
            sim.flag = true;
            break;
        }

        case CKind::TellChild: {
            AgentObject& ag = agent_at(c, loc);
            ag.children.insert(cmd->n);
            ev.rule = "tell-child";
            ev.detail = std::to_string(cmd->n);
            sim.flag = true;
            break;
        }

        case CKind::Ask: {
            AgentObject& ag = agent_at(c, loc);
            if (entails_with(sat, ag.store, cmd->formula)) {
                auto [t0, c1] = get_time_cmd(cmd->a, loc, sim.maps, sim.counter);
                auto [t1, c2] = f_time(sim.maps.ask, loc, c1);
                sim.counter = c2;
                TimeValue penalty =
                    TimeValue(formula_size(ag.store), 1).scaled_by(sim.factor);
                TimeValue when = t0 + t1 + penalty;
                std::uint64_t n = sim.next_id++;
                spawn_scheduled(c, loc, n, cmd->a, when, ev);
                ev.rule = "ask";
                ev.detail = render_formula(cmd->formula);
                sim.flag = true;
            } else {
                sim.pqueue = heap_delete_min(sim.pqueue);
                sim.pend = heap_insert(root, sim.pend);
                ev.rule = "delay";
                ev.detail = render_formula(cmd->formula);
                consumed = false;
            }
            break;
        }

        case CKind::Par: {
            auto [t0, c1] = get_time_cmd(cmd->a, loc, sim.maps, sim.counter);
            auto [t1, c2] = get_time_cmd(cmd->b, loc, sim.maps, c1);
            sim.counter = c2;
            std::uint64_t n = sim.next_id;
            sim.next_id = n + 2;
            // The right operand's entry goes in first, so a time tie between
            // the two resolves to the right operand.
            spawn_scheduled(c, loc, n + 1, cmd->b, t1, ev);
            spawn_scheduled(c, loc, n, cmd->a, t0, ev);
            ev.rule = "parallel";
            sim.flag = true;
            break;
        }

        case CKind::Mu: {
            CommandPtr unfolded = replace(cmd->n, cmd->a, cmd);
            auto [t0, c1] = get_time_cmd(cmd->a, loc, sim.maps, sim.counter);
            sim.counter = c1;
            std::uint64_t n = sim.next_id++;
            spawn_scheduled(c, loc, n, unfolded, t0, ev);
            ev.rule = "recursion";
            ev.detail = "mu " + std::to_string(cmd->n);
            sim.flag = true;
            break;
        }

        case CKind::In: {
            agent_at(c, loc).children.insert(cmd->n);
            const AgentId child = loc.child(cmd->n);
            ensure_agent(c.agents, child);
            for (TimeMaps::Map* m :
                 {&sim.maps.tell, &sim.maps.ask, &sim.maps.space, &sim.maps.extrusion}) {
                StochasticExpression inherited = get_ancestor(*m, child);
                m->insert_or_assign(child, inherited);
            }
            auto [t0, c1] = get_time_cmd(cmd->a, child, sim.maps, sim.counter);
            auto [t1, c2] = get_time_cmd(c_tell_child(cmd->n), loc, sim.maps, c1);
            sim.counter = c2;
            std::uint64_t n = sim.next_id;
            sim.next_id = n + 2;
            spawn_scheduled(c, child, n, cmd->a, t0, ev);
            spawn_scheduled(c, loc, n + 1, c_tell_child(cmd->n), t1, ev);
            ev.rule = "space";
            ev.detail = child.str();
            sim.flag = true;
            break;
        }

        case CKind::Out: {
            if (loc.is_root() || loc.path.front() != cmd->n)
                throw EngineError("extrusion: out " + std::to_string(cmd->n) +
                                  " does not match location " + loc.str());
            const AgentId parent = loc.parent();
            auto [t0, c1] = get_time_cmd(cmd->a, parent, sim.maps, sim.counter);
            sim.counter = c1;
            std::uint64_t n = sim.next_id++;
            spawn_scheduled(c, parent, n, cmd->a, t0, ev);
            ev.rule = "extrusion";
            ev.detail = parent.str();
            sim.flag = true;
            break;
        }

        case CKind::Exc: {
            std::uint64_t n = sim.next_id;
            std::size_t i = 0;
            double cum = cmd->probs[0];
            TimeValue when;
            for (;;) {
                if (i + 1 == cmd->cmds.size()) {
                    // Last candidate standing is taken without a draw.
                    auto [t, c2] = get_time_cmd(cmd->cmds[i], loc, sim.maps, sim.counter);
                    sim.counter = c2;
                    when = t;
                    break;
                }
                auto [q, c1] = sample_prob(sim.counter);
                auto [t, c2] = get_time_cmd(cmd->cmds[i], loc, sim.maps, c1);
                sim.counter = c2;
                if (q <= cum) {
                    when = t;
                    break;
                }
                cum += cmd->probs[i + 1];
                ++i;
            }
            sim.next_id = n + 1;
            spawn_scheduled(c, loc, n, cmd->cmds[i], when, ev);
            ev.rule = "exclusive";
            ev.chosen_index = static_cast<int>(i);
            ev.detail = render_command(cmd->cmds[i]);
            sim.flag = true;
            break;
        }

        case CKind::Ind: {
            std::uint64_t n = sim.next_id;
            for (std::size_t i = 0; i < cmd->cmds.size(); ++i) {
                auto [q, c1] = sample_prob(sim.counter);
                auto [t, c2] = get_time_cmd(cmd->cmds[i], loc, sim.maps, c1);
                sim.counter = c2;
                if (q <= cmd->probs[i]) {
                    ev.included_indices.push_back(static_cast<int>(i));
                    spawn_scheduled(c, loc, n, cmd->cmds[i], t, ev);
                    ++n;
                }
            }
            sim.next_id = n;
            ev.rule = "independent";
            sim.flag = true;
            break;
        }

        case CKind::Watch: {
            AgentObject& ag = agent_at(c, loc);
            if (entails_with(sat, ag.store, cmd->formula)) {
                auto [t0, c1] = get_time_cmd(cmd->a, loc, sim.maps, sim.counter);
                sim.counter = c1;
                std::uint64_t n = sim.next_id++;
                spawn_scheduled(c, loc, n, cmd->a, t0, ev);
                ev.rule = "found";
                ev.detail = render_formula(cmd->formula);
            } else {
                auto moves = command_list(loc, ag.children, cmd);
                if (moves.empty())
                    throw EngineError("watch at " + loc.str() +
                                      " has nowhere to move (no parent, no children)");
                std::vector<double> lf;
                if (sim.uniform_search) {
                    lf.assign(moves.size(), 1.0 / static_cast<double>(moves.size()));
                } else {
                    auto [drawn, c1] = prob_list(moves.size(), sim.counter);
                    lf = std::move(drawn);
                    sim.counter = c1;
                }
                CommandPtr chooser = c_exc(std::move(moves), std::move(lf));
                auto [t0, c2] = get_time_cmd(chooser, loc, sim.maps, sim.counter);
                sim.counter = c2;
                std::uint64_t n = sim.next_id++;
                spawn_scheduled(c, loc, n, chooser, t0, ev);
                ev.rule = "search";
                ev.detail = render_formula(cmd->formula);
            }
            sim.flag = true;
            break;
        }

        case CKind::Var:
            throw EngineError("unbound recursion variable V(" + std::to_string(cmd->n) +
                              ") scheduled at " + loc.str());

        case CKind::Nil:
            throw EngineError("nil process scheduled at " + loc.str() +
                              " (corrupt schedule)");
    }

    if (consumed) {
        c.processes.erase(std::remove_if(c.processes.begin(), c.processes.end(),
                                         [&](const ProcessObject& p) {
                                             return p.uid == root.uid;
                                         }),
                          c.processes.end());
    }
    normalize_objects(c.agents, c.processes);
    return ev;
}

TraceEvent tick(Configuration& c) {
    SimulationState& sim = c.sim;
    if (!sim.flag)
        throw EngineError("tick without a raised flag");
    if (heap_is_empty(sim.pqueue))
        throw EngineError("tick on empty schedule");

    const ScheduleEntry root = heap_find_min(sim.pqueue);
    const TimeValue t0 = root.time;
    sim.gtime += t0;
    sim.pqueue = heap_merge(heap_delta(heap_delete_min(sim.pqueue), t0), sim.pend);
    sim.pend = nullptr;
    sim.flag = false;

    TraceEvent ev;
    ev.rule = "tick";
    ev.uid = root.uid;
    ev.gtime = sim.gtime;
    ev.detail = t0.str();
    return ev;
}

std::string stop_reason_str(StopReason r) {
    switch (r) {
        case StopReason::Quiescent: return "quiescent";
        case StopReason::TimeBound: return "time-bound";
        case StopReason::StepBound: return "step-bound";
    }
    return "?";
}

RunResult run(Configuration c, const SatProcedure& sat, std::uint64_t max_steps,
              const RunObserver& observer) {
    RunResult result;
    for (;;) {
        // A raised flag means an observable rule has fired and its tick is
        // still owed (also the entry state when resuming a stepped-by-hand
        // configuration). Settle it before anything else.
        if (c.sim.flag) {
            const TimeValue& t0 = heap_find_min(c.sim.pqueue).time;
            if (c.sim.gtime + t0 > c.sim.max_time) {
                result.reason = StopReason::TimeBound;
                break;
            }
            result.trace.push_back(tick(c));
            if (observer)
                observer(c, result.trace.back());
        }
        if (heap_is_empty(c.sim.pqueue)) {
            result.reason = StopReason::Quiescent;
            break;
        }
        if (max_steps != 0 && result.steps >= max_steps) {
            result.reason = StopReason::StepBound;
            break;
        }
        result.trace.push_back(step(c, sat));
        ++result.steps;
        if (observer)
            observer(c, result.trace.back());
    }
    result.config = std::move(c);
    return result;
}

} // namespace sscc
