#include "sscc/fixtures.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace sscc {

namespace {

FormulaPtr cmp(const char* var, IntOp op, long long value) {
    return f_cmp(var, op, value);
}

CommandPtr tell_eq(const char* var, long long value) {
    return c_tell(cmp(var, IntOp::Eq, value));
}

// tell(guard-consequence) extruded to the space `levels` index `idx` above,
// gated on the guard itself: ask g -> (tell(g) out idx). The recurring
// "report upward once established" shape of the worker pipelines.
CommandPtr report_up(FormulaPtr guard, unsigned idx) {
    return c_ask(guard, c_out(c_tell(guard), idx));
}

void put_const(TimeMaps::Map& m, const AgentId& id, long num, long den) {
    m.emplace(id, StochasticExpression::constant(mpq_class(num, den)));
}

TimeMaps normal_maps() {
    TimeMaps maps;
    maps.tell.emplace(AgentId::root(), StochasticExpression::norm(1.0, 0.2));
    maps.ask.emplace(AgentId::root(), StochasticExpression::norm(1.2, 0.2));
    maps.space.emplace(AgentId::root(), StochasticExpression::norm(0.5, 0.2));
    maps.extrusion.emplace(AgentId::root(), StochasticExpression::norm(0.5, 0.2));
    return maps;
}

// Group 2 of the task system: workers 3 and 4 post their results and report
// them up, a third worker waits for both and reports V < 100 to the group's
// parent.
CommandPtr tasks_group2() {
    CommandPtr q1 = c_in(c_par(tell_eq("Z", 9), report_up(cmp("Z", IntOp::Lt, 15), 3)), 3);
    CommandPtr q2 = c_in(c_par(tell_eq("W", 25), report_up(cmp("W", IntOp::Gt, 0), 4)), 4);
    CommandPtr q3 = c_ask(f_and(cmp("Z", IntOp::Lt, 15), cmp("W", IntOp::Gt, 0)),
                          c_par(tell_eq("V", 67), report_up(cmp("V", IntOp::Lt, 100), 2)));
    return c_in(c_par(q1, c_par(q2, q3)), 2);
}

// The detector that posts DONE at the root once `guard` holds there.
CommandPtr done_detector(FormulaPtr guard) {
    return c_ask(std::move(guard),
                 c_par(tell_eq("U", 50),
                       c_ask(cmp("U", IntOp::Lt, 55), c_tell(f_bvar("DONE")))));
}

// Stage that consumes the upstream result at its own level: once Y > 2
// holds, posts X == 15 and reports X >= 10 one level up.
CommandPtr relay_stage() {
    return c_ask(cmp("Y", IntOp::Gt, 2),
                 c_par(tell_eq("X", 15), report_up(cmp("X", IntOp::Ge, 10), 1)));
}

} // namespace

SystemSpec fixture_container() {
    // Space 0 hosts the reactive guard: when its store shows X > 2 it
    // extrudes a container that descends into space 1's inner space 0 and
    // posts Y < 10 there. Space 2 just receives Z != 10.
    CommandPtr proc1 =
        c_in(c_ask(cmp("X", IntOp::Gt, 2),
                   c_out(c_in(c_in(c_tell(cmp("Y", IntOp::Lt, 10)), 0), 1), 0)),
             0);
    CommandPtr proc2 = c_in(c_tell(cmp("Z", IntOp::Ne, 10)), 2);

    SystemSpec s;
    s.factor = 0;
    s.max_time = TimeValue(100, 1);

    const AgentId root = AgentId::root();
    const AgentId a0 = AgentId::of({0});
    const AgentId a1 = AgentId::of({1});
    const AgentId a2 = AgentId::of({2});
    const AgentId a01 = AgentId::of({0, 1});

    put_const(s.maps.tell, root, 1, 10);
    put_const(s.maps.tell, a0, 3, 20);
    put_const(s.maps.tell, a1, 3, 20);
    put_const(s.maps.tell, a2, 3, 20);
    put_const(s.maps.tell, a01, 1, 5);

    put_const(s.maps.ask, root, 1, 20);
    put_const(s.maps.ask, a0, 1, 10);
    put_const(s.maps.ask, a1, 1, 10);
    put_const(s.maps.ask, a2, 1, 10);
    put_const(s.maps.ask, a01, 3, 20);

    put_const(s.maps.space, root, 1, 2);
    put_const(s.maps.space, a0, 7, 10);
    put_const(s.maps.space, a1, 13, 20);
    put_const(s.maps.space, a2, 3, 5);
    put_const(s.maps.space, a01, 4, 5);

    put_const(s.maps.extrusion, root, 1, 2);
    put_const(s.maps.extrusion, a0, 13, 20);
    put_const(s.maps.extrusion, a1, 1, 2);
    put_const(s.maps.extrusion, a2, 3, 5);
    put_const(s.maps.extrusion, a01, 1, 1);

    s.agents.push_back({root, cmp("W", IntOp::Eq, 9), {0, 1, 2}});
    s.agents.push_back({a0, cmp("X", IntOp::Ge, 11), {}});
    s.agents.push_back({a1, f_true(), {0}});
    s.agents.push_back({a2, f_true(), {}});
    s.agents.push_back({a01, cmp("Y", IntOp::Gt, 5), {}});

    s.processes.push_back({root, c_par(proc1, proc2)});
    return s;
}

SystemSpec fixture_tasks() {
    // Group 1, first encoding: four subtasks handed out by independent coin
    // flips inside worker 4, plus the Y == 5 result reported up.
    CommandPtr subtasks = c_ind({c_in(tell_eq("A", 1), 1), c_in(tell_eq("B", 1), 2),
                                 c_in(tell_eq("C", 1), 3), c_in(tell_eq("D", 1), 4)},
                                {0.5, 0.5, 0.5, 0.5});
    CommandPtr branch1 =
        c_in(c_par(c_in(subtasks, 4),
                   c_par(tell_eq("Y", 5), report_up(cmp("Y", IntOp::Gt, 2), 1))),
             1);
    // Group 1, second encoding: a single worker posting Y == 25.
    CommandPtr branch2 =
        c_in(c_par(tell_eq("Y", 25), report_up(cmp("Y", IntOp::Gt, 2), 2)), 2);

    CommandPtr group1 = c_in(c_par(c_exc({branch1, branch2}, {0.60, 0.40}), relay_stage()), 1);

    CommandPtr all = c_par(group1,
                           c_par(tasks_group2(),
                                 done_detector(f_and(cmp("X", IntOp::Ge, 10),
                                                     cmp("V", IntOp::Lt, 100)))));

    SystemSpec s;
    s.factor = mpq_class(1, 2);
    s.max_time = TimeValue(500, 1);
    s.maps = normal_maps();
    s.agents.push_back({AgentId::root(), f_true(), {}});
    s.processes.push_back({AgentId::root(), all});
    return s;
}

SystemSpec fixture_inference_chain(FormulaPtr root_store) {
    // Two levels down: W == 5 plus the stage that turns it into Y == 32 and
    // reports Y > 9 to its parent.
    CommandPtr inner = c_ask(cmp("W", IntOp::Gt, 1),
                             c_par(tell_eq("Y", 32), report_up(cmp("Y", IntOp::Gt, 9), 2)));
    CommandPtr level2 = c_in(c_par(tell_eq("W", 5), inner), 2);
    CommandPtr chain = c_in(c_par(level2, relay_stage()), 1);

    SystemSpec s;
    s.factor = mpq_class(1, 2);
    s.max_time = TimeValue(1000, 1);
    s.maps = normal_maps();
    s.agents.push_back({AgentId::root(), std::move(root_store), {}});
    s.processes.push_back(
        {AgentId::root(), c_par(chain, done_detector(cmp("X", IntOp::Ge, 10)))});
    return s;
}

FormulaPtr robot_target() { return f_bvar("unwanted"); }

FormulaPtr robot_warning() { return f_bvar("warning"); }

SystemSpec fixture_robot(const HierarchyGenSpec& gen) {
    if (gen.depth == 0)
        throw std::invalid_argument("fixture_robot: depth must be at least 1");

    SampleCounter ctr{gen.seed, 0};

    std::vector<AgentDecl> agents;
    // Depth-first, children ascending; child indices are 1..k. The first
    // child of every node on the first-child spine is forced to exist, so
    // the spine reaches exactly gen.depth levels below the root.
    std::function<void(const AgentId&, unsigned, bool)> build =
        [&](const AgentId& id, unsigned level, bool on_spine) {
            unsigned k = 0;
            if (level < gen.depth) {
                auto [t, c1] = sample_time(gen.branching, ctr);
                ctr = c1;
                double d = t.to_double();
                k = d <= 0 ? 0 : static_cast<unsigned>(std::llround(d));
                if (on_spine && k == 0)
                    k = 1;
            }
            AgentDecl decl;
            decl.id = id;
            decl.store = f_true();
            for (unsigned i = 1; i <= k; ++i)
                decl.children.insert(i);
            agents.push_back(std::move(decl));
            for (unsigned i = 1; i <= k; ++i)
                build(id.child(i), level + 1, on_spine && i == 1);
        };
    build(AgentId::root(), 0, true);

    std::size_t target_pos = 0;
    switch (gen.seeding) {
    case TargetSeeding::DeepestLeaf: {
        AgentId spine = AgentId::root();
        for (unsigned i = 0; i < gen.depth; ++i)
            spine = spine.child(1);
        for (std::size_t i = 0; i < agents.size(); ++i)
            if (agents[i].id == spine)
                target_pos = i;
        break;
    }
    case TargetSeeding::RandomAgent: {
        auto [q, c1] = sample_prob(ctr);
        ctr = c1;
        // Uniform over the non-root agents (index 0 is always the root).
        std::size_t n = agents.size() - 1;
        target_pos = 1 + std::min(n - 1, static_cast<std::size_t>(q * static_cast<double>(n)));
        break;
    }
    }
    agents[target_pos].store = robot_target();

    SystemSpec s;
    s.seed = gen.seed;
    s.factor = 0;
    s.max_time = TimeValue(10000, 1);
    put_const(s.maps.tell, AgentId::root(), 1, 1);
    put_const(s.maps.ask, AgentId::root(), 1, 1);
    put_const(s.maps.space, AgentId::root(), 1, 1);
    put_const(s.maps.extrusion, AgentId::root(), 1, 1);
    s.agents = std::move(agents);
    s.processes.push_back(
        {AgentId::root(), c_watch(c_tell(robot_warning()), robot_target())});
    return s;
}

} // namespace sscc
