#include "doctest.h"

#include "sscc/agent.hpp"

using namespace sscc;

TEST_CASE("agent id text round trips") {
    CHECK(AgentId::root().str() == "root");
    CHECK(AgentId::of({3, 1}).str() == "3.1.root");
    CHECK(AgentId::of({0}).str() == "0.root");

    CHECK(AgentId::parse("root") == AgentId::root());
    CHECK(AgentId::parse("3.1.root") == AgentId::of({3, 1}));
    CHECK(AgentId::parse("0.root") == AgentId::of({0}));
    CHECK(AgentId::parse(AgentId::of({7, 2, 5}).str()) == AgentId::of({7, 2, 5}));

    CHECK_THROWS_AS(AgentId::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(AgentId::parse("3.1"), std::invalid_argument);
    CHECK_THROWS_AS(AgentId::parse("root.3"), std::invalid_argument);
    CHECK_THROWS_AS(AgentId::parse("a.root"), std::invalid_argument);
    CHECK_THROWS_AS(AgentId::parse("3..root"), std::invalid_argument);
}

TEST_CASE("child and parent navigation") {
    auto r = AgentId::root();
    auto c1 = r.child(1);
    auto c31 = c1.child(3);
    CHECK(c1 == AgentId::of({1}));
    CHECK(c31 == AgentId::of({3, 1}));
    CHECK(c31.parent() == c1);
    CHECK(c1.parent() == r);
    CHECK(r.is_root());
    CHECK_FALSE(c1.is_root());

    CHECK(r.depth() == 1);
    CHECK(c1.depth() == 2);
    CHECK(c31.depth() == 3);
    CHECK(size_aid(c31) == 3);
}

TEST_CASE("ancestor and direct-child predicates") {
    auto r = AgentId::root();
    auto a1 = AgentId::of({1});
    auto a31 = AgentId::of({3, 1});
    auto a2 = AgentId::of({2});

    CHECK(is_prefix(r, r));
    CHECK(is_prefix(r, a31));
    CHECK(is_prefix(a1, a31));
    CHECK(is_prefix(a31, a31));
    CHECK_FALSE(is_prefix(a31, a1));
    CHECK_FALSE(is_prefix(a2, a31));
    CHECK_FALSE(is_prefix(a1, a2));

    CHECK(is_son(a1, r));
    CHECK(is_son(a31, a1));
    CHECK_FALSE(is_son(a31, r));   // grandchild, not child
    CHECK_FALSE(is_son(r, a1));
    CHECK_FALSE(is_son(a1, a1));
    CHECK_FALSE(is_son(a2, a1));
}

TEST_CASE("ordering puts a parent right before its subtree") {
    AgentIdLess less;
    auto r = AgentId::root();
    auto a1 = AgentId::of({1});
    auto a11 = AgentId::of({1, 1});
    auto a21 = AgentId::of({2, 1});
    auto a2 = AgentId::of({2});

    CHECK(less(r, a1));
    CHECK(less(a1, a11));
    CHECK(less(a11, a21));
    CHECK(less(a21, a2));
    CHECK_FALSE(less(a2, a21));
    CHECK_FALSE(less(a1, a1));
}

TEST_CASE("normalization merges duplicate agents and strips nil processes") {
    std::vector<AgentObject> agents;
    agents.push_back({AgentId::of({2}), f_cmp("Z", IntOp::Ne, 10), {1}});
    agents.push_back({AgentId::root(), f_true(), {1}});
    agents.push_back({AgentId::of({2}), f_cmp("Z", IntOp::Gt, 0), {3}});
    agents.push_back({AgentId::root(), f_true(), {2}});

    std::vector<ProcessObject> processes;
    normalize_objects(agents, processes);

    REQUIRE(agents.size() == 2);
    CHECK(agents[0].id == AgentId::root());
    CHECK(agents[0].store == f_true()); // true /\ true folds to true
    CHECK(agents[0].children == std::set<unsigned>{1, 2});
    CHECK(agents[1].id == AgentId::of({2}));
    CHECK(agents[1].children == std::set<unsigned>{1, 3});
    // Stores conjoin in encounter order.
    CHECK(render_formula(agents[1].store) == "Z != 10 and Z > 0");

    // Idempotent.
    auto before = agents;
    normalize_objects(agents, processes);
    REQUIRE(agents.size() == before.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        CHECK(agents[i].id == before[i].id);
        CHECK(structurally_equal(agents[i].store, before[i].store));
        CHECK(agents[i].children == before[i].children);
    }
}

TEST_CASE("find and ensure agents") {
    std::vector<AgentObject> agents;
    CHECK(find_agent(agents, AgentId::root()) == nullptr);

    auto& made = ensure_agent(agents, AgentId::of({1}));
    CHECK(made.id == AgentId::of({1}));
    CHECK(made.store == f_true());
    CHECK(made.children.empty());
    CHECK(agents.size() == 1);

    // ensure on an existing address returns it without duplicating.
    made.children.insert(4);
    auto& again = ensure_agent(agents, AgentId::of({1}));
    CHECK(&again == &agents[0]);
    CHECK(agents.size() == 1);
    CHECK(again.children == std::set<unsigned>{4});

    const auto& cagents = agents;
    CHECK(find_agent(cagents, AgentId::of({1})) == &cagents[0]);
    CHECK(find_agent(cagents, AgentId::of({2})) == nullptr);
}
