#include "doctest.h"

#include "sscc/command.hpp"

using namespace sscc;

namespace {

FormulaPtr guard() { return f_cmp("X", IntOp::Gt, 5); }

} // namespace

TEST_CASE("builders validate choice lists") {
    auto t = c_tell(guard());
    CHECK_THROWS_AS(c_exc({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(c_exc({t}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(c_exc({t, t}, {0.7, 0.7}), std::invalid_argument); // sums to 1.4
    CHECK_THROWS_AS(c_exc({t, t}, {-0.2, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(c_ind({t}, {1.5}), std::invalid_argument);

    auto e = c_exc({t, c_nil()}, {0.6, 0.4});
    CHECK(e->kind == CKind::Exc);
    CHECK(e->cmds.size() == 2);

    // Independent inclusion has per-candidate probabilities; no sum rule.
    auto i = c_ind({t, t}, {0.9, 0.9});
    CHECK(i->kind == CKind::Ind);
}

TEST_CASE("structural equality") {
    auto a = c_par(c_tell(guard()), c_ask(guard(), c_nil()));
    auto b = c_par(c_tell(guard()), c_ask(guard(), c_nil()));
    auto c = c_par(c_ask(guard(), c_nil()), c_tell(guard()));
    CHECK(commands_equal(a, b));
    CHECK_FALSE(commands_equal(a, c));
    CHECK(commands_equal(c_nil(), c_nil()));
    CHECK_FALSE(commands_equal(c_in(c_nil(), 1), c_in(c_nil(), 2)));
    CHECK(commands_equal(c_exc({a, b}, {0.5, 0.5}), c_exc({a, b}, {0.5, 0.5})));
    CHECK_FALSE(commands_equal(c_exc({a, b}, {0.5, 0.5}), c_exc({a, b}, {0.4, 0.6})));
}

TEST_CASE("substitution replaces matching recursion variables") {
    auto sub = c_tell(guard());

    CHECK(commands_equal(replace(0, c_var(0), sub), sub));
    CHECK(commands_equal(replace(0, c_var(1), sub), c_var(1)));

    auto body = c_par(c_var(0), c_ask(guard(), c_var(0)));
    auto expanded = replace(0, body, sub);
    CHECK(commands_equal(expanded, c_par(sub, c_ask(guard(), sub))));

    // Moves and choices are mapped over.
    auto moved = replace(0, c_in(c_out(c_var(0), 2), 3), sub);
    CHECK(commands_equal(moved, c_in(c_out(sub, 2), 3)));
    auto chosen = replace(0, c_exc({c_var(0), c_nil()}, {0.3, 0.7}), sub);
    CHECK(commands_equal(chosen, c_exc({sub, c_nil()}, {0.3, 0.7})));
    auto watched = replace(0, c_watch(c_var(0), guard()), sub);
    CHECK(commands_equal(watched, c_watch(sub, guard())));
}

TEST_CASE("substitution does not descend into any binder") {
    auto sub = c_tell(guard());

    // Same binder: inner mu shadows, so the inner body keeps its variable.
    auto shadowed = c_mu(0, c_var(0));
    CHECK(commands_equal(replace(0, shadowed, sub), shadowed));

    // Different binder: still untouched — substitution stops at every mu.
    auto other = c_mu(1, c_var(0));
    CHECK(commands_equal(replace(0, other, sub), other));

    // But a variable NEXT TO a binder is rewritten.
    auto beside = c_par(c_var(0), c_mu(1, c_var(0)));
    CHECK(commands_equal(replace(0, beside, sub), c_par(sub, c_mu(1, c_var(0)))));
}

TEST_CASE("closedness") {
    CHECK(is_closed(c_nil()));
    CHECK(is_closed(c_mu(0, c_var(0))));
    CHECK(is_closed(c_mu(0, c_par(c_var(0), c_tell(guard())))));
    CHECK_FALSE(is_closed(c_var(0)));
    CHECK_FALSE(is_closed(c_mu(1, c_var(0))));
    CHECK(is_closed(c_mu(1, c_mu(0, c_var(0)))));
    CHECK_FALSE(is_closed(c_par(c_mu(0, c_var(0)), c_var(2))));
}

TEST_CASE("recursion lint flags unguarded and unreachable variables") {
    // mu 0 . V(0): respawns instantly, no time ever passes.
    CHECK_FALSE(lint_recursion(c_mu(0, c_var(0))).empty());
    // Guarded through an ask: fine.
    CHECK(lint_recursion(c_mu(0, c_ask(guard(), c_var(0)))).empty());
    // Guarded through a move: fine.
    CHECK(lint_recursion(c_mu(0, c_in(c_var(0), 1))).empty());
    // Unguarded through par and choice.
    CHECK_FALSE(lint_recursion(c_mu(0, c_par(c_var(0), c_nil()))).empty());
    CHECK_FALSE(lint_recursion(c_mu(0, c_exc({c_var(0), c_nil()}, {0.5, 0.5}))).empty());
    // A variable under the wrong binder never gets substituted.
    auto crossed = c_mu(0, c_ask(guard(), c_mu(1, c_ask(guard(), c_var(0)))));
    auto msgs = lint_recursion(crossed);
    CHECK_FALSE(msgs.empty());
    // Plain closed commands have nothing to report.
    CHECK(lint_recursion(c_par(c_tell(guard()), c_nil())).empty());
}

TEST_CASE("move list: out of the space first, then into children ascending") {
    auto c = c_tell(guard());
    std::set<unsigned> children{5, 2, 9};

    auto at_child = command_list(AgentId::of({3}), children, c);
    REQUIRE(at_child.size() == 4);
    CHECK(commands_equal(at_child[0], c_out(c, 3)));
    CHECK(commands_equal(at_child[1], c_in(c, 2)));
    CHECK(commands_equal(at_child[2], c_in(c, 5)));
    CHECK(commands_equal(at_child[3], c_in(c, 9)));

    // At the root there is no out.
    auto at_root = command_list(AgentId::root(), children, c);
    REQUIRE(at_root.size() == 3);
    CHECK(commands_equal(at_root[0], c_in(c, 2)));

    // No children and not at root: only the out move.
    auto lone = command_list(AgentId::of({1, 4}), {}, c);
    REQUIRE(lone.size() == 1);
    CHECK(commands_equal(lone[0], c_out(c, 1)));

    // No moves at all for a childless root.
    CHECK(command_list(AgentId::root(), {}, c).empty());
}

TEST_CASE("probability list: normalized draws in reverse order, counter advanced by n") {
    SampleCounter c0{31, 100};
    auto [probs, c1] = prob_list(4, c0);
    REQUIRE(probs.size() == 4);
    CHECK(c1.seed == 31);
    CHECK(c1.index == 104);

    double total = 0;
    for (double p : probs) {
        CHECK(p > 0);
        CHECK(p < 1);
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // The list is built by prepending, so probs[0] corresponds to the LAST
    // draw and probs[3] to the first.
    double draws[4];
    double sum = 0;
    for (int i = 0; i < 4; ++i) {
        draws[i] = uniform01(31, 100 + static_cast<std::uint64_t>(i));
        sum += draws[i];
    }
    for (int i = 0; i < 4; ++i) {
        CHECK(probs[i] == doctest::Approx(draws[3 - i] / sum).epsilon(1e-12));
    }

    auto [one, c2] = prob_list(1, c0);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(1.0));
    CHECK(c2.index == 101);
}

TEST_CASE("command text") {
    auto tell = c_tell(f_and(f_cmp("Y", IntOp::Gt, 5), f_cmp("Y", IntOp::Lt, 10)));
    CHECK(render_command(c_nil()) == "0");
    CHECK(render_command(tell) == "tell(Y > 5 and Y < 10)");
    CHECK(render_command(c_tell_child(3)) == "tell(3)");
    CHECK(render_command(c_var(2)) == "V(2)");
    CHECK(render_command(c_in(c_nil(), 1)) == "0 in 1");
    CHECK(render_command(c_out(c_in(c_nil(), 1), 2)) == "0 in 1 out 2");
    CHECK(render_command(c_par(c_nil(), c_var(0))) == "0 || V(0)");

    // ask and mu swallow everything to their right; parallel needs parens on
    // the left side of a move.
    CHECK(render_command(c_ask(guard(), c_par(c_nil(), c_nil()))) ==
          "ask X > 5 -> 0 || 0");
    CHECK(render_command(c_mu(0, c_par(c_var(0), c_nil()))) == "mu 0 . V(0) || 0");
    CHECK(render_command(c_in(c_par(c_nil(), c_nil()), 2)) == "(0 || 0) in 2");
    CHECK(render_command(c_par(c_ask(guard(), c_nil()), c_nil())) ==
          "(ask X > 5 -> 0) || 0");

    CHECK(render_command(c_exc({c_nil(), c_var(1)}, {0.6, 0.4})) ==
          "exc{ 0 : 0.6, V(1) : 0.4 }");
    CHECK(render_command(c_ind({c_nil()}, {0.25})) == "ind{ 0 : 0.25 }");
    CHECK(render_command(c_watch(c_nil(), guard())) == "watch(0, X > 5)");
}

TEST_CASE("double text is shortest round-trip form") {
    CHECK(double_str(0.5) == "0.5");
    CHECK(double_str(1.0) == "1");
    CHECK(double_str(0.1) == "0.1");
    CHECK(double_str(0.25) == "0.25");
    CHECK(double_str(1e-3) == "0.001");
}
