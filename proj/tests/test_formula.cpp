#include "doctest.h"

#include "sscc/formula.hpp"

using namespace sscc;

TEST_CASE("formula size counts leaves as one and connectives as one plus children") {
    CHECK(formula_size(f_true()) == 1);
    CHECK(formula_size(f_false()) == 1);
    CHECK(formula_size(f_bvar("p")) == 1);
    CHECK(formula_size(f_cmp("X", IntOp::Gt, 5)) == 1);
    CHECK(formula_size(f_not(f_bvar("p"))) == 2);

    auto w = f_cmp("W", IntOp::Gt, 0);
    auto z = f_cmp("Z", IntOp::Lt, 15);
    CHECK(formula_size(f_and(w, z)) == 3);
    CHECK(formula_size(f_or(f_and(w, z), f_not(w))) == 6);
    CHECK(formula_size(f_implies(w, z)) == 3);
}

TEST_CASE("identity simplification") {
    auto p = f_bvar("p");
    auto q = f_bvar("q");

    CHECK(simplify_identities(f_and(f_true(), p)) == p);
    CHECK(simplify_identities(f_and(p, f_true())) == p);
    CHECK(simplify_identities(f_and(p, f_false()))->kind == FKind::False);
    CHECK(simplify_identities(f_or(p, f_false())) == p);
    CHECK(simplify_identities(f_or(f_true(), p))->kind == FKind::True);
    CHECK(simplify_identities(f_not(f_true()))->kind == FKind::False);
    CHECK(simplify_identities(f_not(f_false()))->kind == FKind::True);

    // Nested: (p and true) or false -> p
    CHECK(simplify_identities(f_or(f_and(p, f_true()), f_false())) == p);

    // Non-identity structure is untouched (pointer reuse).
    auto both = f_and(p, q);
    CHECK(simplify_identities(both) == both);
}

TEST_CASE("conjoin folds away trivial stores") {
    auto c = f_cmp("X", IntOp::Ge, 2);
    CHECK(conjoin(f_true(), c) == c);
    CHECK(conjoin(c, f_true()) == c);
    auto joined = conjoin(c, f_cmp("Y", IntOp::Lt, 9));
    CHECK(joined->kind == FKind::And);
    CHECK(structurally_equal(joined->a, c));
}

TEST_CASE("structural comparison") {
    auto a = f_and(f_cmp("X", IntOp::Gt, 5), f_bvar("p"));
    auto b = f_and(f_cmp("X", IntOp::Gt, 5), f_bvar("p"));
    auto c = f_and(f_bvar("p"), f_cmp("X", IntOp::Gt, 5));
    CHECK(structurally_equal(a, b));
    CHECK_FALSE(structurally_equal(a, c)); // order matters structurally
    CHECK_FALSE(structurally_equal(a, f_cmp("X", IntOp::Gt, 5)));
}

TEST_CASE("rendering respects precedence and associativity") {
    auto p = f_bvar("p");
    auto q = f_bvar("q");
    auto r = f_bvar("r");

    CHECK(render_formula(f_cmp("X", IntOp::Gt, 5)) == "X > 5");
    CHECK(render_formula(f_cmp("X", IntOp::Ne, 10)) == "X != 10");
    CHECK(render_formula(f_and(p, f_or(q, r))) == "p and (q or r)");
    CHECK(render_formula(f_or(f_and(p, q), r)) == "p and q or r");
    CHECK(render_formula(f_not(f_and(p, q))) == "not (p and q)");
    CHECK(render_formula(f_not(p)) == "not p");
    // Implication is right-associative.
    CHECK(render_formula(f_implies(p, f_implies(q, r))) == "p implies q implies r");
    CHECK(render_formula(f_implies(f_implies(p, q), r)) == "(p implies q) implies r");
    CHECK(render_formula(f_true()) == "true");
    CHECK(render_formula(f_false()) == "false");
    CHECK(render_formula(f_and(f_cmp("Y", IntOp::Gt, 5), f_cmp("Y", IntOp::Lt, 10))) ==
          "Y > 5 and Y < 10");
}

TEST_CASE("variable collection is sorted and kind-checked") {
    auto f = f_and(f_cmp("Z", IntOp::Lt, 3),
                   f_or(f_bvar("alarm"), f_cmp("A", IntOp::Eq, 1)));
    auto vars = collect_vars(f);
    REQUIRE(vars.int_vars.size() == 2);
    CHECK(vars.int_vars[0] == "A");
    CHECK(vars.int_vars[1] == "Z");
    REQUIRE(vars.bool_vars.size() == 1);
    CHECK(vars.bool_vars[0] == "alarm");

    // Same name as both an integer and a boolean is rejected.
    auto bad = f_and(f_bvar("X"), f_cmp("X", IntOp::Gt, 0));
    CHECK_THROWS_AS(collect_vars(bad), std::invalid_argument);
}

TEST_CASE("comparison operator helpers") {
    CHECK(int_op_str(IntOp::Lt) == "<");
    CHECK(int_op_str(IntOp::Le) == "<=");
    CHECK(int_op_str(IntOp::Gt) == ">");
    CHECK(int_op_str(IntOp::Ge) == ">=");
    CHECK(int_op_str(IntOp::Eq) == "==");
    CHECK(int_op_str(IntOp::Ne) == "!=");

    CHECK(negate_op(IntOp::Lt) == IntOp::Ge);
    CHECK(negate_op(IntOp::Ge) == IntOp::Lt);
    CHECK(negate_op(IntOp::Eq) == IntOp::Ne);
    CHECK(negate_op(IntOp::Ne) == IntOp::Eq);
    CHECK(negate_op(IntOp::Gt) == IntOp::Le);
    CHECK(negate_op(IntOp::Le) == IntOp::Gt);
}
