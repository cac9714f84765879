#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sscc {

// Quantifier-free store fragment: Boolean structure over integer comparisons
// whose sides are single variables or literal constants, plus free Boolean
// variables. This covers every store the interpreter builds; anything richer
// is rejected by the internal decision procedure and can only be answered by
// an external solver.

enum class IntOp { Lt, Le, Gt, Ge, Eq, Ne };

struct IntTerm {
    bool is_var = false;
    std::string var;
    long long value = 0;

    static IntTerm variable(std::string name) {
        IntTerm t;
        t.is_var = true;
        t.var = std::move(name);
        return t;
    }
    static IntTerm constant(long long v) {
        IntTerm t;
        t.value = v;
        return t;
    }
    bool operator==(const IntTerm& o) const {
        return is_var == o.is_var && (is_var ? var == o.var : value == o.value);
    }
};

enum class FKind { True, False, BoolVar, IntAtom, Not, And, Or, Xor, Implies, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind = FKind::True;

    std::string name; // BoolVar

    IntTerm lhs, rhs; // IntAtom
    IntOp op = IntOp::Lt;

    FormulaPtr a, b; // Not uses a; binary connectives use a, b
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_bvar(std::string name);
FormulaPtr f_atom(IntTerm lhs, IntOp op, IntTerm rhs);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_xor(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);

// Convenience builders for the common "var op const" atom shape.
FormulaPtr f_cmp(const std::string& var, IntOp op, long long value);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

// Store-size measure driving the ask time penalty: integer atoms, Boolean
// variables and constants count 1; every Boolean connective counts 1 plus
// the sizes of its operands.
int formula_size(const FormulaPtr& f);

// One bottom-up pass of the neutral/absorbing-element identities:
//   x and true = x    x and false = false    x or true = true
//   x or false = x    not true = false       not false = true
// (symmetric variants included). The ruleset only collapses nodes, so a
// single bottom-up pass reaches the fixpoint.
FormulaPtr simplify_identities(const FormulaPtr& f);

// Store update: And(c, d) normalized by the identity pass, so telling `true`
// leaves a store untouched and telling into `false` stays `false`.
FormulaPtr conjoin(const FormulaPtr& c, const FormulaPtr& d);

// Equality used for store deduplication: structural equality of the
// identity-normalized forms.
bool formula_equiv_structural(const FormulaPtr& a, const FormulaPtr& b);

// Canonical surface text (the same grammar the spec-file parser reads).
std::string render_formula(const FormulaPtr& f);

std::string int_op_str(IntOp op);
IntOp negate_op(IntOp op);

// All variable names grouped by kind; throws std::invalid_argument if a name
// is used both as a Boolean and as an integer variable.
struct VarSet {
    std::vector<std::string> bool_vars; // sorted, unique
    std::vector<std::string> int_vars;  // sorted, unique
};
VarSet collect_vars(const FormulaPtr& f);

} // namespace sscc
