#include "sscc/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace sscc {
namespace {

FormulaPtr make(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

FormulaPtr make_binary(FKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

int precedence(FKind k) {
    switch (k) {
    case FKind::Iff: return 1;
    case FKind::Implies: return 2;
    case FKind::Or: return 3;
    case FKind::Xor: return 4;
    case FKind::And: return 5;
    case FKind::Not: return 6;
    default: return 7;
    }
}

const char* connective_token(FKind k) {
    switch (k) {
    case FKind::And: return "and";
    case FKind::Or: return "or";
    case FKind::Xor: return "xor";
    case FKind::Implies: return "implies";
    case FKind::Iff: return "iff";
    default: return "?";
    }
}

std::string render_term(const IntTerm& t) {
    return t.is_var ? t.var : std::to_string(t.value);
}

// `parent` is the precedence of the enclosing operator and `right` tells
// which side we render; `implies` is the only right-associative connective,
// everything else parses left-associatively.
std::string render(const FormulaPtr& f, int parent, bool right) {
    int prec = precedence(f->kind);
    std::string body;
    switch (f->kind) {
    case FKind::True:
        return "true";
    case FKind::False:
        return "false";
    case FKind::BoolVar:
        return f->name;
    case FKind::IntAtom:
        body = render_term(f->lhs) + " " + int_op_str(f->op) + " " + render_term(f->rhs);
        // Atoms have no internal ambiguity; they never need parentheses.
        return body;
    case FKind::Not:
        body = "not " + render(f->a, prec, false);
        break;
    default: {
        bool right_assoc = f->kind == FKind::Implies;
        std::string l = render(f->a, prec, right_assoc);
        std::string r = render(f->b, prec, !right_assoc);
        body = l + " " + connective_token(f->kind) + " " + r;
        break;
    }
    }
    bool need_parens = prec < parent || (prec == parent && right);
    return need_parens ? "(" + body + ")" : body;
}

void collect(const FormulaPtr& f, std::vector<std::string>& bools,
             std::vector<std::string>& ints) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
        return;
    case FKind::BoolVar:
        bools.push_back(f->name);
        return;
    case FKind::IntAtom:
        if (f->lhs.is_var)
            ints.push_back(f->lhs.var);
        if (f->rhs.is_var)
            ints.push_back(f->rhs.var);
        return;
    case FKind::Not:
        collect(f->a, bools, ints);
        return;
    default:
        collect(f->a, bools, ints);
        collect(f->b, bools, ints);
        return;
    }
}

} // namespace

FormulaPtr f_true() {
    static const FormulaPtr t = make(FKind::True);
    return t;
}

FormulaPtr f_false() {
    static const FormulaPtr t = make(FKind::False);
    return t;
}

FormulaPtr f_bvar(std::string name) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::BoolVar;
    f->name = std::move(name);
    return f;
}

FormulaPtr f_atom(IntTerm lhs, IntOp op, IntTerm rhs) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::IntAtom;
    f->lhs = std::move(lhs);
    f->op = op;
    f->rhs = std::move(rhs);
    return f;
}

FormulaPtr f_cmp(const std::string& var, IntOp op, long long value) {
    return f_atom(IntTerm::variable(var), op, IntTerm::constant(value));
}

FormulaPtr f_not(FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Not;
    f->a = std::move(a);
    return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make_binary(FKind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make_binary(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr f_xor(FormulaPtr a, FormulaPtr b) { return make_binary(FKind::Xor, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return make_binary(FKind::Implies, std::move(a), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return make_binary(FKind::Iff, std::move(a), std::move(b)); }

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case FKind::True:
    case FKind::False:
        return true;
    case FKind::BoolVar:
        return a->name == b->name;
    case FKind::IntAtom:
        return a->op == b->op && a->lhs == b->lhs && a->rhs == b->rhs;
    case FKind::Not:
        return structurally_equal(a->a, b->a);
    default:
        return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    }
}

int formula_size(const FormulaPtr& f) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::BoolVar:
    case FKind::IntAtom:
        return 1;
    case FKind::Not:
        return 1 + formula_size(f->a);
    default:
        return 1 + formula_size(f->a) + formula_size(f->b);
    }
}

FormulaPtr simplify_identities(const FormulaPtr& f) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::BoolVar:
    case FKind::IntAtom:
        return f;
    case FKind::Not: {
        FormulaPtr a = simplify_identities(f->a);
        if (a->kind == FKind::True)
            return f_false();
        if (a->kind == FKind::False)
            return f_true();
        return a.get() == f->a.get() ? f : f_not(a);
    }
    case FKind::And: {
        FormulaPtr a = simplify_identities(f->a);
        FormulaPtr b = simplify_identities(f->b);
        if (a->kind == FKind::False || b->kind == FKind::False)
            return f_false();
        if (a->kind == FKind::True)
            return b;
        if (b->kind == FKind::True)
            return a;
        return (a.get() == f->a.get() && b.get() == f->b.get()) ? f : f_and(a, b);
    }
    case FKind::Or: {
        FormulaPtr a = simplify_identities(f->a);
        FormulaPtr b = simplify_identities(f->b);
        if (a->kind == FKind::True || b->kind == FKind::True)
            return f_true();
        if (a->kind == FKind::False)
            return b;
        if (b->kind == FKind::False)
            return a;
        return (a.get() == f->a.get() && b.get() == f->b.get()) ? f : f_or(a, b);
    }
    default: {
        // Xor / Implies / Iff have no identity rules in the store algebra;
        // still normalize below them.
        FormulaPtr a = simplify_identities(f->a);
        FormulaPtr b = simplify_identities(f->b);
        return (a.get() == f->a.get() && b.get() == f->b.get())
                   ? f
                   : make_binary(f->kind, a, b);
    }
    }
}

FormulaPtr conjoin(const FormulaPtr& c, const FormulaPtr& d) {
    return simplify_identities(f_and(c, d));
}

bool formula_equiv_structural(const FormulaPtr& a, const FormulaPtr& b) {
    return structurally_equal(simplify_identities(a), simplify_identities(b));
}

std::string render_formula(const FormulaPtr& f) { return render(f, 0, false); }

std::string int_op_str(IntOp op) {
    switch (op) {
    case IntOp::Lt: return "<";
    case IntOp::Le: return "<=";
    case IntOp::Gt: return ">";
    case IntOp::Ge: return ">=";
    case IntOp::Eq: return "==";
    case IntOp::Ne: return "!=";
    }
    return "?";
}

IntOp negate_op(IntOp op) {
    switch (op) {
    case IntOp::Lt: return IntOp::Ge;
    case IntOp::Le: return IntOp::Gt;
    case IntOp::Gt: return IntOp::Le;
    case IntOp::Ge: return IntOp::Lt;
    case IntOp::Eq: return IntOp::Ne;
    case IntOp::Ne: return IntOp::Eq;
    }
    return IntOp::Lt;
}

VarSet collect_vars(const FormulaPtr& f) {
    VarSet s;
    collect(f, s.bool_vars, s.int_vars);
    auto dedupe = [](std::vector<std::string>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(s.bool_vars);
    dedupe(s.int_vars);
    for (const auto& n : s.bool_vars)
        if (std::binary_search(s.int_vars.begin(), s.int_vars.end(), n))
            throw std::invalid_argument(
                "variable used with two types in one formula: " + n);
    return s;
}

} // namespace sscc
