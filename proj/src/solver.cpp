#include "sscc/solver.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <vector>

namespace sscc {
namespace {

constexpr int kMaxAtoms = 28; // 2^28 assignments is already past practical use

// Negation normal form over the store fragment. Negation is absorbed into
// atoms (by flipping the comparison) and into Boolean literals; Xor, Implies
// and Iff are expanded by polarity, so the result only contains And, Or and
// literals. Constant-to-constant comparisons fold to true/false here.
FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
    case FKind::True:
        return neg ? f_false() : f_true();
    case FKind::False:
        return neg ? f_true() : f_false();
    case FKind::BoolVar:
        return neg ? f_not(f) : f;
    case FKind::IntAtom: {
        IntOp op = neg ? negate_op(f->op) : f->op;
        if (!f->lhs.is_var && !f->rhs.is_var) {
            long long l = f->lhs.value, r = f->rhs.value;
            bool v = false;
            switch (op) {
            case IntOp::Lt: v = l < r; break;
            case IntOp::Le: v = l <= r; break;
            case IntOp::Gt: v = l > r; break;
            case IntOp::Ge: v = l >= r; break;
            case IntOp::Eq: v = l == r; break;
            case IntOp::Ne: v = l != r; break;
            }
            return v ? f_true() : f_false();
        }
        if (f->lhs.is_var && f->rhs.is_var)
            throw FragmentError(
                "internal procedure cannot decide variable-to-variable atom: " +
                render_formula(f));
        return neg ? f_atom(f->lhs, op, f->rhs) : f;
    }
    case FKind::Not:
        return nnf(f->a, !neg);
    case FKind::And:
        return neg ? f_or(nnf(f->a, true), nnf(f->b, true))
                   : f_and(nnf(f->a, false), nnf(f->b, false));
    case FKind::Or:
        return neg ? f_and(nnf(f->a, true), nnf(f->b, true))
                   : f_or(nnf(f->a, false), nnf(f->b, false));
    case FKind::Implies:
        return neg ? f_and(nnf(f->a, false), nnf(f->b, true))
                   : f_or(nnf(f->a, true), nnf(f->b, false));
    case FKind::Xor:
        // a xor b  =  (a and not b) or (not a and b); negation gives iff.
        if (!neg)
            return f_or(f_and(nnf(f->a, false), nnf(f->b, true)),
                        f_and(nnf(f->a, true), nnf(f->b, false)));
        return f_or(f_and(nnf(f->a, false), nnf(f->b, false)),
                    f_and(nnf(f->a, true), nnf(f->b, true)));
    case FKind::Iff:
        if (!neg)
            return f_or(f_and(nnf(f->a, false), nnf(f->b, false)),
                        f_and(nnf(f->a, true), nnf(f->b, true)));
        return f_or(f_and(nnf(f->a, false), nnf(f->b, true)),
                    f_and(nnf(f->a, true), nnf(f->b, false)));
    }
    return f;
}

// An atom of the NNF: either a Boolean variable or an integer comparison.
struct Atom {
    bool is_bool = false;
    std::string bool_name;
    FormulaPtr int_atom; // IntAtom node
};

bool same_atom(const Atom& x, const FormulaPtr& f) {
    if (f->kind == FKind::BoolVar)
        return x.is_bool && x.bool_name == f->name;
    return !x.is_bool && structurally_equal(x.int_atom, f);
}

void collect_atoms(const FormulaPtr& f, std::vector<Atom>& atoms) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
        return;
    case FKind::BoolVar:
    case FKind::IntAtom: {
        for (const auto& a : atoms)
            if (same_atom(a, f))
                return;
        Atom a;
        if (f->kind == FKind::BoolVar) {
            a.is_bool = true;
            a.bool_name = f->name;
        } else {
            a.int_atom = f;
        }
        atoms.push_back(std::move(a));
        return;
    }
    case FKind::Not: // only over BoolVar after NNF
        collect_atoms(f->a, atoms);
        return;
    default:
        collect_atoms(f->a, atoms);
        collect_atoms(f->b, atoms);
        return;
    }
}

int atom_index(const std::vector<Atom>& atoms, const FormulaPtr& f) {
    for (size_t i = 0; i < atoms.size(); ++i)
        if (same_atom(atoms[i], f))
            return static_cast<int>(i);
    return -1;
}

bool eval_under(const FormulaPtr& f, const std::vector<Atom>& atoms,
                unsigned long mask) {
    switch (f->kind) {
    case FKind::True:
        return true;
    case FKind::False:
        return false;
    case FKind::BoolVar:
    case FKind::IntAtom:
        return (mask >> atom_index(atoms, f)) & 1u;
    case FKind::Not:
        return !eval_under(f->a, atoms, mask);
    case FKind::And:
        return eval_under(f->a, atoms, mask) && eval_under(f->b, atoms, mask);
    case FKind::Or:
        return eval_under(f->a, atoms, mask) || eval_under(f->b, atoms, mask);
    default:
        return false; // NNF contains no other connectives
    }
}

// Per-variable integer constraint: a closed interval (with +/- infinity
// represented by wide sentinels) and a finite excluded-point set.
struct VarRange {
    long long lb = LLONG_MIN;
    long long ub = LLONG_MAX;
    bool lb_finite = false;
    bool ub_finite = false;
    std::vector<long long> excluded;
};

void tighten_lb(VarRange& r, long long v) {
    if (!r.lb_finite || v > r.lb) {
        r.lb = v;
        r.lb_finite = true;
    }
}

void tighten_ub(VarRange& r, long long v) {
    if (!r.ub_finite || v < r.ub) {
        r.ub = v;
        r.ub_finite = true;
    }
}

// Adds "var op c" (the atom already normalized so the variable is on the
// left). Comparison constants are user-written literals, far from the
// long long edge, so the +/-1 adjustments cannot overflow.
void add_constraint(VarRange& r, IntOp op, long long c) {
    switch (op) {
    case IntOp::Lt: tighten_ub(r, c - 1); break;
    case IntOp::Le: tighten_ub(r, c); break;
    case IntOp::Gt: tighten_lb(r, c + 1); break;
    case IntOp::Ge: tighten_lb(r, c); break;
    case IntOp::Eq:
        tighten_lb(r, c);
        tighten_ub(r, c);
        break;
    case IntOp::Ne: r.excluded.push_back(c); break;
    }
}

// Mirrors "c op var" into "var op' c".
IntOp mirror_op(IntOp op) {
    switch (op) {
    case IntOp::Lt: return IntOp::Gt;
    case IntOp::Le: return IntOp::Ge;
    case IntOp::Gt: return IntOp::Lt;
    case IntOp::Ge: return IntOp::Le;
    default: return op; // Eq and Ne are symmetric
    }
}

// An interval plus finitely many excluded points contains an integer iff
// either side is unbounded or the point count exceeds the number of distinct
// excluded points inside the interval.
bool range_feasible(VarRange& r) {
    if (r.lb_finite && r.ub_finite && r.lb > r.ub)
        return false;
    if (!r.lb_finite || !r.ub_finite)
        return true;
    unsigned long long width =
        static_cast<unsigned long long>(r.ub - r.lb) + 1ull;
    std::sort(r.excluded.begin(), r.excluded.end());
    r.excluded.erase(std::unique(r.excluded.begin(), r.excluded.end()),
                     r.excluded.end());
    unsigned long long inside = 0;
    for (long long e : r.excluded)
        if (e >= r.lb && e <= r.ub)
            ++inside;
    return width > inside;
}

bool assignment_feasible(const std::vector<Atom>& atoms, unsigned long mask) {
    std::map<std::string, VarRange> ranges;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].is_bool)
            continue;
        const Formula& atom = *atoms[i].int_atom;
        bool value = (mask >> i) & 1u;
        IntOp op = value ? atom.op : negate_op(atom.op);
        if (atom.lhs.is_var)
            add_constraint(ranges[atom.lhs.var], op, atom.rhs.value);
        else
            add_constraint(ranges[atom.rhs.var], mirror_op(op), atom.lhs.value);
    }
    for (auto& [name, range] : ranges)
        if (!range_feasible(range))
            return false;
    return true;
}

} // namespace

std::string verdict_str(Verdict v) {
    switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

Verdict check_sat(const FormulaPtr& f) {
    collect_vars(f); // rejects names used with two types
    FormulaPtr n = nnf(f, false);
    std::vector<Atom> atoms;
    collect_atoms(n, atoms);
    if (atoms.size() > kMaxAtoms)
        throw FragmentError("internal procedure limit: " +
                            std::to_string(atoms.size()) +
                            " distinct atoms (limit " +
                            std::to_string(kMaxAtoms) + ")");
    unsigned long total = 1ul << atoms.size();
    for (unsigned long mask = 0; mask < total; ++mask)
        if (eval_under(n, atoms, mask) && assignment_feasible(atoms, mask))
            return Verdict::Sat;
    return Verdict::Unsat;
}

std::optional<bool> check_unsat(const FormulaPtr& f) {
    return check_sat(f) == Verdict::Unsat;
}

bool entails(const FormulaPtr& c, const FormulaPtr& d) {
    return check_sat(f_and(c, f_not(d))) == Verdict::Unsat;
}

std::optional<bool> check_unsat_with(const SatProcedure& sat,
                                     const FormulaPtr& f) {
    Verdict v = sat(f);
    if (v == Verdict::Unknown)
        return std::nullopt;
    return v == Verdict::Unsat;
}

bool entails_with(const SatProcedure& sat, const FormulaPtr& c,
                  const FormulaPtr& d) {
    Verdict v = sat(f_and(c, f_not(d)));
    if (v == Verdict::Unknown)
        throw std::runtime_error(
            "entailment check returned unknown; refusing to guess");
    return v == Verdict::Unsat;
}

} // namespace sscc
