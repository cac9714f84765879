#pragma once

#include "sscc/formula.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace sscc {

enum class Verdict { Sat, Unsat, Unknown };

std::string verdict_str(Verdict v);

// Raised when a formula falls outside what the internal decision procedure
// handles (variable-to-variable comparisons, mixed-type names, or an atom
// count past the enumeration limit). The message names the offending part.
class FragmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal decision procedure: rewrite to negation normal form, enumerate
// truth assignments over the distinct atoms, and accept an assignment when
// its integer literals are jointly feasible. Feasibility per variable is an
// interval intersection plus finitely many excluded points, decided by
// counting integers. Complete on the supported fragment, so it never
// answers Unknown.
Verdict check_sat(const FormulaPtr& f);

// True iff f is unsatisfiable, false iff satisfiable, nullopt when the
// backend cannot tell (only possible with an external solver).
std::optional<bool> check_unsat(const FormulaPtr& f);

// c entails d iff c /\ not d is unsatisfiable.
bool entails(const FormulaPtr& c, const FormulaPtr& d);

// Pluggable satisfiability backend (the engine can be pointed at an external
// solver). An Unknown verdict is surfaced as an error by entails_with —
// entailment used by the interpreter must never silently guess.
using SatProcedure = std::function<Verdict(const FormulaPtr&)>;

std::optional<bool> check_unsat_with(const SatProcedure& sat, const FormulaPtr& f);
bool entails_with(const SatProcedure& sat, const FormulaPtr& c, const FormulaPtr& d);

} // namespace sscc
