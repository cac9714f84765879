#pragma once

#include "sscc/formula.hpp"
#include "sscc/solver.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sscc {

// External solver hookup: satisfiability questions are serialized as a
// QF_LIA SMT-LIB2 script and piped to a solver process over stdin/stdout.
// The bridge is only consulted when configured; the internal procedure
// remains the default backend.

struct SmtConfig {
    std::string solver_path;
    std::vector<std::string> args; // e.g. {"-in"} for solvers that need a flag to read stdin
    int timeout_ms = 5000;
};

class SmtError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Full request script: logic declaration, one declare-const per variable,
// the assertion, and check-sat.
std::string to_smtlib2(const FormulaPtr& f);

// Runs one check-sat round trip. A timeout yields Unknown; a crash or
// unparseable reply raises SmtError carrying the captured stderr.
Verdict solve_external(const FormulaPtr& f, const SmtConfig& cfg);

// SatProcedure adapter for the engine/CLI.
SatProcedure external_sat_procedure(SmtConfig cfg);

} // namespace sscc
