#pragma once

#include "sscc/engine.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sscc {

// A parsed system-description file: global simulation parameters, the four
// duration maps, the initial space tree with its stores, and the processes
// seeded at time zero.

struct AgentDecl {
    AgentId id;
    FormulaPtr store;
    std::set<unsigned> children; // registered child indices, as declared
};

struct ProcessDecl {
    AgentId location;
    CommandPtr command;
};

struct SystemSpec {
    std::uint64_t seed = 0;
    mpq_class factor = 1; // store-size penalty scale for asks
    TimeValue max_time;   // required in every spec file
    TimeMaps maps;
    std::vector<AgentDecl> agents;
    std::vector<ProcessDecl> processes;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg);

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// Parses the surface grammar:
//   system { item* }
//   item := seed NAT | factor RATIONAL | maxtime RATIONAL
//         | timemap KIND AID -> DIST
//         | agent AID { store FORMULA [children NAT+] }
//         | process @ AID : CMD
// Reports syntax errors with line/column and rejects semantically broken
// input (probabilities of an exclusive choice not summing to 1, unknown time
// map kinds, recursion variables outside their binder, a missing maxtime).
SystemSpec parse_spec(const std::string& text);
SystemSpec parse_spec_file(const std::string& path);

// Parse one bare FORMULA / CMD in the same grammar (used by command-line
// arguments). Everything up to the end of the text must belong to it.
FormulaPtr parse_formula_text(const std::string& text);
CommandPtr parse_command_text(const std::string& text);

// Canonical text form; parse_spec(render_spec(s)) reproduces s exactly.
std::string render_spec(const SystemSpec& s);

bool specs_equal(const SystemSpec& a, const SystemSpec& b);

// Builds the initial configuration: declared agents (with every ancestor
// ensured) and declared processes scheduled at time zero with uids 1, 2, ...
// in declaration order. Child sets are exactly the declared ones; nothing is
// auto-registered. A nil process burns its uid but is neither stored nor
// scheduled.
Configuration to_configuration(const SystemSpec& s);

} // namespace sscc
