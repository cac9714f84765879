#pragma once

#include "sscc/agent.hpp"
#include "sscc/formula.hpp"
#include "sscc/random.hpp"

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sscc {

// Process syntax. TellChild is the internal child-registration command the
// space rule spawns at the parent; it has no dedicated surface form beyond
// tell(<nat>). Watch is the searching agent: when its target is entailed at
// the current space it runs its action, otherwise it wraps one random move
// (out or into a registered child) around itself and retries there.
enum class CKind {
    Nil,
    Tell,      // post a formula into the local store
    TellChild, // register a child index in the local child set
    Ask,       // guard -> body, re-checked every round until entailed
    Par,       // binary parallel composition
    In,        // run body one level deeper (creates the child space)
    Out,       // run body in the parent space (index must match location)
    Var,       // recursion variable
    Mu,        // recursion binder
    Exc,       // exclusive probabilistic choice (probs sum to 1)
    Ind,       // independent probabilistic inclusion (each prob separate)
    Watch,     // action + target formula
};

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Command {
    CKind kind = CKind::Nil;

    FormulaPtr formula; // Tell payload, Ask guard, Watch target

    unsigned n = 0; // TellChild/In/Out index, Var/Mu binder

    CommandPtr a; // Ask body, Par left, In/Out/Mu body, Watch action
    CommandPtr b; // Par right

    std::vector<CommandPtr> cmds; // Exc/Ind candidates
    std::vector<double> probs;    // Exc/Ind probabilities
};

CommandPtr c_nil();
CommandPtr c_tell(FormulaPtr f);
CommandPtr c_tell_child(unsigned n);
CommandPtr c_ask(FormulaPtr guard, CommandPtr body);
CommandPtr c_par(CommandPtr left, CommandPtr right);
CommandPtr c_in(CommandPtr body, unsigned n);
CommandPtr c_out(CommandPtr body, unsigned n);
CommandPtr c_var(unsigned n);
CommandPtr c_mu(unsigned binder, CommandPtr body);
// Validates |cmds| == |probs| >= 1, each prob in [0,1] and, for exclusive
// choice, a total within 1e-9 of 1.
CommandPtr c_exc(std::vector<CommandPtr> cmds, std::vector<double> probs);
CommandPtr c_ind(std::vector<CommandPtr> cmds, std::vector<double> probs);
CommandPtr c_watch(CommandPtr action, FormulaPtr target);

bool commands_equal(const CommandPtr& x, const CommandPtr& y);

// Substitutes `sub` for free occurrences of Var(n) in `body`. Substitution
// never descends into any Mu node — inner binders are left untouched, which
// also implements shadowing.
CommandPtr replace(unsigned n, const CommandPtr& body, const CommandPtr& sub);

// True when every Var(k) occurs under some Mu(k).
bool is_closed(const CommandPtr& c);

// Advisory lint: reports recursion that can respawn without consuming time
// (e.g. mu 0 . V(0)) and recursion variables that sit under a different
// binder, which substitution will never rewrite.
std::vector<std::string> lint_recursion(const CommandPtr& c);

// Moves available to a searching agent at `loc`: out of the current space
// first (when not at the root), then into each registered child in
// ascending order, each wrapping the given command.
std::vector<CommandPtr> command_list(const AgentId& loc,
                                     const std::set<unsigned>& children,
                                     const CommandPtr& c);

// n uniform draws normalized by their sum; the list is accumulated by
// prepending, so it carries the draws in reverse draw order (kept that way
// for trace-level reproducibility of the source semantics). Advances the
// counter by exactly n.
std::pair<std::vector<double>, SampleCounter> prob_list(std::size_t n,
                                                        SampleCounter c);

// Canonical surface text (the spec-file command grammar).
std::string render_command(const CommandPtr& c);

// Shortest double text that parses back to the identical value.
std::string double_str(double d);

} // namespace sscc
