#include "sscc/command.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sscc {
namespace {

std::shared_ptr<Command> make(CKind k) {
    auto c = std::make_shared<Command>();
    c->kind = k;
    return c;
}

void validate_choice(const std::vector<CommandPtr>& cmds,
                     const std::vector<double>& probs, bool exclusive) {
    if (cmds.empty())
        throw std::invalid_argument("choice needs at least one candidate");
    if (cmds.size() != probs.size())
        throw std::invalid_argument("choice candidate/probability count mismatch");
    double sum = 0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("choice probability outside [0, 1]");
        sum += p;
    }
    if (exclusive && std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("exclusive choice probabilities must sum to 1");
}

// Guardedness walk for the lint: looks for Var(binder) reachable without
// crossing a command that consumes simulation structure (ask/tell/in/out
// all take a scheduling round; choice candidates do too once selected, but
// a chosen Var respawns at cost zero, so choices do not guard).
bool reaches_unguarded(const CommandPtr& c, unsigned binder) {
    switch (c->kind) {
    case CKind::Var:
        return c->n == binder;
    case CKind::Par:
        return reaches_unguarded(c->a, binder) || reaches_unguarded(c->b, binder);
    case CKind::Exc:
    case CKind::Ind:
        for (const auto& k : c->cmds)
            if (reaches_unguarded(k, binder))
                return true;
        return false;
    case CKind::Mu:
        // An inner binder never rebinds for the outer mu (substitution does
        // not descend), but it does not guard either.
        return reaches_unguarded(c->a, binder);
    default:
        return false;
    }
}

void closed_walk(const CommandPtr& c, std::vector<unsigned>& binders, bool& ok) {
    switch (c->kind) {
    case CKind::Var: {
        for (unsigned b : binders)
            if (b == c->n)
                return;
        ok = false;
        return;
    }
    case CKind::Mu:
        binders.push_back(c->n);
        closed_walk(c->a, binders, ok);
        binders.pop_back();
        return;
    case CKind::Ask:
    case CKind::In:
    case CKind::Out:
    case CKind::Watch:
        closed_walk(c->a, binders, ok);
        return;
    case CKind::Par:
        closed_walk(c->a, binders, ok);
        closed_walk(c->b, binders, ok);
        return;
    case CKind::Exc:
    case CKind::Ind:
        for (const auto& k : c->cmds)
            closed_walk(k, binders, ok);
        return;
    default:
        return;
    }
}

void lint_walk(const CommandPtr& c, std::vector<std::string>& out) {
    switch (c->kind) {
    case CKind::Mu:
        if (reaches_unguarded(c->a, c->n))
            out.push_back("unguarded recursion: V(" + std::to_string(c->n) +
                          ") can respawn mu " + std::to_string(c->n) +
                          " without consuming time");
        lint_walk(c->a, out);
        return;
    case CKind::Ask:
    case CKind::In:
    case CKind::Out:
    case CKind::Watch:
        lint_walk(c->a, out);
        return;
    case CKind::Par:
        lint_walk(c->a, out);
        lint_walk(c->b, out);
        return;
    case CKind::Exc:
    case CKind::Ind:
        for (const auto& k : c->cmds)
            lint_walk(k, out);
        return;
    default:
        return;
    }
}

// Cross-binder references: Var(n) whose nearest enclosing binder is some
// other Mu(m). Substitution of the outer Mu(n) stops at Mu(m), so such a
// variable reaches the scheduler unsubstituted and the run errors out.
void cross_binder_walk(const CommandPtr& c, std::vector<unsigned>& binders,
                       std::vector<std::string>& out) {
    switch (c->kind) {
    case CKind::Var:
        if (!binders.empty() && binders.back() != c->n)
            out.push_back("recursion variable V(" + std::to_string(c->n) +
                          ") sits under binder mu " +
                          std::to_string(binders.back()) +
                          "; substitution will never reach it");
        return;
    case CKind::Mu:
        binders.push_back(c->n);
        cross_binder_walk(c->a, binders, out);
        binders.pop_back();
        return;
    case CKind::Ask:
    case CKind::In:
    case CKind::Out:
    case CKind::Watch:
        cross_binder_walk(c->a, binders, out);
        return;
    case CKind::Par:
        cross_binder_walk(c->a, binders, out);
        cross_binder_walk(c->b, binders, out);
        return;
    case CKind::Exc:
    case CKind::Ind:
        for (const auto& k : c->cmds)
            cross_binder_walk(k, binders, out);
        return;
    default:
        return;
    }
}

// Rendering levels: a parallel composition binds loosest among the operator
// forms, in/out postfixes bind tighter, and bracketed forms are atomic.
// ask and mu consume everything to their right, so they parenthesize
// anywhere a tighter level is required.
enum Level { kAsk = 0, kPar = 1, kPostfix = 2, kPrimary = 3 };

std::string render(const CommandPtr& c, int need) {
    std::string body;
    int level = kPrimary;
    switch (c->kind) {
    case CKind::Nil:
        return "0";
    case CKind::Tell:
        return "tell(" + render_formula(c->formula) + ")";
    case CKind::TellChild:
        return "tell(" + std::to_string(c->n) + ")";
    case CKind::Var:
        return "V(" + std::to_string(c->n) + ")";
    case CKind::Watch:
        return "watch(" + render(c->a, kAsk) + ", " + render_formula(c->formula) + ")";
    case CKind::Exc:
    case CKind::Ind: {
        body = c->kind == CKind::Exc ? "exc{ " : "ind{ ";
        for (std::size_t i = 0; i < c->cmds.size(); ++i) {
            if (i)
                body += ", ";
            body += render(c->cmds[i], kAsk) + " : " + double_str(c->probs[i]);
        }
        return body + " }";
    }
    case CKind::Ask:
        body = "ask " + render_formula(c->formula) + " -> " + render(c->a, kAsk);
        level = kAsk;
        break;
    case CKind::Mu:
        body = "mu " + std::to_string(c->n) + " . " + render(c->a, kAsk);
        level = kAsk;
        break;
    case CKind::Par:
        // Right-associative: the left operand must bind tighter.
        body = render(c->a, kPostfix) + " || " + render(c->b, kPar);
        level = kPar;
        break;
    case CKind::In:
    case CKind::Out:
        body = render(c->a, kPostfix) + (c->kind == CKind::In ? " in " : " out ") +
               std::to_string(c->n);
        level = kPostfix;
        break;
    }
    return level < need ? "(" + body + ")" : body;
}

} // namespace

CommandPtr c_nil() {
    static const CommandPtr n = make(CKind::Nil);
    return n;
}

CommandPtr c_tell(FormulaPtr f) {
    auto c = make(CKind::Tell);
    c->formula = std::move(f);
    return c;
}

CommandPtr c_tell_child(unsigned n) {
    auto c = make(CKind::TellChild);
    c->n = n;
    return c;
}

CommandPtr c_ask(FormulaPtr guard, CommandPtr body) {
    auto c = make(CKind::Ask);
    c->formula = std::move(guard);
    c->a = std::move(body);
    return c;
}

CommandPtr c_par(CommandPtr left, CommandPtr right) {
    auto c = make(CKind::Par);
    c->a = std::move(left);
    c->b = std::move(right);
    return c;
}

CommandPtr c_in(CommandPtr body, unsigned n) {
    auto c = make(CKind::In);
    c->a = std::move(body);
    c->n = n;
    return c;
}

CommandPtr c_out(CommandPtr body, unsigned n) {
    auto c = make(CKind::Out);
    c->a = std::move(body);
    c->n = n;
    return c;
}

CommandPtr c_var(unsigned n) {
    auto c = make(CKind::Var);
    c->n = n;
    return c;
}

CommandPtr c_mu(unsigned binder, CommandPtr body) {
    auto c = make(CKind::Mu);
    c->n = binder;
    c->a = std::move(body);
    return c;
}

CommandPtr c_exc(std::vector<CommandPtr> cmds, std::vector<double> probs) {
    validate_choice(cmds, probs, true);
    auto c = make(CKind::Exc);
    c->cmds = std::move(cmds);
    c->probs = std::move(probs);
    return c;
}

CommandPtr c_ind(std::vector<CommandPtr> cmds, std::vector<double> probs) {
    validate_choice(cmds, probs, false);
    auto c = make(CKind::Ind);
    c->cmds = std::move(cmds);
    c->probs = std::move(probs);
    return c;
}

CommandPtr c_watch(CommandPtr action, FormulaPtr target) {
    auto c = make(CKind::Watch);
    c->a = std::move(action);
    c->formula = std::move(target);
    return c;
}

bool commands_equal(const CommandPtr& x, const CommandPtr& y) {
    if (x.get() == y.get())
        return true;
    if (x->kind != y->kind || x->n != y->n)
        return false;
    if ((x->formula != nullptr) != (y->formula != nullptr))
        return false;
    if (x->formula && !structurally_equal(x->formula, y->formula))
        return false;
    if ((x->a != nullptr) != (y->a != nullptr) ||
        (x->b != nullptr) != (y->b != nullptr))
        return false;
    if (x->a && !commands_equal(x->a, y->a))
        return false;
    if (x->b && !commands_equal(x->b, y->b))
        return false;
    if (x->cmds.size() != y->cmds.size() || x->probs != y->probs)
        return false;
    for (std::size_t i = 0; i < x->cmds.size(); ++i)
        if (!commands_equal(x->cmds[i], y->cmds[i]))
            return false;
    return true;
}

CommandPtr replace(unsigned n, const CommandPtr& body, const CommandPtr& sub) {
    switch (body->kind) {
    case CKind::Nil:
    case CKind::Tell:
    case CKind::TellChild:
        return body;
    case CKind::Var:
        return body->n == n ? sub : body;
    case CKind::Mu:
        return body; // substitution never enters a binder
    case CKind::Ask:
        return c_ask(body->formula, replace(n, body->a, sub));
    case CKind::Par:
        return c_par(replace(n, body->a, sub), replace(n, body->b, sub));
    case CKind::In:
        return c_in(replace(n, body->a, sub), body->n);
    case CKind::Out:
        return c_out(replace(n, body->a, sub), body->n);
    case CKind::Watch:
        return c_watch(replace(n, body->a, sub), body->formula);
    case CKind::Exc:
    case CKind::Ind: {
        std::vector<CommandPtr> cmds;
        cmds.reserve(body->cmds.size());
        for (const auto& k : body->cmds)
            cmds.push_back(replace(n, k, sub));
        return body->kind == CKind::Exc ? c_exc(std::move(cmds), body->probs)
                                        : c_ind(std::move(cmds), body->probs);
    }
    }
    return body;
}

bool is_closed(const CommandPtr& c) {
    bool ok = true;
    std::vector<unsigned> binders;
    closed_walk(c, binders, ok);
    return ok;
}

std::vector<std::string> lint_recursion(const CommandPtr& c) {
    std::vector<std::string> out;
    lint_walk(c, out);
    std::vector<unsigned> binders;
    cross_binder_walk(c, binders, out);
    return out;
}

std::vector<CommandPtr> command_list(const AgentId& loc,
                                     const std::set<unsigned>& children,
                                     const CommandPtr& c) {
    std::vector<CommandPtr> moves;
    if (!loc.is_root())
        moves.push_back(c_out(c, loc.path.front()));
    for (unsigned n : children) // std::set iterates ascending
        moves.push_back(c_in(c, n));
    return moves;
}

std::pair<std::vector<double>, SampleCounter> prob_list(std::size_t n,
                                                        SampleCounter c) {
    std::vector<double> probs;
    probs.reserve(n);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [q, next] = sample_prob(c);
        c = next;
        probs.insert(probs.begin(), q); // prepend: reverse draw order
        sum += q;
    }
    for (double& p : probs)
        p /= sum;
    return {std::move(probs), c};
}

std::string render_command(const CommandPtr& c) { return render(c, kAsk); }

std::string double_str(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, end);
}

} // namespace sscc
