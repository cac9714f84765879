#include "sscc/specfile.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace sscc {
namespace {

struct Token {
    enum Kind { Number, Ident, Sym, End };
    Kind kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < n) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') { // line comment
            while (i < n && text[i] != '\n')
                advance(1);
            continue;
        }

        Token t;
        t.line = line;
        t.col = col;

        auto starts = [&](const char* s) {
            return text.compare(i, std::char_traits<char>::length(s), s) == 0;
        };

        // Numbers: optional sign, digits, at most one fraction part, an
        // optional exponent. A second '.' is left for the agent-id grammar.
        bool neg_number = c == '-' && i + 1 < n &&
                          std::isdigit(static_cast<unsigned char>(text[i + 1]));
        if (std::isdigit(static_cast<unsigned char>(c)) || neg_number) {
            std::size_t j = i + (neg_number ? 1 : 0);
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j + 1 < n && text[j] == '.' &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < n && std::isdigit(static_cast<unsigned char>(text[j])))
                    ++j;
            }
            if (j < n && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (text[k] == '+' || text[k] == '-'))
                    ++k;
                if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < n && std::isdigit(static_cast<unsigned char>(text[k])))
                        ++k;
                    j = k;
                }
            }
            t.kind = Token::Number;
            t.text = text.substr(i, j - i);
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && is_ident_char(text[j]))
                ++j;
            t.kind = Token::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }

        t.kind = Token::Sym;
        for (const char* s : {"===", "=/=", "->", "||", "<=", ">=", "==", "!="}) {
            if (starts(s)) {
                t.text = s;
                break;
            }
        }
        if (t.text.empty()) {
            if (std::string("{}(),:@./<>").find(c) != std::string::npos) {
                t.text = std::string(1, c);
            } else {
                fail(t, std::string("unexpected character '") + c + "'");
            }
        }
        advance(t.text.size());
        out.push_back(std::move(t));
    }

    Token end;
    end.kind = Token::End;
    end.text = "<end of input>";
    end.line = line;
    end.col = col;
    out.push_back(std::move(end));
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    SystemSpec parse() {
        expect_ident("system");
        expect_sym("{");
        SystemSpec s;
        bool saw_maxtime = false;
        while (!at_sym("}")) {
            const Token& t = peek();
            if (t.kind != Token::Ident)
                fail(t, "expected a declaration keyword");
            if (t.text == "seed") {
                next();
                s.seed = parse_nat64();
            } else if (t.text == "factor") {
                next();
                s.factor = parse_nonneg_rational("factor");
            } else if (t.text == "maxtime") {
                next();
                s.max_time = TimeValue(parse_nonneg_rational("maxtime"));
                saw_maxtime = true;
            } else if (t.text == "timemap") {
                next();
                parse_timemap(s);
            } else if (t.text == "agent") {
                next();
                parse_agent(s);
            } else if (t.text == "process") {
                next();
                parse_process(s);
            } else {
                fail(t, "unknown declaration '" + t.text + "'");
            }
        }
        const Token& close = peek();
        expect_sym("}");
        if (peek().kind != Token::End)
            fail(peek(), "trailing input after the closing '}'");
        if (!saw_maxtime)
            fail(close, "maxtime is required");
        return s;
    }

    FormulaPtr parse_bare_formula() {
        FormulaPtr f = parse_formula();
        if (peek().kind != Token::End)
            fail(peek(), "trailing input after the formula");
        return f;
    }

    CommandPtr parse_bare_command() {
        CommandPtr c = parse_cmd();
        if (peek().kind != Token::End)
            fail(peek(), "trailing input after the command");
        if (!is_closed(c))
            fail(toks_.front(), "recursion variable outside its binder");
        return c;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool at_sym(const char* s) const {
        return peek().kind == Token::Sym && peek().text == s;
    }
    bool at_ident(const char* s) const {
        return peek().kind == Token::Ident && peek().text == s;
    }
    void expect_sym(const char* s) {
        if (!at_sym(s))
            fail(peek(), std::string("expected '") + s + "'");
        next();
    }
    void expect_ident(const char* s) {
        if (!at_ident(s))
            fail(peek(), std::string("expected '") + s + "'");
        next();
    }
    bool eat_sym(const char* s) {
        if (!at_sym(s))
            return false;
        next();
        return true;
    }

    // ---- numbers -------------------------------------------------------

    static bool all_digits(const std::string& s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    }

    std::uint64_t parse_nat64() {
        const Token& t = peek();
        if (t.kind != Token::Number || !all_digits(t.text))
            fail(t, "expected a natural number");
        next();
        return std::stoull(t.text);
    }

    unsigned parse_nat() {
        const Token& t = peek();
        std::uint64_t v = parse_nat64();
        if (v > 0xffffffffULL)
            fail(t, "index out of range");
        return static_cast<unsigned>(v);
    }

    double parse_double() {
        const Token& t = peek();
        if (t.kind != Token::Number)
            fail(t, "expected a number");
        next();
        char* end = nullptr;
        double v = std::strtod(t.text.c_str(), &end);
        if (end != t.text.c_str() + t.text.size())
            fail(t, "malformed number '" + t.text + "'");
        return v;
    }

    mpq_class parse_rat() {
        const Token& t = peek();
        if (t.kind != Token::Number)
            fail(t, "expected a rational (p, p/q or a decimal)");
        next();
        std::string text = t.text;
        if (at_sym("/")) {
            next();
            const Token& den = peek();
            if (den.kind != Token::Number || !all_digits(den.text))
                fail(den, "expected a natural denominator");
            next();
            text += "/" + den.text;
        }
        try {
            return parse_rational(text);
        } catch (const std::invalid_argument& e) {
            fail(t, e.what());
        }
    }

    mpq_class parse_nonneg_rational(const char* what) {
        const Token& t = peek();
        mpq_class q = parse_rat();
        if (q < 0)
            fail(t, std::string(what) + " must be nonnegative");
        return q;
    }

    // ---- agent ids -----------------------------------------------------

    AgentId parse_aid() {
        AgentId a;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Token::Ident && t.text == "root") {
                next();
                return a;
            }
            if (t.kind != Token::Number)
                fail(t, "expected an agent id (NAT '.' ... 'root')");
            // A lexed decimal like "3.1" carries two path components.
            std::size_t start = 0;
            const std::string& s = t.text;
            while (start <= s.size()) {
                std::size_t dot = s.find('.', start);
                std::string part = s.substr(start, dot == std::string::npos
                                                       ? std::string::npos
                                                       : dot - start);
                if (!all_digits(part))
                    fail(t, "malformed agent id component '" + part + "'");
                a.path.push_back(static_cast<unsigned>(std::stoul(part)));
                if (dot == std::string::npos)
                    break;
                start = dot + 1;
            }
            next();
            expect_sym(".");
        }
    }

    // ---- distributions -------------------------------------------------

    StochasticExpression parse_dist() {
        const Token& t = peek();
        if (t.kind != Token::Ident)
            fail(t, "expected a distribution");
        std::string name = t.text;
        next();
        expect_sym("(");
        try {
            if (name == "Const") {
                mpq_class v = parse_nonneg_rational("Const value");
                expect_sym(")");
                return StochasticExpression::constant(std::move(v));
            }
            double a = parse_double();
            if (name == "Exp" || name == "Chi") {
                expect_sym(")");
                return name == "Exp" ? StochasticExpression::exponential(a)
                                     : StochasticExpression::chi(a);
            }
            expect_sym(",");
            double b = parse_double();
            expect_sym(")");
            if (name == "Norm")
                return StochasticExpression::norm(a, b);
            if (name == "Unif")
                return StochasticExpression::unif(a, b);
            if (name == "Gam")
                return StochasticExpression::gam(a, b);
            if (name == "Weib")
                return StochasticExpression::weib(a, b);
            if (name == "Log")
                return StochasticExpression::log_norm(a, b);
            fail(t, "unknown distribution '" + name + "'");
        } catch (const std::invalid_argument& e) {
            fail(t, name + ": " + e.what());
        }
    }

    // ---- formulas ------------------------------------------------------

    bool at_cmp_op() const {
        if (peek().kind != Token::Sym)
            return false;
        const std::string& s = peek().text;
        return s == "<" || s == "<=" || s == ">" || s == ">=" || s == "==" ||
               s == "===" || s == "!=" || s == "=/=";
    }

    IntOp cmp_op(const std::string& s) {
        if (s == "<")
            return IntOp::Lt;
        if (s == "<=")
            return IntOp::Le;
        if (s == ">")
            return IntOp::Gt;
        if (s == ">=")
            return IntOp::Ge;
        if (s == "==" || s == "===")
            return IntOp::Eq;
        return IntOp::Ne; // "!=" or "=/="
    }

    IntTerm parse_int_term() {
        const Token& t = peek();
        if (t.kind == Token::Ident) {
            next();
            return IntTerm::variable(t.text);
        }
        if (t.kind == Token::Number && t.text.find('.') == std::string::npos &&
            t.text.find('e') == std::string::npos &&
            t.text.find('E') == std::string::npos) {
            next();
            return IntTerm::constant(std::stoll(t.text));
        }
        fail(t, "expected a variable or an integer");
    }

    FormulaPtr parse_formula() { return parse_iff(); }

    FormulaPtr parse_iff() {
        FormulaPtr f = parse_implies();
        while (at_ident("iff")) {
            next();
            f = f_iff(std::move(f), parse_implies());
        }
        return f;
    }

    FormulaPtr parse_implies() {
        FormulaPtr f = parse_or();
        if (at_ident("implies")) {
            next();
            return f_implies(std::move(f), parse_implies()); // right-assoc
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_xor();
        while (at_ident("or")) {
            next();
            f = f_or(std::move(f), parse_xor());
        }
        return f;
    }

    FormulaPtr parse_xor() {
        FormulaPtr f = parse_and();
        while (at_ident("xor")) {
            next();
            f = f_xor(std::move(f), parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_funary();
        while (at_ident("and")) {
            next();
            f = f_and(std::move(f), parse_funary());
        }
        return f;
    }

    FormulaPtr parse_funary() {
        if (at_ident("not")) {
            next();
            return f_not(parse_funary());
        }
        return parse_fprimary();
    }

    FormulaPtr parse_fprimary() {
        const Token& t = peek();
        if (at_sym("(")) {
            next();
            FormulaPtr f = parse_formula();
            expect_sym(")");
            return f;
        }
        if (t.kind != Token::Ident)
            fail(t, "expected a formula");
        if (t.text == "true") {
            next();
            return f_true();
        }
        if (t.text == "false") {
            next();
            return f_false();
        }
        std::string name = t.text;
        next();
        if (at_cmp_op()) {
            IntOp op = cmp_op(peek().text);
            next();
            return f_atom(IntTerm::variable(std::move(name)), op, parse_int_term());
        }
        return f_bvar(std::move(name));
    }

    // ---- commands ------------------------------------------------------

    CommandPtr parse_cmd() {
        if (at_ident("ask")) {
            next();
            FormulaPtr guard = parse_formula();
            expect_sym("->");
            return c_ask(std::move(guard), parse_cmd());
        }
        if (at_ident("mu")) {
            next();
            unsigned n = parse_nat();
            expect_sym(".");
            return c_mu(n, parse_cmd());
        }
        CommandPtr lhs = parse_postfix();
        if (at_sym("||")) {
            next();
            return c_par(std::move(lhs), parse_cmd()); // right-assoc
        }
        return lhs;
    }

    CommandPtr parse_postfix() {
        CommandPtr c = parse_cprimary();
        for (;;) {
            if (at_ident("in")) {
                next();
                c = c_in(std::move(c), parse_nat());
            } else if (at_ident("out")) {
                next();
                c = c_out(std::move(c), parse_nat());
            } else {
                return c;
            }
        }
    }

    std::pair<std::vector<CommandPtr>, std::vector<double>> parse_choice_body() {
        expect_sym("{");
        std::vector<CommandPtr> cmds;
        std::vector<double> probs;
        do {
            cmds.push_back(parse_cmd());
            expect_sym(":");
            probs.push_back(parse_double());
            eat_sym(","); // the separator is optional
        } while (!at_sym("}"));
        next();
        return {std::move(cmds), std::move(probs)};
    }

    CommandPtr parse_cprimary() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            if (t.text != "0")
                fail(t, "expected a command ('0' is the only literal)");
            next();
            return c_nil();
        }
        if (at_sym("(")) {
            next();
            CommandPtr c = parse_cmd();
            expect_sym(")");
            return c;
        }
        if (t.kind != Token::Ident)
            fail(t, "expected a command");
        if (t.text == "tell") {
            next();
            expect_sym("(");
            // tell(<nat>) registers a child index; tell(<formula>) posts.
            if (peek().kind == Token::Number && all_digits(peek().text) &&
                peek(1).kind == Token::Sym && peek(1).text == ")") {
                unsigned n = parse_nat();
                expect_sym(")");
                return c_tell_child(n);
            }
            FormulaPtr f = parse_formula();
            expect_sym(")");
            return c_tell(std::move(f));
        }
        if (t.text == "V") {
            next();
            expect_sym("(");
            unsigned n = parse_nat();
            expect_sym(")");
            return c_var(n);
        }
        if (t.text == "exc" || t.text == "ind") {
            bool exclusive = t.text == "exc";
            next();
            auto [cmds, probs] = parse_choice_body();
            try {
                return exclusive ? c_exc(std::move(cmds), std::move(probs))
                                 : c_ind(std::move(cmds), std::move(probs));
            } catch (const std::invalid_argument& e) {
                fail(t, e.what());
            }
        }
        if (t.text == "watch") {
            next();
            expect_sym("(");
            CommandPtr action = parse_cmd();
            expect_sym(",");
            FormulaPtr target = parse_formula();
            expect_sym(")");
            return c_watch(std::move(action), std::move(target));
        }
        fail(t, "expected a command, got '" + t.text + "'");
    }

    // ---- items ---------------------------------------------------------

    void parse_timemap(SystemSpec& s) {
        const Token& kind_tok = peek();
        if (kind_tok.kind != Token::Ident)
            fail(kind_tok, "expected a time map kind");
        std::string kind = kind_tok.text;
        TimeMaps::Map* m = nullptr;
        if (kind == "tell")
            m = &s.maps.tell;
        else if (kind == "ask")
            m = &s.maps.ask;
        else if (kind == "space")
            m = &s.maps.space;
        else if (kind == "extrusion")
            m = &s.maps.extrusion;
        else
            fail(kind_tok, "unknown time map kind '" + kind + "'");
        next();
        const Token& aid_tok = peek();
        AgentId aid = parse_aid();
        expect_sym("->");
        StochasticExpression e = parse_dist();
        if (!m->emplace(aid, std::move(e)).second)
            fail(aid_tok, "duplicate " + kind + " time map entry for " + aid.str());
    }

    void parse_agent(SystemSpec& s) {
        const Token& aid_tok = peek();
        AgentDecl d;
        d.id = parse_aid();
        for (const AgentDecl& prev : s.agents)
            if (prev.id == d.id)
                fail(aid_tok, "duplicate agent declaration for " + d.id.str());
        expect_sym("{");
        expect_ident("store");
        d.store = parse_formula();
        if (at_ident("children")) {
            next();
            if (peek().kind != Token::Number)
                fail(peek(), "expected at least one child index");
            while (peek().kind == Token::Number)
                d.children.insert(parse_nat());
        }
        expect_sym("}");
        s.agents.push_back(std::move(d));
    }

    void parse_process(SystemSpec& s) {
        expect_sym("@");
        ProcessDecl d;
        d.location = parse_aid();
        expect_sym(":");
        const Token& cmd_tok = peek();
        d.command = parse_cmd();
        if (!is_closed(d.command))
            fail(cmd_tok, "recursion variable outside its binder");
        s.processes.push_back(std::move(d));
    }
};

} // namespace

ParseError::ParseError(int line, int col, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

SystemSpec parse_spec(const std::string& text) { return Parser(text).parse(); }

FormulaPtr parse_formula_text(const std::string& text) {
    return Parser(text).parse_bare_formula();
}

CommandPtr parse_command_text(const std::string& text) {
    return Parser(text).parse_bare_command();
}

SystemSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string render_spec(const SystemSpec& s) {
    std::string out = "system {\n";
    out += "  seed " + std::to_string(s.seed) + "\n";
    out += "  factor " + rational_str(s.factor) + "\n";
    out += "  maxtime " + s.max_time.str() + "\n";
    auto emit = [&](const char* kind, const TimeMaps::Map& m) {
        for (const auto& [aid, e] : m)
            out += "  timemap " + std::string(kind) + " " + aid.str() + " -> " +
                   e.str() + "\n";
    };
    emit("tell", s.maps.tell);
    emit("ask", s.maps.ask);
    emit("space", s.maps.space);
    emit("extrusion", s.maps.extrusion);
    for (const AgentDecl& a : s.agents) {
        out += "  agent " + a.id.str() + " { store " + render_formula(a.store);
        if (!a.children.empty()) {
            out += " children";
            for (unsigned n : a.children)
                out += " " + std::to_string(n);
        }
        out += " }\n";
    }
    for (const ProcessDecl& p : s.processes)
        out += "  process @ " + p.location.str() + " : " +
               render_command(p.command) + "\n";
    out += "}\n";
    return out;
}

bool specs_equal(const SystemSpec& a, const SystemSpec& b) {
    if (a.seed != b.seed || a.factor != b.factor || a.max_time != b.max_time)
        return false;
    if (a.maps.tell != b.maps.tell || a.maps.ask != b.maps.ask ||
        a.maps.space != b.maps.space || a.maps.extrusion != b.maps.extrusion)
        return false;
    if (a.agents.size() != b.agents.size() ||
        a.processes.size() != b.processes.size())
        return false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        if (a.agents[i].id != b.agents[i].id ||
            !structurally_equal(a.agents[i].store, b.agents[i].store) ||
            a.agents[i].children != b.agents[i].children)
            return false;
    }
    for (std::size_t i = 0; i < a.processes.size(); ++i) {
        if (a.processes[i].location != b.processes[i].location ||
            !commands_equal(a.processes[i].command, b.processes[i].command))
            return false;
    }
    return true;
}

Configuration to_configuration(const SystemSpec& s) {
    Configuration c;
    c.sim.counter = SampleCounter{s.seed, 0};
    c.sim.factor = s.factor;
    c.sim.max_time = s.max_time;
    c.sim.maps = s.maps;

    ensure_agent(c.agents, AgentId::root());
    for (const AgentDecl& d : s.agents) {
        for (AgentId p = d.id;; p = p.parent()) {
            ensure_agent(c.agents, p);
            if (p.is_root())
                break;
        }
        AgentObject& ag = *find_agent(c.agents, d.id);
        ag.store = conjoin(ag.store, d.store);
        ag.children.insert(d.children.begin(), d.children.end());
    }

    std::uint64_t uid = 1;
    for (const ProcessDecl& d : s.processes) {
        for (AgentId p = d.location;; p = p.parent()) {
            ensure_agent(c.agents, p);
            if (p.is_root())
                break;
        }
        if (d.command->kind != CKind::Nil) {
            c.processes.push_back(ProcessObject{d.location, uid, d.command});
            c.sim.pqueue = heap_insert(ScheduleEntry{TimeValue(), uid}, c.sim.pqueue);
        }
        ++uid; // a nil still burns its uid
    }
    c.sim.next_id = uid;

    normalize_objects(c.agents, c.processes);
    return c;
}

} // namespace sscc
