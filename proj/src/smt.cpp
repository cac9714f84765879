#include "sscc/smt.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace sscc {
namespace {

void term(const FormulaPtr& f, std::string& out) {
    auto int_term = [&](const IntTerm& t) {
        if (t.is_var) {
            out += t.var;
        } else if (t.value < 0) {
            out += "(- " + std::to_string(-t.value) + ")";
        } else {
            out += std::to_string(t.value);
        }
    };
    switch (f->kind) {
    case FKind::True:
        out += "true";
        return;
    case FKind::False:
        out += "false";
        return;
    case FKind::BoolVar:
        out += f->name;
        return;
    case FKind::IntAtom: {
        const char* op = nullptr;
        switch (f->op) {
        case IntOp::Lt: op = "<"; break;
        case IntOp::Le: op = "<="; break;
        case IntOp::Gt: op = ">"; break;
        case IntOp::Ge: op = ">="; break;
        case IntOp::Eq: op = "="; break;
        case IntOp::Ne: op = "distinct"; break;
        }
        out += "(";
        out += op;
        out += " ";
        int_term(f->lhs);
        out += " ";
        int_term(f->rhs);
        out += ")";
        return;
    }
    case FKind::Not:
        out += "(not ";
        term(f->a, out);
        out += ")";
        return;
    case FKind::And:
    case FKind::Or:
    case FKind::Xor:
    case FKind::Implies:
    case FKind::Iff: {
        const char* op = "and";
        if (f->kind == FKind::Or)
            op = "or";
        else if (f->kind == FKind::Xor)
            op = "xor";
        else if (f->kind == FKind::Implies)
            op = "=>";
        else if (f->kind == FKind::Iff)
            op = "=";
        out += "(";
        out += op;
        out += " ";
        term(f->a, out);
        out += " ";
        term(f->b, out);
        out += ")";
        return;
    }
    }
}

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (pipe(fd) != 0)
            throw SmtError("pipe() failed");
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (fd[0] >= 0) {
            ::close(fd[0]);
            fd[0] = -1;
        }
    }
    void close_write() {
        if (fd[1] >= 0) {
            ::close(fd[1]);
            fd[1] = -1;
        }
    }
};

std::string first_word(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    std::size_t end = text.find_first_of(" \t\r\n", begin);
    return text.substr(begin, end == std::string::npos ? std::string::npos
                                                       : end - begin);
}

} // namespace

std::string to_smtlib2(const FormulaPtr& f) {
    VarSet vars = collect_vars(f); // also rejects mixed-type names
    std::string script = "(set-logic QF_LIA)\n";
    for (const auto& v : vars.int_vars)
        script += "(declare-const " + v + " Int)\n";
    for (const auto& v : vars.bool_vars)
        script += "(declare-const " + v + " Bool)\n";
    script += "(assert ";
    term(f, script);
    script += ")\n(check-sat)\n";
    return script;
}

Verdict solve_external(const FormulaPtr& f, const SmtConfig& cfg) {
    const std::string script = to_smtlib2(f);

    Pipe to_child, from_child, err_child;
    pid_t pid = fork();
    if (pid < 0)
        throw SmtError("fork() failed");
    if (pid == 0) {
        dup2(to_child.fd[0], STDIN_FILENO);
        dup2(from_child.fd[1], STDOUT_FILENO);
        dup2(err_child.fd[1], STDERR_FILENO);
        to_child.close_write();
        from_child.close_read();
        err_child.close_read();
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(cfg.solver_path.c_str()));
        for (const auto& a : cfg.args)
            argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        execvp(cfg.solver_path.c_str(), argv.data());
        _exit(127);
    }

    to_child.close_read();
    from_child.close_write();
    err_child.close_write();

    // Feed the script, then close stdin so solvers that read to EOF proceed.
    std::size_t written = 0;
    while (written < script.size()) {
        ssize_t n = ::write(to_child.fd[1], script.data() + written,
                            script.size() - written);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            break; // child may have exited early; its output decides
        }
        written += static_cast<std::size_t>(n);
    }
    to_child.close_write();

    std::string out, err;
    bool timed_out = false;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(cfg.timeout_ms);
    bool out_open = true, err_open = true;
    while (out_open || err_open) {
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                             deadline - std::chrono::steady_clock::now())
                             .count();
        if (remaining <= 0) {
            timed_out = true;
            break;
        }
        pollfd fds[2];
        nfds_t nfds = 0;
        if (out_open)
            fds[nfds++] = pollfd{from_child.fd[0], POLLIN, 0};
        if (err_open)
            fds[nfds++] = pollfd{err_child.fd[0], POLLIN, 0};
        int rc = ::poll(fds, nfds, static_cast<int>(remaining));
        if (rc < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (rc == 0) {
            timed_out = true;
            break;
        }
        char buf[4096];
        for (nfds_t i = 0; i < nfds; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP)))
                continue;
            ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
            bool is_out = fds[i].fd == from_child.fd[0];
            if (n > 0) {
                (is_out ? out : err).append(buf, static_cast<std::size_t>(n));
            } else {
                if (is_out)
                    out_open = false;
                else
                    err_open = false;
            }
        }
    }

    if (timed_out) {
        ::kill(pid, SIGKILL);
        int status = 0;
        waitpid(pid, &status, 0);
        return Verdict::Unknown;
    }

    int status = 0;
    waitpid(pid, &status, 0);

    std::string verdict = first_word(out);
    if (verdict == "sat")
        return Verdict::Sat;
    if (verdict == "unsat")
        return Verdict::Unsat;
    if (verdict == "unknown")
        return Verdict::Unknown;
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
        throw SmtError("solver could not be executed: " + cfg.solver_path);
    throw SmtError("solver reply unparseable; stdout: \"" + out +
                   "\"; stderr: \"" + err + "\"");
}

SatProcedure external_sat_procedure(SmtConfig cfg) {
    return [cfg](const FormulaPtr& f) { return solve_external(f, cfg); };
}

} // namespace sscc
