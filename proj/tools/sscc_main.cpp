// Command-line driver: run one simulation, estimate an observable over many
// seeded runs, or scan seeded runs for states matching a predicate.

#include <CLI11.hpp>

#include "sscc/analysis.hpp"
#include "sscc/fixtures.hpp"
#include "sscc/smt.hpp"
#include "sscc/traceio.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace sscc;

struct CommonOpts {
    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string max_time;    // rational text; empty = keep the spec's horizon
    std::string solver_path; // empty = internal decision procedure
    bool uniform_search = false;
};

void add_common(CLI::App& cmd, CommonOpts& o) {
    cmd.add_option("spec", o.spec_path, "system description file")->required();
    cmd.add_option("--seed", o.seed, "override the spec's base seed");
    cmd.add_option("--max-time", o.max_time,
                   "override the horizon (rational, e.g. 500 or 13/5)");
    cmd.add_option("--solver", o.solver_path,
                   "external SMT solver binary (default: internal procedure)");
    cmd.add_flag("--uniform-search", o.uniform_search,
                 "searching watch weighs moves 1/n instead of normalized draws");
}

SystemSpec load_spec(const CommonOpts& o) {
    SystemSpec s = parse_spec_file(o.spec_path);
    if (o.seed)
        s.seed = *o.seed;
    if (!o.max_time.empty())
        s.max_time = TimeValue(parse_rational(o.max_time));
    return s;
}

SatProcedure make_sat(const CommonOpts& o) {
    if (o.solver_path.empty())
        return internal_sat();
    SmtConfig cfg;
    cfg.solver_path = o.solver_path;
    return external_sat_procedure(cfg);
}

// Comma-separated values and inclusive ranges: "0-31", "0,5,9", "0-3,8".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        if (part.empty())
            throw std::invalid_argument("empty seed entry");
        std::size_t dash = part.find('-');
        if (dash == std::string::npos) {
            seeds.push_back(std::stoull(part));
        } else {
            std::uint64_t lo = std::stoull(part.substr(0, dash));
            std::uint64_t hi = std::stoull(part.substr(dash + 1));
            if (hi < lo)
                throw std::invalid_argument("descending seed range " + part);
            for (std::uint64_t s = lo; s <= hi; ++s)
                seeds.push_back(s);
        }
    }
    if (seeds.empty())
        throw std::invalid_argument("no seeds given");
    return seeds;
}

int cmd_run(const CommonOpts& common, const std::string& out_path,
            std::uint64_t max_steps) {
    SystemSpec spec = load_spec(common);
    Configuration c = to_configuration(spec);
    c.sim.uniform_search = common.uniform_search;
    RunResult r = run(std::move(c), make_sat(common), max_steps);

    if (out_path.empty() || out_path == "-") {
        write_run_output(std::cout, r);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        write_run_output(out, r);
        std::cout << stop_line(r) << "\n";
    }
    return 0;
}

Observable make_observable(const std::string& name, const std::string& agent_text,
                           const std::string& formula_text) {
    if (name == "execution-time")
        return Observable::execution_time();
    if (name == "agent-count")
        return Observable::agent_count();
    if (name == "store-holds") {
        if (formula_text.empty())
            throw std::invalid_argument("store-holds needs --formula");
        std::optional<AgentId> agent;
        if (!agent_text.empty() && agent_text != "any")
            agent = AgentId::parse(agent_text);
        return Observable::store_holds(agent, parse_formula_text(formula_text));
    }
    throw std::invalid_argument("unknown observable '" + name + "'");
}

int cmd_estimate(const CommonOpts& common, const Observable& obs,
                 const EstimateParams& params, const std::string& out_path,
                 const std::string& csv_path) {
    SystemSpec spec = load_spec(common);
    const auto started = std::chrono::steady_clock::now();
    EstimationResult r = estimate(spec, obs, make_sat(common), params);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();

    const std::string record = estimation_line(r, obs.label(), wall);
    if (out_path.empty() || out_path == "-") {
        std::cout << record << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        out << record << "\n";
        std::cout << record << "\n";
    }
    if (!csv_path.empty()) {
        const bool fresh = !std::ifstream(csv_path).good();
        std::ofstream csv(csv_path, std::ios::app);
        if (!csv) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 1;
        }
        if (fresh)
            csv << estimation_csv_header() << "\n";
        csv << estimation_csv_row(r, wall) << "\n";
    }
    if (!r.converged) {
        std::cerr << "did not converge: half-width " << r.half_width << " > "
                  << r.delta / 2 << " after " << r.samples << " samples\n";
        return 2;
    }
    return 0;
}

StatePredicate make_predicate(const std::string& name, const std::string& formula_text) {
    if (name == "inconsistent")
        return StatePredicate::inconsistent_store();
    if (name == "entails") {
        if (formula_text.empty())
            throw std::invalid_argument("entails needs --formula");
        return StatePredicate::store_entails(parse_formula_text(formula_text));
    }
    if (name == "equivalent")
        return StatePredicate::equivalent_stores();
    throw std::invalid_argument("unknown predicate '" + name + "'");
}

int cmd_scan(const CommonOpts& common, const StatePredicate& pred,
             const std::vector<std::uint64_t>& seeds, const std::string& out_path,
             bool expect_match) {
    SystemSpec spec = load_spec(common);
    auto matches = scan(spec, seeds, pred, make_sat(common));

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        out = &file;
    }
    for (const ScanMatch& m : matches)
        *out << scan_match_line(m) << "\n";
    std::cerr << matches.size() << " match(es) over " << seeds.size() << " seed(s)\n";
    if (expect_match && matches.empty())
        return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpreter, simulator and analyzer for hierarchical "
                 "constraint-agent systems"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string run_out;
    std::uint64_t run_max_steps = 0;
    CLI::App* runc = app.add_subcommand("run", "simulate once and dump trace + final state");
    add_common(*runc, run_opts);
    runc->add_option("--out", run_out, "trace file ('-' = stdout)");
    runc->add_option("--max-steps", run_max_steps, "stop after this many rule applications");

    CommonOpts est_opts;
    std::string est_observable = "execution-time";
    std::string est_agent, est_formula, est_out, est_csv;
    EstimateParams est_params;
    CLI::App* estc = app.add_subcommand("estimate", "confidence-interval estimation");
    add_common(*estc, est_opts);
    estc->add_option("--observable", est_observable,
                     "execution-time | agent-count | store-holds");
    estc->add_option("--agent", est_agent, "store-holds: agent id (default any)");
    estc->add_option("--formula", est_formula, "store-holds: formula text");
    estc->add_option("--alpha", est_params.alpha, "1 - confidence level");
    estc->add_option("--delta", est_params.delta, "target interval width");
    estc->add_option("--batch", est_params.batch, "samples per convergence check");
    estc->add_option("--max-samples", est_params.max_samples, "sample budget");
    estc->add_option("--jobs", est_params.jobs, "worker threads");
    estc->add_option("--out", est_out, "record file ('-' = stdout)");
    estc->add_option("--csv", est_csv, "append a CSV summary row here");

    CommonOpts scan_opts;
    std::string scan_predicate = "inconsistent";
    std::string scan_formula, scan_seeds = "0", scan_out;
    bool scan_expect = false;
    CLI::App* scanc = app.add_subcommand("scan", "search seeded runs for matching states");
    add_common(*scanc, scan_opts);
    scanc->add_option("--predicate", scan_predicate,
                      "inconsistent | entails | equivalent");
    scanc->add_option("--formula", scan_formula, "entails: formula text");
    scanc->add_option("--seeds", scan_seeds, "e.g. 0-31 or 0,5,9");
    scanc->add_option("--out", scan_out, "match file ('-' = stdout)");
    scanc->add_flag("--expect-match", scan_expect, "exit 2 when nothing matches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (runc->parsed())
            return cmd_run(run_opts, run_out, run_max_steps);
        if (estc->parsed())
            return cmd_estimate(est_opts,
                                make_observable(est_observable, est_agent, est_formula),
                                est_params, est_out, est_csv);
        if (scanc->parsed())
            return cmd_scan(scan_opts, make_predicate(scan_predicate, scan_formula),
                            parse_seed_list(scan_seeds), scan_out, scan_expect);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
