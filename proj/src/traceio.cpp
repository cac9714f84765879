#include "sscc/traceio.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>

namespace sscc {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string csv_double(double d) {
    std::ostringstream s;
    s.precision(17);
    s << d;
    return s.str();
}

} // namespace

std::string trace_event_line(const TraceEvent& ev) {
    ordered_json j;
    j["event"] = ev.rule;
    j["uid"] = ev.uid;
    j["gtime"] = ev.gtime.str();
    j["at"] = ev.location.str();
    if (!ev.detail.empty())
        j["detail"] = ev.detail;
    if (ev.chosen_index >= 0)
        j["chosen"] = ev.chosen_index;
    if (!ev.included_indices.empty())
        j["included"] = ev.included_indices;
    if (!ev.spawned.empty())
        j["spawned"] = ev.spawned;
    return j.dump();
}

std::string agent_line(const AgentObject& a) {
    ordered_json j;
    j["agent"] = a.id.str();
    j["store"] = render_formula(a.store);
    j["children"] = a.children;
    return j.dump();
}

std::string stop_line(const RunResult& r) {
    ordered_json j;
    j["stopped"] = stop_reason_str(r.reason);
    j["gtime"] = r.config.sim.gtime.str();
    j["steps"] = r.steps;
    return j.dump();
}

void write_run_output(std::ostream& out, const RunResult& r) {
    for (const TraceEvent& ev : r.trace)
        out << trace_event_line(ev) << '\n';
    for (const AgentObject& a : r.config.agents)
        out << agent_line(a) << '\n';
    out << stop_line(r) << '\n';
}

std::string estimation_line(const EstimationResult& r, const std::string& observable,
                            double wall_seconds) {
    ordered_json j;
    j["observable"] = observable;
    j["mean"] = r.mean;
    j["half_width"] = r.half_width;
    j["samples"] = r.samples;
    j["alpha"] = r.alpha;
    j["delta"] = r.delta;
    j["converged"] = r.converged;
    j["wall_seconds"] = wall_seconds;
    return j.dump();
}

std::string estimation_csv_header() { return "mean,half_width,samples,wall_seconds"; }

std::string estimation_csv_row(const EstimationResult& r, double wall_seconds) {
    return csv_double(r.mean) + "," + csv_double(r.half_width) + "," +
           std::to_string(r.samples) + "," + csv_double(wall_seconds);
}

std::string scan_match_line(const ScanMatch& m) {
    ordered_json j;
    j["seed"] = m.seed;
    j["event_index"] = m.event_index;
    j["rule"] = m.rule;
    j["gtime"] = m.gtime.str();
    ordered_json ws = ordered_json::array();
    for (const AgentObject& a : m.witnesses) {
        ordered_json w;
        w["agent"] = a.id.str();
        w["store"] = render_formula(a.store);
        ws.push_back(std::move(w));
    }
    j["witnesses"] = std::move(ws);
    return j.dump();
}

} // namespace sscc
