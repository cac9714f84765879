#pragma once

#include "sscc/analysis.hpp"
#include "sscc/engine.hpp"

#include <iosfwd>
#include <string>

namespace sscc {

// Line-delimited structured output. Every record is one JSON object per
// line with keys in a fixed order and all times as exact rational strings,
// so identical invocations produce byte-identical files.

// One rule application or clock advance.
std::string trace_event_line(const TraceEvent& ev);

// One agent of the final dump: id, store (identity simplification only —
// exactly what the engine kept), child set.
std::string agent_line(const AgentObject& a);

// Closing record of a run: stop reason, final clock, step count.
std::string stop_line(const RunResult& r);

// Full run output: every trace event, then every agent, then the stop
// record.
void write_run_output(std::ostream& out, const RunResult& r);

// Estimation record (JSON) and the matching CSV forms. The CSV row carries
// mean, half-width, sample count and wall-clock seconds.
std::string estimation_line(const EstimationResult& r, const std::string& observable,
                            double wall_seconds);
std::string estimation_csv_header();
std::string estimation_csv_row(const EstimationResult& r, double wall_seconds);

// One scan match: seed, event index, rule, clock, matching agents.
std::string scan_match_line(const ScanMatch& m);

} // namespace sscc
