#include "doctest.h"

#include "sscc/fixtures.hpp"
#include "sscc/traceio.hpp"

#include <sstream>
#include <string>

using namespace sscc;

namespace {

std::string run_output_text(const SystemSpec& spec) {
    RunResult r = run(to_configuration(spec), internal_sat());
    std::ostringstream out;
    write_run_output(out, r);
    return out.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("trace records are stable one-line JSON") {
    TraceEvent ev;
    ev.rule = "tell";
    ev.uid = 4;
    ev.gtime = TimeValue(13, 5);
    ev.location = AgentId::of({2});
    ev.detail = "Z != 10";
    CHECK(trace_event_line(ev) ==
          R"({"event":"tell","uid":4,"gtime":"13/5","at":"2.root","detail":"Z != 10"})");

    TraceEvent choice;
    choice.rule = "exclusive";
    choice.uid = 1;
    choice.location = AgentId::root();
    choice.chosen_index = 1;
    choice.spawned = {7};
    CHECK(trace_event_line(choice) ==
          R"({"event":"exclusive","uid":1,"gtime":"0","at":"root","chosen":1,"spawned":[7]})");

    AgentObject a;
    a.id = AgentId::of({0, 1});
    a.store = f_and(f_cmp("Y", IntOp::Gt, 5), f_cmp("Y", IntOp::Lt, 10));
    a.children = {2, 5};
    CHECK(agent_line(a) ==
          R"({"agent":"0.1.root","store":"Y > 5 and Y < 10","children":[2,5]})");
}

TEST_CASE("run output carries the trace, the dump and the stop record") {
    const std::string text = run_output_text(fixture_container());
    CHECK(contains(text, R"({"agent":"0.1.root","store":"Y > 5 and Y < 10","children":[]})"));
    CHECK(contains(text, R"({"agent":"2.root","store":"Z != 10","children":[]})"));
    CHECK(contains(text, R"({"agent":"root","store":"W == 9","children":[0,1,2]})"));
    CHECK(contains(text, R"("stopped":"quiescent")"));
    CHECK(contains(text, R"("gtime":"13/5")"));
    // line-delimited: every record parses on its own line
    std::istringstream lines(text);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        ++n;
    }
    CHECK(n > 10);
}

TEST_CASE("identical invocations serialize byte-identically") {
    HierarchyGenSpec gen;
    gen.depth = 2;
    gen.branching = StochasticExpression::constant(1);
    gen.seed = 3;
    SystemSpec spec = fixture_robot(gen);
    CHECK(run_output_text(spec) == run_output_text(spec));
    CHECK(run_output_text(fixture_tasks()) == run_output_text(fixture_tasks()));
}

TEST_CASE("estimation records and CSV rows") {
    EstimationResult r;
    r.mean = 2.5;
    r.half_width = 0.0;
    r.samples = 8;
    r.alpha = 0.05;
    r.delta = 0.1;
    r.converged = true;
    CHECK(estimation_line(r, "execution-time", 0.25) ==
          R"({"observable":"execution-time","mean":2.5,"half_width":0.0,"samples":8,)"
          R"("alpha":0.05,"delta":0.1,"converged":true,"wall_seconds":0.25})");
    CHECK(estimation_csv_header() == "mean,half_width,samples,wall_seconds");
    CHECK(estimation_csv_row(r, 0.25) == "2.5,0,8,0.25");
}

TEST_CASE("scan match records name the witnesses") {
    ScanMatch m;
    m.seed = 3;
    m.event_index = 17;
    m.rule = "tell";
    m.gtime = TimeValue(7, 2);
    AgentObject w;
    w.id = AgentId::of({2, 1});
    w.store = f_and(f_cmp("W", IntOp::Eq, 5), f_cmp("Y", IntOp::Eq, 32));
    m.witnesses.push_back(w);
    CHECK(scan_match_line(m) ==
          R"({"seed":3,"event_index":17,"rule":"tell","gtime":"7/2",)"
          R"("witnesses":[{"agent":"2.1.root","store":"W == 5 and Y == 32"}]})");
}
