#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsg/flows.hpp"
#include "nlsg/graph.hpp"
#include "nlsg/reductions.hpp"

namespace nlsg {

// One scenario = one graph, one (p, mu), one grid, one stage pipeline.
// Parsed from a flat `key = value` text file (grammar in the README).
struct Scenario {
  std::string graph_source;  // family spec like "bridge:2:1,1" or "file:path"
  double p = 4.0;
  double mu = 1.0;
  GridSpec grid;
  FlowConfig flow;
  std::vector<std::string> pipeline;  // minimize | bridge_reduce | unfold | escaping_sweep | compare_soliton
  std::string init = "bump";          // bump | random | soliton
  std::vector<double> shifts;         // escaping_sweep stages
  unsigned long long seed = 42;
  std::string out_name = "scenario";

  void validate() const;
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

MetricGraph build_graph(const std::string& source);

struct SweepRow {
  double shift = 0.0;
  double energy = 0.0;
  double mass_value = 0.0;
  double gap = 0.0;
};

// Energy of the escaping profile at each shift against the line baseline.
std::vector<SweepRow> escaping_sweep(const MetricGraph& g, const GridSpec& spec, double p, double mu,
                                     const std::vector<double>& shifts);

struct ScenarioReport {
  Scenario scenario;
  double baseline = 0.0;  // soliton_energy(p, mu)
  std::string stages_json;  // JSON array assembled stage by stage
  ReductionTrace trace;
  std::optional<FlowResult> flow;  // last minimize stage, if any
  double final_energy = 0.0;
  double gap = 0.0;             // final energy - baseline
  double escape_trend = 0.0;    // last minus first escape fraction of the flow trace

  std::string to_json() const;
};

// Executes the pipeline, writing the JSON report, CSV traces and the final
// field dump under out_dir. Throws with stage context on any module error.
ScenarioReport run_scenario(const Scenario& s, const std::string& out_dir);

}  // namespace nlsg
