#include "nlsg/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nlsg/soliton.hpp"

namespace nlsg {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ','))
    if (!trim(tok).empty()) out.push_back(std::stod(trim(tok)));
  return out;
}

}  // namespace

void Scenario::validate() const {
  if (graph_source.empty()) throw std::invalid_argument("scenario: missing graph");
  if (!(p > 2.0 && p < 6.0)) throw std::invalid_argument("scenario: p must lie in (2, 6)");
  if (!(mu > 0.0)) throw std::invalid_argument("scenario: mu must be positive");
  grid.validate();
  flow.validate();
  if (pipeline.empty()) throw std::invalid_argument("scenario: pipeline must not be empty");
  for (const std::string& stage : pipeline) {
    if (stage != "minimize" && stage != "bridge_reduce" && stage != "unfold" &&
        stage != "escaping_sweep" && stage != "compare_soliton")
      throw std::invalid_argument("scenario: unknown stage `" + stage + "`");
  }
  if (init != "bump" && init != "random" && init != "soliton")
    throw std::invalid_argument("scenario: unknown init `" + init + "`");
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": expected `key = value`");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "graph") s.graph_source = value;
    else if (key == "p") s.p = std::stod(value);
    else if (key == "mu") s.mu = std::stod(value);
    else if (key == "h") s.grid.h = std::stod(value);
    else if (key == "L") s.grid.L_trunc = std::stod(value);
    else if (key == "pipeline") {
      s.pipeline.clear();
      for (const std::string& st : split(value, ',')) s.pipeline.push_back(trim(st));
    } else if (key == "init") s.init = value;
    else if (key == "shifts") s.shifts = parse_list(value);
    else if (key == "seed") s.seed = std::stoull(value);
    else if (key == "out") s.out_name = value;
    else if (key == "tau0") s.flow.tau0 = std::stod(value);
    else if (key == "max_iters") s.flow.max_iters = std::stoi(value);
    else if (key == "energy_tol") s.flow.energy_tol = std::stod(value);
    else if (key == "backtrack") s.flow.backtrack = std::stod(value);
    else if (key == "window") s.flow.window = std::stoi(value);
    else if (key == "tau_growth") s.flow.tau_growth = std::stod(value);
    else if (key == "escape_D") s.flow.escape_D = std::stod(value);
    else throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": unknown key `" + key + "`");
  }
  s.validate();
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path);
  return parse_scenario(in);
}

MetricGraph build_graph(const std::string& source) {
  std::vector<std::string> parts = split(source, ':');
  const std::string& kind = parts[0];
  if (kind == "line") return make_line();
  if (kind == "halfline") return make_halfline();
  if (kind == "star") {
    if (parts.size() != 2) throw std::invalid_argument("graph star:<n>");
    return make_star(std::stoi(parts[1]));
  }
  if (kind == "bridge") {
    if (parts.size() != 3) throw std::invalid_argument("graph bridge:<n>:<l1,..,ln>");
    return make_bridge(std::stoi(parts[1]), parse_list(parts[2]));
  }
  if (kind == "star2plus1") {
    if (parts.size() != 2) throw std::invalid_argument("graph star2plus1:<l>");
    return make_star_2plus1(std::stod(parts[1]));
  }
  if (kind == "e3") {
    if (parts.size() != 2) throw std::invalid_argument("graph e3:<l1,l2,l3>");
    return make_exceptional_e3(parse_list(parts[1]));
  }
  if (kind == "file") {
    if (parts.size() != 2) throw std::invalid_argument("graph file:<path>");
    std::ifstream in(parts[1]);
    if (!in) throw std::invalid_argument("cannot open graph spec " + parts[1]);
    return parse_graph_spec(in);
  }
  throw std::invalid_argument("unknown graph source `" + source + "`");
}

std::vector<SweepRow> escaping_sweep(const MetricGraph& g, const GridSpec& spec, double p, double mu,
                                     const std::vector<double>& shifts) {
  if (g.num_halflines() == 0) throw std::invalid_argument("escaping_sweep: graph has no half-line");
  double baseline = soliton_energy(p, mu);
  std::vector<SweepRow> rows;
  for (double n : shifts) {
    GraphField u = escaping_sequence(g, spec, p, mu, n);
    EnergyReport rep = energy(u, p);
    rows.push_back({n, rep.total, rep.mass, rep.total - baseline});
  }
  return rows;
}

namespace {

json report_to_json(const EnergyReport& r) {
  return json{{"kinetic", r.kinetic}, {"potential", r.potential}, {"total", r.total}, {"mass", r.mass}, {"p", r.p}};
}

json flow_to_json(const FlowResult& f) {
  json esc = json::array();
  for (const EscapeMetric& m : f.escape)
    esc.push_back({{"edge", m.edge}, {"fraction", m.fraction}, {"center_of_mass", m.center_of_mass}});
  return json{{"energy", report_to_json(f.report)},
              {"iterations", f.iterations},
              {"converged", f.converged},
              {"nu", f.nu},
              {"multiplier_residual", f.multiplier_residual},
              {"escape", esc}};
}

GraphField initial_field(const Scenario& s, const MetricGraph& g) {
  if (s.init == "random") return rescale_mass(random_field(g, s.grid, s.seed), s.mu);
  if (s.init == "soliton") {
    // soliton profile measured from each edge's left endpoint; continuous on
    // single-vertex graphs (line, half-line, stars)
    SolitonParams sol = make_soliton(s.p, s.mu);
    GraphField u = GraphField::sampled(g, s.grid, [&](int, double x) { return sol.value(x); });
    std::vector<double> dofs = u.pack();
    u.unpack(dofs);
    return rescale_mass(u, s.mu);
  }
  return default_initial_field(g, s.grid, s.p, s.mu);
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const std::string& out_dir) {
  s.validate();
  std::filesystem::create_directories(out_dir);
  MetricGraph g = build_graph(s.graph_source);

  ScenarioReport rep;
  rep.scenario = s;
  rep.baseline = soliton_energy(s.p, s.mu);

  GraphField state = initial_field(s, g);
  json stages = json::array();
  int stage_index = 0;
  for (const std::string& stage : s.pipeline) {
    ++stage_index;
    try {
      if (stage == "minimize") {
        FlowResult f = minimize(state.graph(), s.grid, s.p, s.mu, state, s.flow);
        state = f.field;
        std::ofstream csv(out_dir + "/" + s.out_name + "_trace.csv");
        csv << f.trace_csv();
        rep.escape_trend = f.escape_trace.back() - f.escape_trace.front();
        stages.push_back({{"stage", "minimize"}, {"result", flow_to_json(f)}});
        rep.flow = std::move(f);
      } else if (stage == "bridge_reduce") {
        EnergyReport before = energy(state, s.p);
        BridgeReduceResult b = bridge_reduce(state.graph(), state, s.p);
        EnergyReport after = energy(b.field, s.p);
        rep.trace.steps.push_back({"bridge_reduce", {0, 1}, before.total, after.total, before.mass, after.mass});
        stages.push_back({{"stage", "bridge_reduce"},
                          {"result",
                           {{"lambda", b.comparison.lambda},
                            {"chosen", b.comparison.chosen},
                            {"strict", b.comparison.strict},
                            {"energy", report_to_json(after)}}}});
        state = std::move(b.field);
        g = state.graph();
      } else if (stage == "unfold") {
        EnergyReport before = energy(state, s.p);
        UnfoldResult un = unfold(state.graph(), state);
        EnergyReport after = energy(un.field, s.p);
        std::vector<int> touched;
        for (int j = 0; j < state.graph().num_edges(); ++j) touched.push_back(j);
        rep.trace.steps.push_back({"unfold", touched, before.total, after.total, before.mass, after.mass});
        stages.push_back({{"stage", "unfold"}, {"result", {{"energy", report_to_json(after)}}}});
        state = std::move(un.field);
        g = state.graph();
      } else if (stage == "escaping_sweep") {
        if (s.shifts.empty()) throw std::invalid_argument("escaping_sweep needs `shifts`");
        std::vector<SweepRow> rows = escaping_sweep(g, s.grid, s.p, s.mu, s.shifts);
        json table = json::array();
        for (const SweepRow& r : rows)
          table.push_back({{"shift", r.shift}, {"energy", r.energy}, {"mass", r.mass_value}, {"gap", r.gap}});
        stages.push_back({{"stage", "escaping_sweep"}, {"result", table}});
      } else if (stage == "compare_soliton") {
        EnergyReport now = energy(state, s.p);
        stages.push_back({{"stage", "compare_soliton"},
                          {"result", {{"energy", report_to_json(now)}, {"baseline", rep.baseline},
                                      {"gap", now.total - rep.baseline}}}});
      }
    } catch (const std::exception& err) {
      throw std::runtime_error("stage " + std::to_string(stage_index) + " (" + stage + "): " + err.what());
    }
  }

  EnergyReport final_rep = energy(state, s.p);
  rep.final_energy = final_rep.total;
  rep.gap = final_rep.total - rep.baseline;
  rep.stages_json = stages.dump();

  std::ofstream field_csv(out_dir + "/" + s.out_name + "_field.csv");
  field_csv << state.to_csv();
  std::ofstream report_file(out_dir + "/" + s.out_name + "_report.json");
  report_file << rep.to_json() << "\n";
  return rep;
}

std::string ScenarioReport::to_json() const {
  json scen{{"graph", scenario.graph_source}, {"p", scenario.p},       {"mu", scenario.mu},
            {"h", scenario.grid.h},           {"L", scenario.grid.L_trunc}, {"pipeline", scenario.pipeline},
            {"init", scenario.init},          {"seed", scenario.seed}, {"out", scenario.out_name}};
  json j{{"scenario", scen},
         {"baseline", baseline},
         {"stages", json::parse(stages_json.empty() ? "[]" : stages_json)},
         {"reduction_trace", json::parse(trace.to_json())},
         {"verdict", {{"final_energy", final_energy}, {"gap", gap}, {"escape_trend", escape_trend}}}};
  return j.dump(2);
}

}  // namespace nlsg
