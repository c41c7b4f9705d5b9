#include "nlsg/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlsg {

namespace {

double pow_abs(double x, double q) { return std::pow(std::abs(x), q); }

bool nearly_constant(const EdgeFunction& u) {
  // sample variance relative to the mean square, threshold 1e-12
  double mean = 0.0, ms = 0.0;
  for (double v : u.values) {
    mean += v;
    ms += v * v;
  }
  size_t n = u.values.size();
  mean /= static_cast<double>(n);
  ms /= static_cast<double>(n);
  double var = ms - mean * mean;
  return !(var > 1e-12 * std::max(ms, 1e-300));
}

}  // namespace

double EdgeFunction::mass() const {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    acc += (xs[i + 1] - xs[i]) * 0.5 * (values[i] * values[i] + values[i + 1] * values[i + 1]);
  return acc;
}

double EdgeFunction::kinetic() const {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double d = values[i + 1] - values[i];
    acc += d * d / (xs[i + 1] - xs[i]);
  }
  return 0.5 * acc;
}

double EdgeFunction::power_integral(double q) const {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    acc += (xs[i + 1] - xs[i]) * 0.5 * (pow_abs(values[i], q) + pow_abs(values[i + 1], q));
  return acc;
}

double EdgeFunction::energy(double p) const { return kinetic() - power_integral(p) / p; }

EdgeFunction EdgeFunction::rescaled_coords(double a) const {
  if (!(a > 0.0)) throw std::invalid_argument("rescaled_coords: factor must be positive");
  EdgeFunction out = *this;
  out.length = length * a;  // +inf stays +inf
  for (double& x : out.xs) x *= a;
  return out;
}

bool EdgeFunction::is_uniform(double* spacing) const {
  if (xs.size() < 2) return false;
  double h = xs[1] - xs[0];
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-12 * std::max(h, 1.0)) return false;
  if (spacing) *spacing = h;
  return true;
}

void EdgeFunction::validate() const {
  if (xs.size() != values.size() || xs.size() < 2)
    throw std::invalid_argument("EdgeFunction: need matching coordinate/value arrays with >= 2 nodes");
  if (xs.front() != 0.0) throw std::invalid_argument("EdgeFunction: coordinates must start at 0");
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i + 1] > xs[i])) throw std::invalid_argument("EdgeFunction: coordinates must increase");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("EdgeFunction: non-finite value");
  if (!(length > 0.0)) throw std::invalid_argument("EdgeFunction: nonpositive length");
  if (std::isfinite(length) && std::abs(xs.back() - length) > 1e-12 * std::max(1.0, length))
    throw std::invalid_argument("EdgeFunction: finite interval must be sampled up to its length");
}

EdgeFunction edge_restriction(const GraphField& u, int edge) {
  EdgeFunction f;
  f.length = u.graph().edge(edge).length;
  auto s = u.samples(edge);
  f.values.assign(s.begin(), s.end());
  f.xs.resize(s.size());
  double h = u.spacing(edge);
  for (size_t i = 0; i < f.xs.size(); ++i) f.xs[i] = h * static_cast<double>(i);
  return f;
}

ComparisonResult comparison_transform(const EdgeFunction& u1, const EdgeFunction& u2, double p) {
  u1.validate();
  u2.validate();
  double m1 = u1.mass();
  double m2 = u2.mass();
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw std::invalid_argument("comparison_transform: zero-mass input");

  ComparisonResult r;
  r.lambda = m2 / m1;
  r.energy_before = u1.energy(p) + u2.energy(p);

  // Candidate stretches: u1 by (1+lambda), u2 by (1+lambda)/lambda. Values
  // stay put, so each trapezoid term scales by the exact lemma factors.
  EdgeFunction cand1 = u1.rescaled_coords(1.0 + r.lambda);
  EdgeFunction cand2 = u2.rescaled_coords((1.0 + r.lambda) / r.lambda);
  double e1 = cand1.energy(p);
  double e2 = cand2.energy(p);
  if (e1 <= e2) {
    r.chosen = 1;
    r.merged = std::move(cand1);
    r.energy_after = e1;
  } else {
    r.chosen = 2;
    r.merged = std::move(cand2);
    r.energy_after = e2;
  }

  bool c1 = nearly_constant(u1);
  bool c2 = nearly_constant(u2);
  if (!c1 || !c2) {
    r.strict = true;
  } else {
    // both constant: equality exactly when the magnitudes agree
    double a = std::abs(u1.values.front());
    double b = std::abs(u2.values.front());
    r.strict = std::abs(a - b) > 1e-12 * std::max({a, b, 1e-300});
  }
  return r;
}

EdgeFunction melt_selfloop(const EdgeFunction& loop_fn, const EdgeFunction& tail_fn) {
  loop_fn.validate();
  tail_fn.validate();
  if (!std::isfinite(loop_fn.length))
    throw std::invalid_argument("melt_selfloop: the loop must have finite length");
  double junction = loop_fn.boundary_left();
  if (std::abs(loop_fn.boundary_right() - junction) > 1e-9 ||
      std::abs(tail_fn.boundary_left() - junction) > 1e-9)
    throw std::invalid_argument("melt_selfloop: boundary values do not match");

  EdgeFunction w;
  w.length = loop_fn.length + tail_fn.length;
  w.xs = loop_fn.xs;
  w.values = loop_fn.values;
  for (size_t i = 1; i < tail_fn.xs.size(); ++i) {
    w.xs.push_back(loop_fn.xs.back() + tail_fn.xs[i]);
    w.values.push_back(tail_fn.values[i]);
  }
  return w;
}

UnfoldResult unfold(const MetricGraph& g, const GraphField& u) {
  EulerPath path = find_euler_path(g);
  int core_edges = static_cast<int>(path.size()) - 2;

  std::vector<Edge> edges;
  std::vector<std::vector<double>> samples;
  for (int k = 0; k < core_edges; ++k) {
    const EulerStep& step = path[static_cast<size_t>(k) + 1];
    edges.push_back({k, k + 1, g.edge(step.edge).length});
    auto s = u.samples(step.edge);
    std::vector<double> vals(s.begin(), s.end());
    if (step.reversed) std::reverse(vals.begin(), vals.end());
    samples.push_back(std::move(vals));
  }
  // the two half-lines keep their own sample arrays (stored vertex-outward)
  int left_hl = path.front().edge;
  int right_hl = path.back().edge;
  edges.push_back({0, kNoVertex, kInfiniteLength});
  edges.push_back({core_edges, kNoVertex, kInfiniteLength});
  auto sl = u.samples(left_hl);
  auto sr = u.samples(right_hl);
  samples.push_back({sl.begin(), sl.end()});
  samples.push_back({sr.begin(), sr.end()});

  std::vector<double> vertex_values(static_cast<size_t>(core_edges) + 1);
  vertex_values.front() = u.vertex_value(g.edge(left_hl).left);
  for (int k = 0; k < core_edges; ++k) {
    const EulerStep& step = path[static_cast<size_t>(k) + 1];
    const Edge& e = g.edge(step.edge);
    vertex_values[static_cast<size_t>(k) + 1] = u.vertex_value(step.reversed ? e.left : e.right);
  }

  MetricGraph line(core_edges + 1, std::move(edges));
  GraphField w(line, u.grid(), std::move(samples), std::move(vertex_values));
  return {std::move(line), std::move(w)};
}

namespace {

// Bridge-like: exactly two vertices, every finite edge joining them, and any
// half-lines hanging off either one.
void require_bridge_like(const MetricGraph& g) {
  if (g.num_vertices() != 2) throw std::invalid_argument("bridge_reduce: graph must have two vertices");
  for (const Edge& e : g.edges()) {
    if (e.is_halfline()) continue;
    if (e.left == e.right) throw std::invalid_argument("bridge_reduce: self-loop is not a bridge");
    if (!((e.left == 0 && e.right == 1) || (e.left == 1 && e.right == 0)))
      throw std::invalid_argument("bridge_reduce: finite edge must join the two vertices");
  }
}

}  // namespace

BridgeReduceResult bridge_reduce(const MetricGraph& g, const GraphField& u, double p) {
  require_bridge_like(g);
  std::vector<int> bridges;
  for (int j = 0; j < g.num_edges(); ++j)
    if (!g.edge(j).is_halfline()) bridges.push_back(j);
  int n = static_cast<int>(bridges.size());
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("bridge_reduce: needs an even number of bridges >= 2");

  // both merged functions oriented vertex 0 -> vertex 1
  auto oriented = [&](int j) {
    EdgeFunction f = edge_restriction(u, j);
    if (g.edge(j).left != 0) {
      std::reverse(f.values.begin(), f.values.end());
      std::vector<double> xs(f.xs.size());
      for (size_t i = 0; i < xs.size(); ++i) xs[i] = f.xs.back() - f.xs[f.xs.size() - 1 - i];
      f.xs = std::move(xs);
    }
    return f;
  };
  ComparisonResult cmp = comparison_transform(oriented(bridges[0]), oriented(bridges[1]), p);

  double hw = 0.0;
  if (!cmp.merged.is_uniform(&hw))
    throw std::invalid_argument("bridge_reduce: merged bridge lost its uniform grid");

  std::vector<Edge> edges;
  std::vector<std::vector<double>> samples;
  edges.push_back({0, 1, cmp.merged.length});
  samples.push_back(cmp.merged.values);
  for (int j = 0; j < g.num_edges(); ++j) {
    if (j == bridges[0] || j == bridges[1]) continue;
    edges.push_back(g.edge(j));
    auto s = u.samples(j);
    samples.emplace_back(s.begin(), s.end());
  }
  MetricGraph reduced(2, std::move(edges));
  std::vector<double> vertex_values = {u.vertex_value(0), u.vertex_value(1)};
  GraphField w(reduced, u.grid(), std::move(samples), std::move(vertex_values));
  return {std::move(reduced), std::move(w), std::move(cmp)};
}

std::string ReductionTrace::to_json() const {
  std::ostringstream out;
  out.precision(17);
  out << "[";
  for (size_t i = 0; i < steps.size(); ++i) {
    const ReductionStep& s = steps[i];
    if (i) out << ",";
    out << "{\"transform\":\"" << s.transform << "\",\"edges\":[";
    for (size_t k = 0; k < s.edges.size(); ++k) out << (k ? "," : "") << s.edges[k];
    out << "],\"energy_before\":" << s.energy_before << ",\"energy_after\":" << s.energy_after
        << ",\"mass_before\":" << s.mass_before << ",\"mass_after\":" << s.mass_after << "}";
  }
  out << "]";
  return out.str();
}

}  // namespace nlsg
