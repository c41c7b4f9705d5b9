#include "nlsg/field.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlsg {

namespace {

int node_count(const Edge& e, const GridSpec& spec) {
  double len = e.is_halfline() ? spec.L_trunc : e.length;
  int n = static_cast<int>(std::ceil(len / spec.h - 1e-12));
  return std::max(n, 1) + 1;
}

}  // namespace

void GridSpec::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("GridSpec: h must be positive");
  if (!(L_trunc >= 10.0 * h)) throw std::invalid_argument("GridSpec: L_trunc must be at least 10*h");
}

GraphField::GraphField(MetricGraph graph, GridSpec spec)
    : graph_(std::move(graph)), spec_(spec) {
  spec_.validate();
  samples_.resize(static_cast<size_t>(graph_.num_edges()));
  for (int j = 0; j < graph_.num_edges(); ++j)
    samples_[static_cast<size_t>(j)].assign(static_cast<size_t>(node_count(graph_.edge(j), spec_)), 0.0);
  vertex_values_.assign(static_cast<size_t>(graph_.num_vertices()), 0.0);
}

GraphField::GraphField(MetricGraph graph, GridSpec spec, std::vector<std::vector<double>> edge_samples,
                       std::vector<double> vertex_values)
    : graph_(std::move(graph)),
      spec_(spec),
      samples_(std::move(edge_samples)),
      vertex_values_(std::move(vertex_values)) {
  spec_.validate();
  if (samples_.size() != static_cast<size_t>(graph_.num_edges()) ||
      vertex_values_.size() != static_cast<size_t>(graph_.num_vertices()))
    throw std::invalid_argument("GraphField: shape mismatch with graph");
  for (const auto& s : samples_)
    if (s.size() < 2) throw std::invalid_argument("GraphField: edge needs at least 2 nodes");
  std::string err = check(false);
  if (!err.empty()) throw std::invalid_argument("GraphField: " + err);
}

double GraphField::spacing(int edge) const {
  const Edge& e = graph_.edge(edge);
  double len = e.is_halfline() ? spec_.L_trunc : e.length;
  return len / intervals(edge);
}

GraphField GraphField::sampled(const MetricGraph& graph, const GridSpec& spec,
                               const std::function<double(int, double)>& f) {
  GraphField u(graph, spec);
  for (int j = 0; j < graph.num_edges(); ++j) {
    auto& s = u.samples_[static_cast<size_t>(j)];
    double hj = u.spacing(j);
    for (size_t i = 0; i < s.size(); ++i) s[i] = f(j, hj * static_cast<double>(i));
  }
  // Continuity: endpoint evaluations at each vertex must agree; store average.
  std::vector<double> sum(static_cast<size_t>(graph.num_vertices()), 0.0);
  std::vector<int> cnt(static_cast<size_t>(graph.num_vertices()), 0);
  auto visit = [&](int v, double val) {
    sum[static_cast<size_t>(v)] += val;
    ++cnt[static_cast<size_t>(v)];
  };
  for (int j = 0; j < graph.num_edges(); ++j) {
    const Edge& e = graph.edge(j);
    const auto& s = u.samples_[static_cast<size_t>(j)];
    visit(e.left, s.front());
    if (!e.is_halfline()) visit(e.right, s.back());
  }
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (cnt[static_cast<size_t>(v)] == 0) continue;
    u.vertex_values_[static_cast<size_t>(v)] = sum[static_cast<size_t>(v)] / cnt[static_cast<size_t>(v)];
  }
  for (int j = 0; j < graph.num_edges(); ++j) {
    const Edge& e = graph.edge(j);
    auto& s = u.samples_[static_cast<size_t>(j)];
    double vl = u.vertex_values_[static_cast<size_t>(e.left)];
    if (std::abs(s.front() - vl) > 1e-9)
      throw std::invalid_argument("sampled: continuity violation at vertex " + std::to_string(e.left));
    s.front() = vl;
    if (!e.is_halfline()) {
      double vr = u.vertex_values_[static_cast<size_t>(e.right)];
      if (std::abs(s.back() - vr) > 1e-9)
        throw std::invalid_argument("sampled: continuity violation at vertex " + std::to_string(e.right));
      s.back() = vr;
    }
  }
  return u;
}

int GraphField::dof_count() const {
  int n = graph_.num_vertices();
  for (int j = 0; j < graph_.num_edges(); ++j) n += intervals(j) - 1;
  return n;
}

std::vector<double> GraphField::pack() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(dof_count()));
  out.insert(out.end(), vertex_values_.begin(), vertex_values_.end());
  for (int j = 0; j < graph_.num_edges(); ++j) {
    const auto& s = samples_[static_cast<size_t>(j)];
    out.insert(out.end(), s.begin() + 1, s.end() - 1);
  }
  return out;
}

void GraphField::set_vertex(int v, double value) {
  vertex_values_[static_cast<size_t>(v)] = value;
  for (int j = 0; j < graph_.num_edges(); ++j) {
    const Edge& e = graph_.edge(j);
    auto& s = samples_[static_cast<size_t>(j)];
    if (e.left == v) s.front() = value;
    if (e.right == v) s.back() = value;
  }
}

void GraphField::unpack(std::span<const double> dofs) {
  if (dofs.size() != static_cast<size_t>(dof_count()))
    throw std::invalid_argument("unpack: DOF length mismatch");
  size_t k = 0;
  for (int v = 0; v < graph_.num_vertices(); ++v) set_vertex(v, dofs[k++]);
  for (int j = 0; j < graph_.num_edges(); ++j) {
    auto& s = samples_[static_cast<size_t>(j)];
    for (size_t i = 1; i + 1 < s.size(); ++i) s[i] = dofs[k++];
    if (graph_.edge(j).is_halfline()) s.back() = 0.0;
  }
}

GraphField GraphField::unpacked(std::span<const double> dofs, const MetricGraph& graph, const GridSpec& spec) {
  GraphField u(graph, spec);
  u.unpack(dofs);
  return u;
}

void GraphField::scale(double a) {
  for (auto& s : samples_)
    for (double& x : s) x *= a;
  for (double& x : vertex_values_) x *= a;
}

void GraphField::axpy(double a, std::span<const double> dofs) {
  if (dofs.size() != static_cast<size_t>(dof_count()))
    throw std::invalid_argument("axpy: DOF length mismatch");
  size_t k = 0;
  for (int v = 0; v < graph_.num_vertices(); ++v) {
    set_vertex(v, vertex_values_[static_cast<size_t>(v)] + a * dofs[k]);
    ++k;
  }
  for (int j = 0; j < graph_.num_edges(); ++j) {
    auto& s = samples_[static_cast<size_t>(j)];
    for (size_t i = 1; i + 1 < s.size(); ++i) s[i] += a * dofs[k++];
  }
}

std::string GraphField::check(bool require_zero_tail) const {
  for (int j = 0; j < graph_.num_edges(); ++j) {
    const Edge& e = graph_.edge(j);
    const auto& s = samples_[static_cast<size_t>(j)];
    for (double x : s)
      if (!std::isfinite(x)) return "non-finite sample on edge " + std::to_string(j);
    if (s.front() != vertex_values_[static_cast<size_t>(e.left)])
      return "continuity broken at left endpoint of edge " + std::to_string(j);
    if (!e.is_halfline() && s.back() != vertex_values_[static_cast<size_t>(e.right)])
      return "continuity broken at right endpoint of edge " + std::to_string(j);
    if (require_zero_tail && e.is_halfline() && s.back() != 0.0)
      return "half-line " + std::to_string(j) + " far node is not zero";
  }
  return {};
}

std::string GraphField::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "edge,x,value\n";
  for (int j = 0; j < graph_.num_edges(); ++j) {
    const auto& s = samples_[static_cast<size_t>(j)];
    double hj = spacing(j);
    for (size_t i = 0; i < s.size(); ++i)
      out << j << "," << hj * static_cast<double>(i) << "," << s[i] << "\n";
  }
  return out.str();
}

double field_mass(const GraphField& u) {
  double total = 0.0;
  for (int j = 0; j < u.graph().num_edges(); ++j) {
    auto s = u.samples(j);
    double acc = 0.5 * (s.front() * s.front() + s.back() * s.back());
    for (size_t i = 1; i + 1 < s.size(); ++i) acc += s[i] * s[i];
    total += acc * u.spacing(j);
  }
  return total;
}

GraphField rescale_mass(const GraphField& u, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("rescale_mass: mu must be positive");
  double m = field_mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("rescale_mass: zero-mass field");
  GraphField out = u;
  out.scale(std::sqrt(mu / m));
  return out;
}

GraphField random_field(const MetricGraph& graph, const GridSpec& spec, unsigned long long seed) {
  GraphField u(graph, spec);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> dofs(static_cast<size_t>(u.dof_count()));
  for (double& x : dofs) x = dist(rng);
  u.unpack(dofs);
  return u;
}

}  // namespace nlsg
