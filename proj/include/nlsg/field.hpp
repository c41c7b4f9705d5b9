#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlsg/graph.hpp"

namespace nlsg {

// Grid parameters: target spacing h and the truncation length substituted
// for infinity on half-lines.
struct GridSpec {
  double h = 0.05;
  double L_trunc = 40.0;

  void validate() const;
};

// Discretized function on a metric graph. Each edge j carries a uniform grid
// of n_j + 1 nodes over [0, l_j] (half-lines: [0, L_trunc]); endpoint samples
// are shared with the vertex-value table, which is what enforces continuity.
// Truncated half-lines hold 0 at their far node whenever the field was built
// through the DOF interface (the Dirichlet surrogate for decay at infinity);
// `sampled` stores the callable's own far value and leaves decay to the
// caller.
class GraphField {
public:
  GraphField(MetricGraph graph, GridSpec spec);  // zero field
  GraphField(MetricGraph graph, GridSpec spec, std::vector<std::vector<double>> edge_samples,
             std::vector<double> vertex_values);

  // Evaluates f(edge, x) at every node. Endpoint evaluations of edges meeting
  // at a vertex must agree to 1e-9; the vertex value stored is their average.
  static GraphField sampled(const MetricGraph& graph, const GridSpec& spec,
                            const std::function<double(int, double)>& f);

  const MetricGraph& graph() const { return graph_; }
  const GridSpec& grid() const { return spec_; }

  int intervals(int edge) const { return static_cast<int>(samples_[static_cast<size_t>(edge)].size()) - 1; }
  double spacing(int edge) const;
  double coord(int edge, int i) const { return spacing(edge) * i; }
  std::span<const double> samples(int edge) const { return samples_[static_cast<size_t>(edge)]; }
  std::span<double> mutable_samples(int edge) { return samples_[static_cast<size_t>(edge)]; }
  double vertex_value(int v) const { return vertex_values_[static_cast<size_t>(v)]; }

  // Packed layout: vertex values first, then per edge the interior nodes
  // 1..n_j-1 (half-line far nodes are pinned to 0 and carry no DOF).
  int dof_count() const;
  std::vector<double> pack() const;
  void unpack(std::span<const double> dofs);  // keeps this field's grid shape
  static GraphField unpacked(std::span<const double> dofs, const MetricGraph& graph, const GridSpec& spec);

  void scale(double a);
  // In-place u <- u + a*dofs on the packed DOFs (endpoint samples re-synced).
  void axpy(double a, std::span<const double> dofs);

  // Checks continuity (shared endpoints), finiteness and, if requested, the
  // zero far node on half-lines. Returns "" or the first violation.
  std::string check(bool require_zero_tail = true) const;

  // CSV dump (edge, x, value) for plotting.
  std::string to_csv() const;

private:
  void set_vertex(int v, double value);

  MetricGraph graph_;
  GridSpec spec_;
  std::vector<std::vector<double>> samples_;
  std::vector<double> vertex_values_;
};

// Trapezoid mass  ||u||_2^2. Defined here (not in functionals) because the
// field's own normalization uses it.
double field_mass(const GraphField& u);

// Returns (mu / mass(u))^{1/2} * u; throws on zero mass.
GraphField rescale_mass(const GraphField& u, double mu);

// Random field with all DOFs uniform in [-1, 1]; half-line tails pinned 0.
GraphField random_field(const MetricGraph& graph, const GridSpec& spec, unsigned long long seed);

}  // namespace nlsg
