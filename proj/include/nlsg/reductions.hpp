#pragma once

#include <string>
#include <vector>

#include "nlsg/field.hpp"
#include "nlsg/functionals.hpp"

namespace nlsg {

// A function on a single interval (0, length), length possibly infinite, as
// a strictly increasing coordinate array starting at 0 plus values. Infinite
// intervals are held through their truncated representation; coordinate
// rescalings act on the stored coordinates.
struct EdgeFunction {
  double length = 0.0;
  std::vector<double> xs;
  std::vector<double> values;

  double boundary_left() const { return values.front(); }
  double boundary_right() const { return values.back(); }

  double mass() const;
  double kinetic() const;            // (1/2) sum (du)^2/dx
  double power_integral(double q) const;  // integral of |u|^q
  double energy(double p) const;     // kinetic - power_integral(p)/p

  // New EdgeFunction with coordinates (and length) multiplied by a > 0;
  // values untouched, so the trapezoid functionals scale by exact factors.
  EdgeFunction rescaled_coords(double a) const;

  bool is_uniform(double* spacing = nullptr) const;
  void validate() const;
};

// Extract the restriction of a field to one edge (uniform grid).
EdgeFunction edge_restriction(const GraphField& u, int edge);

// Output of the two-edge merge: lambda = mass(u2)/mass(u1), the kept
// candidate index (1 or 2), the merged function, and the energy bookkeeping.
struct ComparisonResult {
  double lambda = 0.0;
  int chosen = 1;
  EdgeFunction merged;
  double energy_before = 0.0;
  double energy_after = 0.0;
  bool strict = false;
};

// Merges two nonzero edge functions into one carrying the combined mass and
// no larger energy; the merged boundary values equal those of the chosen
// input. Strict decrease unless both inputs are constants of equal magnitude.
ComparisonResult comparison_transform(const EdgeFunction& u1, const EdgeFunction& u2, double p);

// Splices a self-loop function (u(0) = u(l1)) with the function on the edge
// it hangs from (tail(0) equal to the loop's boundary value) into one edge of
// length l1 + l2; mass and energy add exactly.
EdgeFunction melt_selfloop(const EdgeFunction& loop_fn, const EdgeFunction& tail_fn);

// Rewrites a field on an unfoldable graph as a field on a chain-plus-two-
// half-lines graph along the Euler path; energy and mass are preserved
// exactly (samples are only re-indexed, reversed where the path runs an edge
// backwards).
struct UnfoldResult {
  MetricGraph line;
  GraphField field;
};
UnfoldResult unfold(const MetricGraph& g, const GraphField& u);

// Merges the two lowest-indexed bridges of an even-n bridge graph through
// comparison_transform, producing the (n-1)-bridge graph and field. Mass is
// preserved; energy does not increase.
struct BridgeReduceResult {
  MetricGraph graph;
  GraphField field;
  ComparisonResult comparison;
};
BridgeReduceResult bridge_reduce(const MetricGraph& g, const GraphField& u, double p);

// One applied transform, for the haircut certificate.
struct ReductionStep {
  std::string transform;
  std::vector<int> edges;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double mass_before = 0.0;
  double mass_after = 0.0;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::string to_json() const;
};

}  // namespace nlsg
