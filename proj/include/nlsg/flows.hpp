#pragma once

#include <vector>

#include "nlsg/field.hpp"
#include "nlsg/functionals.hpp"

namespace nlsg {

// Knobs for the mass-constrained descent. tau0 <= 0 selects the diffusion
// heuristic 0.4 h_min^2; the step regrows after clean accepts up to half the
// finest spacing, backtracking keeps every accepted step an energy decrease.
struct FlowConfig {
  double tau0 = 0.0;
  int max_iters = 20000;
  double energy_tol = 1e-12;
  double backtrack = 0.5;
  int window = 200;
  double tau_growth = 1.1;
  double escape_D = 10.0;

  void validate() const;
};

// Mass fraction beyond distance D and the center of mass, for one half-line.
struct EscapeMetric {
  int edge = 0;
  double fraction = 0.0;
  double center_of_mass = 0.0;
};

struct FlowResult {
  GraphField field;
  EnergyReport report;
  std::vector<double> energy_trace;   // accepted iterations
  std::vector<double> mass_trace;
  std::vector<double> escape_trace;   // max half-line fraction beyond escape_D
  double nu = 0.0;                    // multiplier estimate -<grad,u>/(2 mu)
  double multiplier_residual = 0.0;   // ||grad + 2 nu M u|| / ||grad||
  std::vector<EscapeMetric> escape;
  bool converged = false;
  int iterations = 0;

  std::string trace_csv() const;      // iteration,energy,mass,max_escape_fraction
};

// Projected gradient descent u <- rescale_mass(u - tau grad, mu) with
// backtracking line search and an energy-stagnation stop. Aborts if the
// energy dives below 20x the line soliton energy (discretization blow-up).
FlowResult minimize(const MetricGraph& g, const GridSpec& spec, double p, double mu,
                    const GraphField& init, const FlowConfig& cfg);

// Quadrature of u^2 beyond x > D on each half-line, normalized by the total
// mass, plus the per-half-line center of mass. Requires D < L_trunc.
std::vector<EscapeMetric> escape_metrics(const GraphField& u, double D);

// Default starting guess: soliton-shaped bump centered at vertex 0 measured
// in graph distance, rescaled to mass mu.
GraphField default_initial_field(const MetricGraph& g, const GridSpec& spec, double p, double mu);

}  // namespace nlsg
