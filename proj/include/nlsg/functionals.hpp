#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlsg/field.hpp"

namespace nlsg {

// Evaluation of the constrained NLS energy at one field.
struct EnergyReport {
  double kinetic = 0.0;    // (1/2) ||u'||_2^2
  double potential = 0.0;  // (1/p) ||u||_p^p
  double total = 0.0;      // kinetic - potential
  double mass = 0.0;       // ||u||_2^2
  double p = 0.0;

  std::string to_json() const;
};

// Per-vertex magnitude of the signed sum of outgoing derivatives, the
// stationarity condition at vertices.
struct KirchhoffReport {
  std::vector<double> residual;  // indexed by vertex
  double max() const;
};

double mass(const GraphField& u);
double lp_norm_p(const GraphField& u, double p);

// Trapezoid potential + forward-difference kinetic term; the discrete
// functional whose exact gradient energy_gradient() returns.
EnergyReport energy(const GraphField& u, double p);

// Exact gradient of the discrete energy with respect to the packed DOFs.
// Vertex entries accumulate one term per incident edge end, which is where
// the discrete Kirchhoff condition comes from.
std::vector<double> energy_gradient(const GraphField& u, double p);
void energy_gradient_into(const GraphField& u, double p, std::span<double> out);

// One-sided 3-point derivative stencils; every incident edge needs >= 3 nodes.
KirchhoffReport kirchhoff_residual(const GraphField& u);

// ||u||_p / (||u||_2^{1/2+1/p} ||u||_{H^1}^{1/2-1/p}) with
// ||u||_{H^1}^2 = ||u||_2^2 + ||u'||_2^2. Diagnostic only.
double gn_ratio(const GraphField& u, double p);

}  // namespace nlsg
