#pragma once

#include <utility>

#include "nlsg/field.hpp"

namespace nlsg {

// Closed-form minimizer on the line at mass mu:
//   phi(x) = C_p mu^{2/(6-p)} sech^{2/(p-2)}(c_p mu^{(p-2)/(6-p)} x).
// `amplitude` and `rate` are the mu-scaled prefactor and argument slope.
struct SolitonParams {
  double p = 4.0;
  double mu = 1.0;
  double C = 0.0;    // amplitude constant, function of p only
  double c = 0.0;    // width constant, function of p only
  double amplitude = 0.0;
  double rate = 0.0;

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;
  double omega() const;  // multiplier of the stationary equation -phi'' + omega phi = phi^{p-1}
};

// Constants obtained by substituting the sech ansatz into the stationary
// equation and imposing the mass constraint through the Beta-function value
// of the sech-power integrals. Throws unless 2 < p < 6.
std::pair<double, double> soliton_constants(double p);

SolitonParams make_soliton(double p, double mu);

// E(phi_mu, R) by composite-Simpson quadrature of the closed form, widening
// the interval until the analytic tail bound drops below 1e-12 and refining
// until the value settles.
double soliton_energy(double p, double mu);

// Quadrature of phi^2 over the line, same scheme as soliton_energy.
double soliton_mass_quadrature(const SolitonParams& s);

// Validation of the profile: second differences on a uniform grid of spacing
// h, multiplier recovered by least squares, worst pointwise residual of
// -phi'' + omega phi - phi^{p-1} and the natural comparison scale.
struct SolitonOdeFit {
  double omega = 0.0;
  double max_residual = 0.0;
  double scale = 0.0;  // max |phi^{p-1}|
};
SolitonOdeFit soliton_ode_fit(const SolitonParams& s, double h);

// Restriction of phi_{2mu} to a single half-line graph; carries mass mu.
GraphField half_soliton_field(const MetricGraph& g, const GridSpec& spec, double p, double mu);

// The escaping profile A chi(x) phi_mu(x - shift) on the graph's first
// half-line, zero elsewhere; chi is the cubic smoothstep ramp on [0,1] and A
// normalizes the mass to mu. Requires L_trunc >= shift + 10 soliton widths.
GraphField escaping_sequence(const MetricGraph& g, const GridSpec& spec, double p, double mu, double shift);

}  // namespace nlsg
