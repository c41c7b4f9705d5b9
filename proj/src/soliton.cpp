#include "nlsg/soliton.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlsg {

namespace {

void require_subcritical(double p) {
  if (!(p > 2.0 && p < 6.0)) throw std::invalid_argument("exponent p must lie in (2, 6)");
}

double sech(double z) { return 1.0 / std::cosh(z); }

// integral of sech^a over the line: sqrt(pi) Gamma(a/2) / Gamma((a+1)/2)
double sech_power_integral(double a) {
  return std::sqrt(M_PI) * std::exp(std::lgamma(a / 2.0) - std::lgamma((a + 1.0) / 2.0));
}

// Composite Simpson on [a, b], refined until the value settles.
template <typename F>
double simpson_adaptive(F f, double a, double b) {
  int n = 512;
  double prev = 0.0;
  for (int round = 0; round < 16; ++round) {
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    double val = acc * h / 3.0;
    if (round > 0 && std::abs(val - prev) <= 1e-13 * std::max(1.0, std::abs(val))) return val;
    prev = val;
    n *= 2;
  }
  return prev;
}

}  // namespace

double SolitonParams::value(double x) const {
  return amplitude * std::pow(sech(rate * x), 2.0 / (p - 2.0));
}

double SolitonParams::deriv(double x) const {
  double s = 2.0 / (p - 2.0);
  double z = rate * x;
  return -amplitude * rate * s * std::pow(sech(z), s) * std::tanh(z);
}

double SolitonParams::deriv2(double x) const {
  double s = 2.0 / (p - 2.0);
  double z = rate * x;
  double S = sech(z);
  return amplitude * rate * rate * s * (s * std::pow(S, s) - (s + 1.0) * std::pow(S, s + 2.0));
}

double SolitonParams::omega() const {
  double s = 2.0 / (p - 2.0);
  return rate * rate * s * s;
}

std::pair<double, double> soliton_constants(double p) {
  require_subcritical(p);
  double s = 2.0 / (p - 2.0);
  // Ansatz phi = A sech^s(Bx): matching powers in -phi'' + omega phi = phi^{p-1}
  // forces omega = B^2 s^2 and A^{p-2} = B^2 s (s+1); the mass integral
  // A^2 I(2s) / B = mu then pins B against mu.
  double I2s = sech_power_integral(2.0 * s);
  double c = std::pow(std::pow(s * (s + 1.0), 2.0 / (p - 2.0)) * I2s, -(p - 2.0) / (6.0 - p));
  double C = std::pow(s * (s + 1.0), 1.0 / (p - 2.0)) * std::pow(c, 2.0 / (p - 2.0));
  return {C, c};
}

SolitonParams make_soliton(double p, double mu) {
  require_subcritical(p);
  if (!(mu > 0.0)) throw std::invalid_argument("make_soliton: mu must be positive");
  auto [C, c] = soliton_constants(p);
  SolitonParams s;
  s.p = p;
  s.mu = mu;
  s.C = C;
  s.c = c;
  s.amplitude = C * std::pow(mu, 2.0 / (6.0 - p));
  s.rate = c * std::pow(mu, (p - 2.0) / (6.0 - p));
  return s;
}

namespace {

// Interval wide enough that the dropped tails of phi^2, phi'^2 and phi^p all
// fall under `tol` (everything decays at least like exp(-2 s B |x|)).
double quadrature_halfwidth(const SolitonParams& s, double tol) {
  double decay = 2.0 * s.rate * 2.0 / (s.p - 2.0);
  double W = 10.0 / s.rate;
  double scale = std::max({s.amplitude * s.amplitude, 1.0});
  while (scale * std::exp(-decay * W) / decay > tol) W *= 2.0;
  return W;
}

}  // namespace

double soliton_energy(double p, double mu) {
  SolitonParams s = make_soliton(p, mu);
  double W = quadrature_halfwidth(s, 1e-12);
  auto integrand = [&](double x) {
    double d = s.deriv(x);
    return 0.5 * d * d - std::pow(std::abs(s.value(x)), p) / p;
  };
  return simpson_adaptive(integrand, -W, W);
}

double soliton_mass_quadrature(const SolitonParams& s) {
  double W = quadrature_halfwidth(s, 1e-12);
  auto integrand = [&](double x) {
    double v = s.value(x);
    return v * v;
  };
  return simpson_adaptive(integrand, -W, W);
}

SolitonOdeFit soliton_ode_fit(const SolitonParams& s, double h) {
  double W = 10.0 / s.rate;
  int n = static_cast<int>(std::ceil(2.0 * W / h));
  std::vector<double> phi(static_cast<size_t>(n) + 1), rhs(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double x = -W + h * i;
    phi[static_cast<size_t>(i)] = s.value(x);
    rhs[static_cast<size_t>(i)] = std::pow(std::abs(phi[static_cast<size_t>(i)]), s.p - 2.0) * phi[static_cast<size_t>(i)];
  }
  // least squares over interior nodes: -phi'' + omega phi = phi^{p-1}
  double num = 0.0, den = 0.0;
  std::vector<double> lap(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i < n; ++i) {
    size_t k = static_cast<size_t>(i);
    lap[k] = (phi[k - 1] - 2.0 * phi[k] + phi[k + 1]) / (h * h);
    num += phi[k] * (rhs[k] + lap[k]);
    den += phi[k] * phi[k];
  }
  SolitonOdeFit fit;
  fit.omega = num / den;
  for (int i = 1; i < n; ++i) {
    size_t k = static_cast<size_t>(i);
    double r = -lap[k] + fit.omega * phi[k] - rhs[k];
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
    fit.scale = std::max(fit.scale, std::abs(rhs[k]));
  }
  return fit;
}

GraphField half_soliton_field(const MetricGraph& g, const GridSpec& spec, double p, double mu) {
  if (g.num_edges() != 1 || !g.edge(0).is_halfline())
    throw std::invalid_argument("half_soliton_field: graph must be a single half-line");
  SolitonParams s = make_soliton(p, 2.0 * mu);
  GraphField u = GraphField::sampled(g, spec, [&](int, double x) { return s.value(x); });
  // Dirichlet surrogate at the truncated node.
  std::vector<double> dofs = u.pack();
  u.unpack(dofs);
  return u;
}

namespace {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

GraphField escaping_sequence(const MetricGraph& g, const GridSpec& spec, double p, double mu, double shift) {
  if (shift < 0.0) throw std::invalid_argument("escaping_sequence: shift must be >= 0");
  std::vector<int> hl = g.halfline_ids();
  if (hl.empty()) throw std::invalid_argument("escaping_sequence: graph has no half-line");
  SolitonParams s = make_soliton(p, mu);
  if (spec.L_trunc < shift + 10.0 / s.rate)
    throw std::invalid_argument("escaping_sequence: truncation too short for this shift");
  int carrier = hl.front();
  GraphField u = GraphField::sampled(g, spec, [&](int j, double x) {
    if (j != carrier) return 0.0;
    return smoothstep(x) * s.value(x - shift);
  });
  std::vector<double> dofs = u.pack();
  u.unpack(dofs);
  return rescale_mass(u, mu);
}

}  // namespace nlsg
