#include "nlsg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlsg {

namespace {

void require_subcritical(double p) {
  if (!(p > 2.0 && p < 6.0)) throw std::invalid_argument("exponent p must lie in (2, 6)");
}

double pow_abs(double x, double p) { return std::pow(std::abs(x), p); }

}  // namespace

std::string EnergyReport::to_json() const {
  std::ostringstream out;
  out.precision(17);
  out << "{\"kinetic\":" << kinetic << ",\"potential\":" << potential << ",\"total\":" << total
      << ",\"mass\":" << mass << ",\"p\":" << p << "}";
  return out.str();
}

double KirchhoffReport::max() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, r);
  return m;
}

double mass(const GraphField& u) { return field_mass(u); }

double lp_norm_p(const GraphField& u, double p) {
  double total = 0.0;
  for (int j = 0; j < u.graph().num_edges(); ++j) {
    auto s = u.samples(j);
    double acc = 0.5 * (pow_abs(s.front(), p) + pow_abs(s.back(), p));
    for (size_t i = 1; i + 1 < s.size(); ++i) acc += pow_abs(s[i], p);
    total += acc * u.spacing(j);
  }
  return total;
}

EnergyReport energy(const GraphField& u, double p) {
  require_subcritical(p);
  EnergyReport r;
  r.p = p;
  for (int j = 0; j < u.graph().num_edges(); ++j) {
    auto s = u.samples(j);
    double hj = u.spacing(j);
    double kin = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      double d = s[i + 1] - s[i];
      kin += d * d;
    }
    r.kinetic += kin / (2.0 * hj);
  }
  r.potential = lp_norm_p(u, p) / p;
  r.mass = field_mass(u);
  r.total = r.kinetic - r.potential;
  return r;
}

std::vector<double> energy_gradient(const GraphField& u, double p) {
  std::vector<double> g(static_cast<size_t>(u.dof_count()), 0.0);
  energy_gradient_into(u, p, g);
  return g;
}

void energy_gradient_into(const GraphField& u, double p, std::span<double> out) {
  require_subcritical(p);
  if (out.size() != static_cast<size_t>(u.dof_count()))
    throw std::invalid_argument("energy_gradient: output length mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  const MetricGraph& g = u.graph();
  auto nonlinear = [p](double v) { return pow_abs(v, p - 2.0) * v; };

  size_t interior_base = static_cast<size_t>(g.num_vertices());
  for (int j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    auto s = u.samples(j);
    double hj = u.spacing(j);
    size_t n = s.size() - 1;
    // interior nodes 1..n-1
    for (size_t i = 1; i < n; ++i)
      out[interior_base + i - 1] = (2.0 * s[i] - s[i - 1] - s[i + 1]) / hj - hj * nonlinear(s[i]);
    // endpoint contributions accumulate on the shared vertex DOFs
    out[static_cast<size_t>(e.left)] += (s[0] - s[1]) / hj - 0.5 * hj * nonlinear(s[0]);
    if (!e.is_halfline())
      out[static_cast<size_t>(e.right)] += (s[n] - s[n - 1]) / hj - 0.5 * hj * nonlinear(s[n]);
    interior_base += n - 1;
  }
}

KirchhoffReport kirchhoff_residual(const GraphField& u) {
  const MetricGraph& g = u.graph();
  std::vector<double> signed_sum(static_cast<size_t>(g.num_vertices()), 0.0);
  for (int j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    auto s = u.samples(j);
    if (s.size() < 3) throw std::invalid_argument("kirchhoff_residual: edge " + std::to_string(j) + " too coarse");
    double hj = u.spacing(j);
    size_t n = s.size() - 1;
    double d0 = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * hj);
    signed_sum[static_cast<size_t>(e.left)] -= d0;
    if (!e.is_halfline()) {
      double dl = (3.0 * s[n] - 4.0 * s[n - 1] + s[n - 2]) / (2.0 * hj);
      signed_sum[static_cast<size_t>(e.right)] += dl;
    }
  }
  KirchhoffReport r;
  r.residual.resize(signed_sum.size());
  for (size_t v = 0; v < signed_sum.size(); ++v) r.residual[v] = std::abs(signed_sum[v]);
  return r;
}

double gn_ratio(const GraphField& u, double p) {
  require_subcritical(p);
  double m = field_mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("gn_ratio: zero field");
  EnergyReport e = energy(u, p);
  double lp = std::pow(p * e.potential, 1.0 / p);
  double l2 = std::sqrt(m);
  double h1 = std::sqrt(m + 2.0 * e.kinetic);
  return lp / (std::pow(l2, 0.5 + 1.0 / p) * std::pow(h1, 0.5 - 1.0 / p));
}

}  // namespace nlsg
