#include "nlsg/flows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlsg/soliton.hpp"

namespace nlsg {

void FlowConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("FlowConfig: max_iters must be positive");
  if (!(energy_tol > 0.0)) throw std::invalid_argument("FlowConfig: energy_tol must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("FlowConfig: backtrack must lie in (0,1)");
  if (window < 1) throw std::invalid_argument("FlowConfig: window must be positive");
  if (!(tau_growth >= 1.0)) throw std::invalid_argument("FlowConfig: tau_growth must be >= 1");
  if (!(escape_D > 0.0)) throw std::invalid_argument("FlowConfig: escape_D must be positive");
}

namespace {

// Trapezoid weight of each packed DOF, i.e. the diagonal mass matrix.
std::vector<double> dof_weights(const GraphField& u) {
  std::vector<double> w(static_cast<size_t>(u.dof_count()), 0.0);
  const MetricGraph& g = u.graph();
  size_t interior_base = static_cast<size_t>(g.num_vertices());
  for (int j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    double hj = u.spacing(j);
    size_t n = static_cast<size_t>(u.intervals(j));
    for (size_t i = 1; i < n; ++i) w[interior_base + i - 1] = hj;
    w[static_cast<size_t>(e.left)] += 0.5 * hj;
    if (!e.is_halfline()) w[static_cast<size_t>(e.right)] += 0.5 * hj;
    interior_base += n - 1;
  }
  return w;
}

double max_escape_fraction(const GraphField& u, double D, double total_mass) {
  double worst = 0.0;
  for (int j = 0; j < u.graph().num_edges(); ++j) {
    if (!u.graph().edge(j).is_halfline()) continue;
    auto s = u.samples(j);
    double hj = u.spacing(j);
    double acc = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      double x0 = hj * static_cast<double>(i);
      double x1 = x0 + hj;
      if (x1 <= D) continue;
      double a = s[i], b = s[i + 1];
      if (x0 < D) {
        double t = (D - x0) / hj;
        a = a + (b - a) * t;
        x0 = D;
      }
      acc += (x1 - x0) * 0.5 * (a * a + b * b);
    }
    worst = std::max(worst, acc / total_mass);
  }
  return worst;
}

}  // namespace

std::vector<EscapeMetric> escape_metrics(const GraphField& u, double D) {
  if (u.graph().num_halflines() == 0)
    throw std::invalid_argument("escape_metrics: graph has no half-line");
  if (!(D > 0.0) || D >= u.grid().L_trunc)
    throw std::invalid_argument("escape_metrics: D must lie in (0, L_trunc)");
  double total = field_mass(u);
  std::vector<EscapeMetric> out;
  for (int j = 0; j < u.graph().num_edges(); ++j) {
    if (!u.graph().edge(j).is_halfline()) continue;
    auto s = u.samples(j);
    double hj = u.spacing(j);
    EscapeMetric m;
    m.edge = j;
    double beyond = 0.0, line_mass = 0.0, first_moment = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      double x0 = hj * static_cast<double>(i);
      double x1 = x0 + hj;
      double a = s[i], b = s[i + 1];
      line_mass += hj * 0.5 * (a * a + b * b);
      first_moment += hj * 0.5 * (x0 * a * a + x1 * b * b);
      if (x1 <= D) continue;
      double xa = x0, va = a;
      if (x0 < D) {
        double t = (D - x0) / hj;
        va = a + (b - a) * t;
        xa = D;
      }
      beyond += (x1 - xa) * 0.5 * (va * va + b * b);
    }
    m.fraction = total > 0.0 ? beyond / total : 0.0;
    m.center_of_mass = line_mass > 0.0 ? first_moment / line_mass : 0.0;
    out.push_back(m);
  }
  return out;
}

GraphField default_initial_field(const MetricGraph& g, const GridSpec& spec, double p, double mu) {
  // graph distance from vertex 0, Bellman-Ford over the finite edges
  std::vector<double> dist(static_cast<size_t>(g.num_vertices()), std::numeric_limits<double>::infinity());
  dist[0] = 0.0;
  for (int round = 0; round < g.num_vertices(); ++round) {
    bool changed = false;
    for (const Edge& e : g.edges()) {
      if (e.is_halfline()) continue;
      size_t a = static_cast<size_t>(e.left), b = static_cast<size_t>(e.right);
      if (dist[a] + e.length < dist[b]) {
        dist[b] = dist[a] + e.length;
        changed = true;
      }
      if (dist[b] + e.length < dist[a]) {
        dist[a] = dist[b] + e.length;
        changed = true;
      }
    }
    if (!changed) break;
  }
  SolitonParams bump = make_soliton(p, 2.0 * mu);
  GraphField u = GraphField::sampled(g, spec, [&](int j, double x) {
    const Edge& e = g.edge(j);
    double d = dist[static_cast<size_t>(e.left)] + x;
    if (!e.is_halfline()) d = std::min(d, dist[static_cast<size_t>(e.right)] + (e.length - x));
    return std::isfinite(d) ? bump.value(d) : 0.0;
  });
  std::vector<double> dofs = u.pack();
  u.unpack(dofs);
  return rescale_mass(u, mu);
}

FlowResult minimize(const MetricGraph& g, const GridSpec& spec, double p, double mu,
                    const GraphField& init, const FlowConfig& cfg) {
  cfg.validate();
  if (!(p > 2.0 && p < 6.0)) throw std::invalid_argument("minimize: p must lie in (2, 6)");
  if (!(mu > 0.0)) throw std::invalid_argument("minimize: mu must be positive");

  GraphField u = rescale_mass(init, mu);
  double h_min = u.spacing(0);
  for (int j = 1; j < g.num_edges(); ++j) h_min = std::min(h_min, u.spacing(j));
  double tau_cap = 0.5 * h_min;
  double tau = cfg.tau0 > 0.0 ? cfg.tau0 : 0.4 * h_min * h_min;
  tau = std::min(tau, tau_cap);
  const double tau_floor = 1e-14 * tau_cap;
  const double energy_floor = 20.0 * soliton_energy(p, mu);
  const bool has_halflines = g.num_halflines() > 0;

  FlowResult res{u, energy(u, p), {}, {}, {}, 0.0, 0.0, {}, false, 0};
  EnergyReport rep = res.report;
  res.energy_trace.push_back(rep.total);
  res.mass_trace.push_back(rep.mass);
  res.escape_trace.push_back(has_halflines ? max_escape_fraction(u, cfg.escape_D, rep.mass) : 0.0);

  std::vector<double> grad(static_cast<size_t>(u.dof_count()));
  GraphField trial = u;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    energy_gradient_into(u, p, grad);
    bool accepted = false;
    int backtracks = 0;
    EnergyReport trial_rep;
    while (tau >= tau_floor) {
      trial = u;
      trial.axpy(-tau, grad);
      double m = field_mass(trial);
      if (m > 0.0) {
        trial.scale(std::sqrt(mu / m));
        trial_rep = energy(trial, p);
        if (trial_rep.total < rep.total) {
          accepted = true;
          break;
        }
      }
      tau *= cfg.backtrack;
      ++backtracks;
    }
    if (!accepted) {
      // no step decreases the energy: discrete stationary point
      res.converged = true;
      break;
    }
    std::swap(u, trial);
    rep = trial_rep;
    res.iterations = iter;
    if (backtracks == 0) tau = std::min(tau * cfg.tau_growth, tau_cap);
    res.energy_trace.push_back(rep.total);
    res.mass_trace.push_back(rep.mass);
    res.escape_trace.push_back(has_halflines ? max_escape_fraction(u, cfg.escape_D, rep.mass) : 0.0);
    if (rep.total < energy_floor)
      throw std::runtime_error("minimize: energy dived below the divergence guard, grid too coarse");
    size_t k = res.energy_trace.size() - 1;
    if (k >= static_cast<size_t>(cfg.window) &&
        std::abs(res.energy_trace[k - static_cast<size_t>(cfg.window)] - res.energy_trace[k]) < cfg.energy_tol) {
      res.converged = true;
      break;
    }
  }

  res.field = u;
  res.report = rep;
  energy_gradient_into(u, p, grad);
  std::vector<double> weights = dof_weights(u);
  std::vector<double> packed = u.pack();
  double gu = 0.0, gnorm2 = 0.0;
  for (size_t i = 0; i < grad.size(); ++i) {
    gu += grad[i] * packed[i];
    gnorm2 += grad[i] * grad[i];
  }
  res.nu = -gu / (2.0 * rep.mass);
  double resid2 = 0.0;
  for (size_t i = 0; i < grad.size(); ++i) {
    double r = grad[i] + 2.0 * res.nu * weights[i] * packed[i];
    resid2 += r * r;
  }
  res.multiplier_residual = gnorm2 > 0.0 ? std::sqrt(resid2 / gnorm2) : 0.0;
  if (has_halflines) res.escape = escape_metrics(u, cfg.escape_D);
  return res;
}

std::string FlowResult::trace_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,energy,mass,max_escape_fraction\n";
  for (size_t k = 0; k < energy_trace.size(); ++k)
    out << k << "," << energy_trace[k] << "," << mass_trace[k] << "," << escape_trace[k] << "\n";
  return out.str();
}

}  // namespace nlsg
