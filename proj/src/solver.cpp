#include "sublin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sublin/conditions.hpp"
#include "sublin/errors.hpp"
#include "sublin/potential.hpp"

namespace sublin {

namespace {

constexpr double kOverflow = 1e300;

void check_q(double q, const char* what) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError(std::string(what) + ": q must lie in (0, 1)");
}

double sup(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, x);
  return s;
}

// G(u^q dsigma) + G mu on the eval set.
std::vector<double> picard_map(const Field& u, const Measure& sigma, double q, std::span<const double> g_mu) {
  std::vector<double> out(g_mu.begin(), g_mu.end());
  if (sigma.size() == 0) return out;
  auto uq = u.at_nodes(sigma);
  for (auto& v : uq) v = std::pow(v, q);
  const auto g = potential_at(reweight_nodes(sigma, uq), u.set->points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += g[i];
  return out;
}

}  // namespace

std::vector<double> lower_bound_values(std::span<const double> g_sigma, double q) {
  check_q(q, "lower_bound");
  const double e = 1.0 / (1.0 - q);
  const double k = std::pow(1.0 - q, e);
  std::vector<double> out(g_sigma.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * std::pow(g_sigma[i], e);
  return out;
}

Field lower_bound_field(const Domain& domain, const Measure& sigma, double q, const EvalSetPtr& set) {
  check_q(q, "lower_bound_field");
  const Field g = potential_field(domain, sigma, set);
  return Field(domain, set, lower_bound_values(g.values, q), g.rule);
}

SolverTrace picard_solve(const Domain& domain, const Measure& sigma, const Measure& mu, const SolverConfig& cfg) {
  check_q(cfg.q, "picard_solve");
  if (!cfg.eval_set) throw ArgumentError("picard_solve: missing eval set");
  if (!cfg.eval_set->quadrature_complete()) throw ArgumentError("picard_solve: eval set must be a grid or radial set");
  if (!(cfg.rel_tol > 0.0)) throw ArgumentError("picard_solve: relTol must be > 0");
  if (cfg.max_iter < 1) throw ArgumentError("picard_solve: maxIter must be >= 1");
  if (sigma.is_zero() && mu.is_zero()) throw ArgumentError("picard_solve: sigma and mu are both zero");

  const EvalSetPtr& set = cfg.eval_set;
  const Field g_mu = potential_field(domain, mu, set);
  for (double v : g_mu.values) {
    if (!std::isfinite(v)) throw ArgumentError("picard_solve: G mu is infinite on the eval set");
  }

  std::vector<double> start;
  if (cfg.initial) {
    if (cfg.initial->size() != set->size()) throw ArgumentError("picard_solve: initial field has the wrong size");
    start = *cfg.initial;
  } else if (!mu.is_zero()) {
    start = g_mu.values;
  } else {
    start = lower_bound_values(potential_field(domain, sigma, set).values, cfg.q);
  }

  SolverTrace trace;
  Field u(domain, set, std::move(start), g_mu.rule);
  if (cfg.keep_iterates) trace.iterates.push_back(u);
  const auto overflowed = [](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return !std::isfinite(x) || x > kOverflow; });
  };
  if (overflowed(u.values)) {
    trace.diverged = true;
    trace.residuals.push_back(std::numeric_limits<double>::infinity());
  }
  for (int k = 0; k < cfg.max_iter && !trace.diverged; ++k) {
    Field next(domain, set, picard_map(u, sigma, cfg.q, g_mu.values), g_mu.rule);
    const double su = sup(u.values);
    const double sn = sup(next.values);
    double diff = 0.0;
    double drop = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < next.values.size(); ++i) {
      if (!std::isfinite(next.values[i])) finite = false;
      diff = std::max(diff, std::abs(next.values[i] - u.values[i]));
      drop = std::max(drop, u.values[i] - next.values[i]);
    }
    trace.iterations = k + 1;
    if (!finite || sn > kOverflow) {
      trace.diverged = true;
      trace.residuals.push_back(std::numeric_limits<double>::infinity());
      u = std::move(next);
      break;
    }
    trace.residuals.push_back(sn > 0.0 ? diff / sn : 0.0);
    trace.monotonicity_violations.push_back(su > 0.0 ? drop / su : 0.0);
    u = std::move(next);
    if (cfg.keep_iterates) trace.iterates.push_back(u);
    if (trace.residuals.back() <= cfg.rel_tol) {
      trace.converged = true;
      break;
    }
  }

  if (!trace.diverged) {
    const auto tu = picard_map(u, sigma, cfg.q, g_mu.values);
    double diff = 0.0;
    for (std::size_t i = 0; i < tu.size(); ++i) diff = std::max(diff, std::abs(u.values[i] - tu[i]));
    const double su = sup(u.values);
    trace.final_residual = su > 0.0 ? diff / su : 0.0;
  } else {
    trace.final_residual = std::numeric_limits<double>::infinity();
  }
  trace.solution = std::move(u);
  return trace;
}

SolutionDiagnostics verify_solution(const SolverTrace& trace, const Domain& domain, const Measure& sigma,
                                    const Measure& mu, double q, const Exponents& exps) {
  (void)mu;
  if (!trace.converged || !trace.solution) throw StateError("verify_solution: solver trace did not converge");
  const Field& u = *trace.solution;
  SolutionDiagnostics d;
  const auto lb = lower_bound_field(domain, sigma, q, u.set);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.values.size(); ++i) margin = std::min(margin, u.values[i] - lb.values[i]);
  d.lower_bound_margin = margin;
  const double su = u.sup();
  d.lower_bound_margin_rel = su > 0.0 ? margin / su : margin;
  d.lp_dx = lp_norm_dx(u, exps.p);
  d.lp_finite = std::isfinite(d.lp_dx);
  d.l_gamma_q_dsigma = sigma.size() == 0 ? 0.0 : lp_norm_dmu(u, exps.gamma + q, sigma);
  d.l_gamma_q_finite = std::isfinite(d.l_gamma_q_dsigma);
  d.residual = trace.final_residual;
  return d;
}

}  // namespace sublin
