#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/field.hpp"
#include "sublin/measure.hpp"

namespace sublin {

struct Exponents;

struct SolverConfig {
  double q = 0.5;
  int max_iter = 200;
  double rel_tol = 1e-10;  // sup-norm relative change between iterates
  EvalSetPtr eval_set;     // must be quadrature-complete
  // Optional starting field on eval_set (used by the minimality probe).
  std::optional<std::vector<double>> initial;
  bool keep_iterates = false;
};

struct SolverTrace {
  std::vector<Field> iterates;  // only when keep_iterates
  std::vector<double> residuals;  // sup |u_{k+1} - u_k| / sup u_{k+1}
  std::vector<double> monotonicity_violations;  // max(0, max_x (u_k - u_{k+1})) / sup u_k
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  double final_residual = 0.0;  // sup |u - G(u^q dsigma) - G mu| / sup u
  std::optional<Field> solution;
};

// (1-q)^{1/(1-q)} (G sigma)^{1/(1-q)} on the eval set.
Field lower_bound_field(const Domain& domain, const Measure& sigma, double q, const EvalSetPtr& set);
// Same map applied to precomputed G sigma values.
std::vector<double> lower_bound_values(std::span<const double> g_sigma, double q);

/// Monotone Picard iteration u_{k+1} = G(u_k^q dsigma) + G mu from
/// u_0 = G mu (or the lower bound when mu = 0). u_k^q at the nodes of sigma
/// is read from the eval-set field through its evaluation rule.
SolverTrace picard_solve(const Domain& domain, const Measure& sigma, const Measure& mu, const SolverConfig& cfg);

struct SolutionDiagnostics {
  double lower_bound_margin = 0.0;  // min_x (u - lower bound)
  double lower_bound_margin_rel = 0.0;  // margin / sup u
  double lp_dx = 0.0;  // |u|_{L^p(dx)}
  double l_gamma_q_dsigma = 0.0;  // |u|_{L^{gamma+q}(dsigma)}
  double residual = 0.0;
  bool lp_finite = false;
  bool l_gamma_q_finite = false;
};

// Throws StateError for a trace that did not converge.
SolutionDiagnostics verify_solution(const SolverTrace& trace, const Domain& domain, const Measure& sigma,
                                    const Measure& mu, double q, const Exponents& exps);

}  // namespace sublin
