#pragma once

#include <cstdint>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/field.hpp"
#include "sublin/measure.hpp"
#include "sublin/point_set.hpp"

namespace sublin {

/// Exponent bundle of the existence theorem for n >= 3, 0 < q < 1 and
/// n/(n-2) < p < inf.
struct Exponents {
  int n = 3;
  double p = 0.0;
  double q = 0.0;
  double gamma = 0.0;   // (p(n-2) - n) / n
  double s1 = 0.0;      // np / (n(1-q) + 2p)
  double s2 = 0.0;      // np / (n + 2p)
  double r = 0.0;       // (gamma + q) / (1 - q)
  double s = 0.0;       // (gamma + q) / q
  double s1conj = 0.0;
  double s2conj = 0.0;
  double p_lem = 0.0;   // n(1 + gamma) / (n - 2)
};

// Throws HypothesisError naming the violated hypothesis.
Exponents exponents(int n, double p, double q);

/// Signed residuals of the bundle identities. The HLS pair is given twice:
/// `hls*_stated` uses the "+" form 1/s1 + 1/(r s1') = 2/n, and
/// `hls*` the form 1/s1 - 1/(r s1') = 2/n, which is what the definitions of
/// s1, r (and s2, gamma) satisfy. The stated residuals equal 2(1-q)/p and
/// 2/p respectively.
struct ExponentResiduals {
  double p_lem = 0.0;        // p_lem - p
  double hls1 = 0.0;
  double hls2 = 0.0;
  double hls1_stated = 0.0;
  double hls2_stated = 0.0;
  double s_lemma = 0.0;      // (p(n-2) - n(1-q)) / (nq) - s
};

ExponentResiduals exponent_residuals(const Exponents& e);

struct Thm11Report {
  double n1 = 0.0;  // |G sigma|_{L^r(dsigma)}
  double n2 = 0.0;  // |G mu|_{L^gamma(dmu)}
  bool satisfied = false;
  bool degenerate = false;  // sigma = mu = 0
};

Thm11Report check_thm11(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps);

struct Cor12Report {
  double sigma_norm = 0.0;  // |sigma|_{L^{s1}(dx)}
  double mu_norm = 0.0;     // |mu|_{L^{s2}(dx)}
  bool satisfied = false;
  double n1 = 0.0;
  double n2 = 0.0;
  double bound1 = 0.0;  // |sigma|^{(gamma+1)/(gamma+q)}
  double bound2 = 0.0;  // |mu|^{(gamma+1)/gamma}
  double ratio1 = 0.0;  // n1 / bound1 (0 when bound1 = 0)
  double ratio2 = 0.0;
};

// Densities only; atomic measures with positive mass throw TypeError.
Cor12Report check_cor12(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps);

struct IteratedReport {
  double t = 1.0;
  double max_violation = 0.0;      // signed, > 0 means the inequality fails
  double max_rel_violation = 0.0;  // violation / max(lhs, rhs), signed
  std::vector<double> lhs;         // (G sigma)^t
  std::vector<double> rhs;         // t G((G sigma)^{t-1} dsigma)
};

/// (G sigma)^t <= t G((G sigma)^{t-1} dsigma) for t >= 1, reversed for t < 1,
/// evaluated at the sample points.
IteratedReport iterated_check(const Domain& domain, const Measure& sigma, double t, const PointSet& points);

/// Halton points (bases 2, 3, 5, ...) in |x| <= radius; on the half-space
/// the cloud is shifted by radius + margin along x_n.
PointSet halton_points(const Domain& domain, std::size_t count, double radius = 0.9);

struct LemmaReport {
  bool degenerate = false;
  // G mu integrability against sigma
  double gmu_norm_dsigma = 0.0;  // |G mu|_{L^{gamma+q}(dsigma)}
  bool gmu_finite = false;
  // weighted operator bound
  double gsigma_norm_dx = 0.0;   // |G sigma|_{L^{p/(1-q)}(dx)}
  double lemma27_constant = 0.0;  // max ratio over the random family
  double lemma27_ones_ratio = 0.0;
  std::vector<double> lemma27_ratios;
  // G sigma against N1
  double lemma28_ratio = 0.0;  // gsigma_norm_dx / n1^{(gamma+q)/(gamma+1)}
};

/// dx norms are taken on `dx_set` (grid or radial). Throws HypothesisError
/// when N1 or N2 is infinite.
LemmaReport lemma_norm_checks(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps,
                              const EvalSetPtr& dx_set, std::uint64_t seed, int samples = 20);

}  // namespace sublin
