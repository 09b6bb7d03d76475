#include "sublin/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/potential.hpp"
#include "sublin/random.hpp"

namespace sublin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Self-potential of m at its own nodes.
std::vector<double> self_potential(const Measure& m) { return potential_at(m, m.nodes()); }

double norm_of_self(const Measure& m, double exponent) {
  if (m.size() == 0) return 0.0;
  return lp_norm_nodes(self_potential(m), exponent, m);
}

// |m|_{L^s(dx)} of a density measure.
double density_norm(const Measure& m, double s, const char* what) {
  if (m.kind() == MeasureKind::Atomic) {
    if (m.is_zero()) return 0.0;
    throw TypeError(std::string(what) + ": atomic measures have no Lebesgue density");
  }
  double acc = 0.0;
  const auto v = m.values();
  const auto w = m.quadrature();
  for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * std::pow(v[i], s);
  return std::pow(acc, 1.0 / s);
}

bool is_prime(int k) {
  for (int d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return k >= 2;
}

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0;
  double x = 0.0;
  while (i > 0) {
    f /= base;
    x += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return x;
}

}  // namespace

Exponents exponents(int n, double p, double q) {
  if (n < 3) throw HypothesisError("exponents: n >= 3 is required (got n = " + std::to_string(n) + ")");
  if (!(q > 0.0 && q < 1.0)) throw HypothesisError("exponents: the sublinear case 0 < q < 1 is required");
  const double threshold = static_cast<double>(n) / (n - 2);
  if (!(p > threshold) || !std::isfinite(p)) {
    throw HypothesisError("exponents: hypothesis n/(n-2) < p < inf violated, the inequality is strict (n/(n-2) = " +
                          std::to_string(threshold) + ", p = " + std::to_string(p) + ")");
  }
  Exponents e;
  e.n = n;
  e.p = p;
  e.q = q;
  e.gamma = (p * (n - 2) - n) / n;
  e.s1 = n * p / (n * (1.0 - q) + 2.0 * p);
  e.s2 = n * p / (n + 2.0 * p);
  e.r = (e.gamma + q) / (1.0 - q);
  e.s = (e.gamma + q) / q;
  e.s1conj = e.s1 / (e.s1 - 1.0);
  e.s2conj = e.s2 / (e.s2 - 1.0);
  e.p_lem = n * (1.0 + e.gamma) / (n - 2);
  return e;
}

ExponentResiduals exponent_residuals(const Exponents& e) {
  const double two_n = 2.0 / e.n;
  ExponentResiduals res;
  res.p_lem = e.p_lem - e.p;
  res.hls1 = 1.0 / e.s1 - 1.0 / (e.r * e.s1conj) - two_n;
  res.hls2 = 1.0 / e.s2 - 1.0 / (e.gamma * e.s2conj) - two_n;
  res.hls1_stated = 1.0 / e.s1 + 1.0 / (e.r * e.s1conj) - two_n;
  res.hls2_stated = 1.0 / e.s2 + 1.0 / (e.gamma * e.s2conj) - two_n;
  res.s_lemma = (e.p * (e.n - 2) - e.n * (1.0 - e.q)) / (e.n * e.q) - e.s;
  return res;
}

Thm11Report check_thm11(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps) {
  if (!(sigma.domain() == domain) || !(mu.domain() == domain)) {
    throw ArgumentError("check_thm11: measures live on a different domain");
  }
  Thm11Report rep;
  rep.degenerate = sigma.is_zero() && mu.is_zero();
  rep.n1 = sigma.is_zero() ? 0.0 : norm_of_self(sigma, exps.r);
  rep.n2 = mu.is_zero() ? 0.0 : norm_of_self(mu, exps.gamma);
  rep.satisfied = !rep.degenerate && std::isfinite(rep.n1) && std::isfinite(rep.n2);
  return rep;
}

Cor12Report check_cor12(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps) {
  Cor12Report rep;
  rep.sigma_norm = density_norm(sigma, exps.s1, "check_cor12(sigma)");
  rep.mu_norm = density_norm(mu, exps.s2, "check_cor12(mu)");
  rep.satisfied = std::isfinite(rep.sigma_norm) && std::isfinite(rep.mu_norm);
  const auto thm = check_thm11(domain, sigma, mu, exps);
  rep.n1 = thm.n1;
  rep.n2 = thm.n2;
  rep.bound1 = std::pow(rep.sigma_norm, (exps.gamma + 1.0) / (exps.gamma + exps.q));
  rep.bound2 = std::pow(rep.mu_norm, (exps.gamma + 1.0) / exps.gamma);
  rep.ratio1 = rep.bound1 > 0.0 ? rep.n1 / rep.bound1 : 0.0;
  rep.ratio2 = rep.bound2 > 0.0 ? rep.n2 / rep.bound2 : 0.0;
  return rep;
}

IteratedReport iterated_check(const Domain& domain, const Measure& sigma, double t, const PointSet& points) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("iterated_check: t must be finite and > 0");
  if (!(sigma.domain() == domain)) throw ArgumentError("iterated_check: measure lives on a different domain");
  for (std::size_t i = 0; i < points.size(); ++i) domain.require_contains(points[i], "iterated_check");

  const auto g_nodes = self_potential(sigma);
  const auto mass = sigma.masses();
  std::vector<double> weight(g_nodes.size(), 0.0);
  for (std::size_t j = 0; j < g_nodes.size(); ++j) {
    if (mass[j] == 0.0) continue;
    if (!std::isfinite(g_nodes[j])) {
      throw ArgumentError("iterated_check: G sigma is infinite at support node " + std::to_string(j));
    }
    if (t < 1.0 && !(g_nodes[j] > 0.0)) {
      throw ArgumentError("iterated_check: G sigma vanishes at support node " + std::to_string(j) + " and t < 1");
    }
    weight[j] = t == 1.0 ? 1.0 : std::pow(g_nodes[j], t - 1.0);
  }
  const auto g_pts = potential_at(sigma, points);
  const auto inner = potential_at(reweight_nodes(sigma, weight), points);

  IteratedReport rep;
  rep.t = t;
  rep.lhs.resize(points.size());
  rep.rhs.resize(points.size());
  rep.max_violation = -kInf;
  rep.max_rel_violation = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.lhs[i] = t == 1.0 ? g_pts[i] : std::pow(g_pts[i], t);
    rep.rhs[i] = t == 1.0 ? inner[i] : t * inner[i];
    const double v = t >= 1.0 ? rep.lhs[i] - rep.rhs[i] : rep.rhs[i] - rep.lhs[i];
    const double scale = std::max(rep.lhs[i], rep.rhs[i]);
    rep.max_violation = std::max(rep.max_violation, v);
    rep.max_rel_violation = std::max(rep.max_rel_violation, scale > 0.0 ? v / scale : v);
  }
  if (points.size() == 0) rep.max_violation = rep.max_rel_violation = 0.0;
  return rep;
}

PointSet halton_points(const Domain& domain, std::size_t count, double radius) {
  const int n = domain.dim();
  std::vector<int> bases;
  for (int k = 2; static_cast<int>(bases.size()) < n; ++k) {
    if (is_prime(k)) bases.push_back(k);
  }
  const double shift = domain.kind() == DomainKind::HalfSpace ? radius * (1.0 + 1.0 / 9.0) : 0.0;
  PointSet out(n);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::uint64_t i = 1; out.size() < count; ++i) {
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) {
      x[d] = radius * (2.0 * radical_inverse(i, bases[d]) - 1.0);
      r2 += x[d] * x[d];
    }
    if (r2 > radius * radius) continue;
    x[n - 1] += shift;
    out.push_back(x);
  }
  return out;
}

LemmaReport lemma_norm_checks(const Domain& domain, const Measure& sigma, const Measure& mu, const Exponents& exps,
                              const EvalSetPtr& dx_set, std::uint64_t seed, int samples) {
  const auto thm = check_thm11(domain, sigma, mu, exps);
  if (!thm.satisfied) {
    throw HypothesisError("lemma_norm_checks: N1 or N2 is not finite (N1 = " +
                          std::to_string(thm.n1) + ", N2 = " + std::to_string(thm.n2) + ")");
  }
  LemmaReport rep;
  const double q = exps.q;

  if (!sigma.is_zero() && !mu.is_zero()) {
    rep.gmu_norm_dsigma = lp_norm_nodes(potential_at(mu, sigma.nodes()), exps.gamma + q, sigma);
  }
  rep.gmu_finite = std::isfinite(rep.gmu_norm_dsigma);

  if (sigma.is_zero()) {
    rep.degenerate = true;
    rep.lemma27_ratios.assign(static_cast<std::size_t>(samples), 0.0);
    return rep;
  }

  const Field g_sigma = potential_field(domain, sigma, dx_set);
  rep.gsigma_norm_dx = lp_norm_dx(g_sigma, exps.p / (1.0 - q));
  const double sconj = exps.s / (exps.s - 1.0);
  const double g_factor = std::pow(rep.gsigma_norm_dx, 1.0 / sconj);

  auto ratio = [&](const std::vector<double>& f) {
    const Field gf = potential_field(domain, reweight_nodes(sigma, f), dx_set);
    const double den = g_factor * lp_norm_nodes(f, exps.s, sigma);
    return den > 0.0 ? lp_norm_dx(gf, exps.p) / den : 0.0;
  };

  rep.lemma27_ones_ratio = ratio(std::vector<double>(sigma.size(), 1.0));
  for (int k = 0; k < samples; ++k) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k));
    std::vector<double> f(sigma.size());
    for (auto& v : f) v = rng.uniform();
    rep.lemma27_ratios.push_back(ratio(f));
    rep.lemma27_constant = std::max(rep.lemma27_constant, rep.lemma27_ratios.back());
  }

  rep.lemma28_ratio = rep.gsigma_norm_dx / std::pow(thm.n1, (exps.gamma + q) / (exps.gamma + 1.0));
  return rep;
}

}  // namespace sublin
