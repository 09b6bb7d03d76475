#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "frozen_values.hpp"
#include "sublin/conditions.hpp"
#include "sublin/errors.hpp"
#include "sublin/potential.hpp"
#include "sublin/random.hpp"

using namespace sublin;

namespace {

const Domain kBall = Domain::unit_ball(3);

Measure unit_radial(int nodes) {
  std::vector<double> r(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) r[static_cast<std::size_t>(i)] = static_cast<double>(i) / (nodes - 1);
  return Measure::radial(kBall, r, std::vector<double>(r.size(), 1.0));
}

Measure unit_grid(double h) {
  return Measure::grid(kBall, GridSpec::centered(3, h, 1.0), [](std::span<const double>) { return 1.0; });
}

Measure centre_atom() {
  PointSet o(3);
  o.push_back(std::vector<double>{0.0, 0.0, 0.0});
  return Measure::atomic(kBall, o, {1.0});
}

}  // namespace

TEST_CASE("exponent bundle examples") {
  const auto e = exponents(3, 4.0, 0.5);
  CHECK(e.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e.r == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(e.s == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(e.s1 == doctest::Approx(12.0 / 9.5).epsilon(1e-15));
  CHECK(e.s2 == doctest::Approx(12.0 / 11.0).epsilon(1e-15));
  const auto f = exponents(4, 3.0, 0.25);
  CHECK(f.gamma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.p_lem == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("exponent hypotheses") {
  CHECK_THROWS_AS(exponents(3, 3.0, 0.5), HypothesisError);
  CHECK_THROWS_AS(exponents(3, 2.0, 0.5), HypothesisError);
  CHECK_THROWS_AS(exponents(3, std::numeric_limits<double>::infinity(), 0.5), HypothesisError);
  CHECK_THROWS_AS(exponents(3, 4.0, 0.0), HypothesisError);
  CHECK_THROWS_AS(exponents(3, 4.0, 1.0), HypothesisError);
  CHECK_THROWS_AS(exponents(2, 4.0, 0.5), HypothesisError);
  CHECK_NOTHROW(exponents(3, 3.0 + 1e-9, 0.5));
}

TEST_CASE("exponent identities on random admissible triples") {
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const int n = 3 + static_cast<int>(rng.uniform() * 6);
    const double threshold = static_cast<double>(n) / (n - 2);
    const double p = threshold * (1.0 + 1e-3 + 9.0 * rng.uniform());
    const double q = 0.01 + 0.98 * rng.uniform();
    const auto e = exponents(n, p, q);
    const auto res = exponent_residuals(e);
    REQUIRE(std::abs(res.p_lem) <= 1e-12 * p);
    REQUIRE(std::abs(res.hls1) <= 1e-12);
    REQUIRE(std::abs(res.hls2) <= 1e-12);
    REQUIRE(std::abs(res.s_lemma) <= 1e-12 * e.s);
    REQUIRE(e.s == doctest::Approx((e.gamma + q) / q).epsilon(1e-12));
    // The "+" form is off by a fixed, nonzero amount.
    REQUIRE(res.hls1_stated == doctest::Approx(2.0 * (1.0 - q) / p).epsilon(1e-9));
    REQUIRE(res.hls2_stated == doctest::Approx(2.0 / p).epsilon(1e-9));
  }
}

TEST_CASE("condition report examples") {
  const auto e = exponents(3, 4.0, 0.5);
  SUBCASE("atomic sigma fails") {
    const auto rep = check_thm11(kBall, centre_atom(), Measure::zero(kBall), e);
    CHECK(std::isinf(rep.n1));
    CHECK_FALSE(rep.satisfied);
  }
  SUBCASE("pure data measure") {
    const auto rep = check_thm11(kBall, Measure::zero(kBall), unit_radial(512), e);
    CHECK(rep.n1 == 0.0);
    CHECK(std::isfinite(rep.n2));
    CHECK(rep.n2 > 0.0);
    CHECK(rep.satisfied);
  }
  SUBCASE("both zero is degenerate") {
    const auto rep = check_thm11(kBall, Measure::zero(kBall), Measure::zero(kBall), e);
    CHECK(rep.degenerate);
    CHECK_FALSE(rep.satisfied);
  }
  SUBCASE("energy identity for gamma = 1") {
    // N2^gamma = E_gamma[mu]; at gamma = 1 this is 4 pi / 45.
    const auto e1 = exponents(3, 6.0, 0.5);
    REQUIRE(e1.gamma == doctest::Approx(1.0));
    const auto rep = check_thm11(kBall, Measure::zero(kBall), unit_radial(1025), e1);
    CHECK(rep.n2 == doctest::Approx(4.0 * 3.14159265358979323846 / 45.0).epsilon(1e-4));
  }
}

TEST_CASE("thm11 report is monotone in sigma") {
  const auto e = exponents(3, 4.0, 0.5);
  Rng rng(17);
  PointSet pts(3);
  std::vector<double> w;
  for (int k = 0; k < 5; ++k) {
    pts.push_back(std::vector<double>{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    w.push_back(rng.uniform(0.0, 1.0));
  }
  const auto atoms = Measure::atomic(kBall, pts, w);
  const auto radial = unit_radial(129);
  for (const auto& base : {atoms, radial}) {
    const bool sat = check_thm11(kBall, base, Measure::zero(kBall), e).satisfied;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> bigger(base.size());
      for (std::size_t i = 0; i < bigger.size(); ++i) bigger[i] = base.values()[i] * (1.0 + 3.0 * rng.uniform());
      const bool sat_big = check_thm11(kBall, base.with_values(bigger), Measure::zero(kBall), e).satisfied;
      CHECK((sat || !sat_big));
      if (!sat) CHECK_FALSE(sat_big);
    }
  }
}

TEST_CASE("corollary check on densities") {
  const auto e = exponents(3, 4.0, 0.5);
  const auto rep = check_cor12(kBall, unit_radial(257), unit_radial(257), e);
  CHECK(rep.satisfied);
  CHECK(std::isfinite(rep.ratio1));
  CHECK(std::isfinite(rep.ratio2));
  CHECK(rep.sigma_norm == doctest::Approx(std::pow(4.0 * 3.14159265358979323846 / 3.0, 1.0 / e.s1)).epsilon(1e-4));
  CHECK_THROWS_AS(check_cor12(kBall, centre_atom(), Measure::zero(kBall), e), TypeError);
  CHECK_NOTHROW(check_cor12(kBall, Measure::zero(kBall), unit_radial(33), e));
}

TEST_CASE("iterated inequalities") {
  const auto sigma = unit_grid(1.0 / 16);
  const auto pts = halton_points(kBall, 100);
  REQUIRE(pts.size() == 100);
  const auto eq = iterated_check(kBall, sigma, 1.0, pts);
  CHECK(std::abs(eq.max_violation) <= 1e-10);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(eq.lhs[i] == eq.rhs[i]);
  for (double t : {0.5, 2.0, 3.0}) {
    const auto rep = iterated_check(kBall, sigma, t, pts);
    CHECK(rep.max_violation <= 1e-3);
  }
  // A radial sigma has a node on the sphere, where G sigma = 0.
  CHECK_THROWS_AS(iterated_check(kBall, unit_radial(65), 0.5, pts), ArgumentError);
  CHECK_NOTHROW(iterated_check(kBall, unit_radial(65), 2.0, pts));
  CHECK_THROWS_AS(iterated_check(kBall, sigma, 0.0, pts), ArgumentError);
}

TEST_CASE("halton points") {
  const auto a = halton_points(kBall, 200, 0.9);
  const auto b = halton_points(kBall, 200, 0.9);
  CHECK(a.raw() == b.raw());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(norm(a[i]) <= 0.9);
  const auto h = halton_points(Domain::half_space(3), 50, 0.9);
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(Domain::half_space(3).contains(h[i]));
}

TEST_CASE("lemma norm checks") {
  const auto e = exponents(3, 4.0, 0.5);
  const auto set = EvalSet::radial_uniform(kBall, 257);
  const auto deg = lemma_norm_checks(kBall, Measure::zero(kBall), unit_radial(65), e, set, 1);
  CHECK(deg.degenerate);
  CHECK(deg.gsigma_norm_dx == 0.0);
  CHECK_THROWS_AS(lemma_norm_checks(kBall, centre_atom(), unit_radial(65), e, set, 1), HypothesisError);

  const auto rep = lemma_norm_checks(kBall, unit_radial(257), unit_radial(257), e, set, 5, 8);
  CHECK(rep.gmu_finite);
  CHECK(rep.gmu_norm_dsigma > 0.0);
  CHECK(rep.lemma27_ratios.size() == 8);
  CHECK(std::isfinite(rep.lemma27_constant));
  CHECK(std::isfinite(rep.lemma28_ratio));
  const auto again = lemma_norm_checks(kBall, unit_radial(257), unit_radial(257), e, set, 5, 8);
  CHECK(again.lemma27_ratios == rep.lemma27_ratios);
}

TEST_CASE("integrability implication on passing pairs") {
  const auto e = exponents(3, 4.0, 0.5);
  const auto set = EvalSet::radial_uniform(kBall, 129);
  std::vector<double> r(129);
  for (int i = 0; i < 129; ++i) r[static_cast<std::size_t>(i)] = i / 128.0;
  auto profile = [&](auto fn) {
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = fn(r[i]);
    return Measure::radial(kBall, r, v);
  };
  const std::vector<Measure> family = {
      profile([](double t) { return 1.0; }), profile([](double t) { return 1.0 - t * t; }),
      profile([](double t) { return t < 0.5 ? 2.0 : 0.0; }), profile([](double t) { return 1.0 + std::sin(7.0 * t); })};
  for (const auto& sigma : family) {
    for (const auto& mu : family) {
      if (!check_thm11(kBall, sigma, mu, e).satisfied) continue;
      const auto rep = lemma_norm_checks(kBall, sigma, mu, e, set, 0, 2);
      CHECK(rep.gmu_finite);
    }
  }
}

TEST_CASE("frozen lemma ratios at h = 1/16") {
  const auto e = exponents(3, 4.0, 0.5);
  const auto grid = GridSpec::centered(3, 1.0 / 16, 1.0);
  const auto m = unit_grid(1.0 / 16);
  const auto rep = lemma_norm_checks(kBall, m, m, e, EvalSet::grid(kBall, grid), 0, 20);
  CHECK(rep.gmu_norm_dsigma == doctest::Approx(frozen::kGmuNormDsigma).epsilon(frozen::kBand));
  CHECK(rep.lemma27_constant == doctest::Approx(frozen::kLemma27Constant).epsilon(frozen::kBand));
  CHECK(rep.lemma27_ones_ratio == doctest::Approx(frozen::kLemma27OnesRatio).epsilon(frozen::kBand));
  CHECK(rep.lemma28_ratio == doctest::Approx(frozen::kLemma28Ratio).epsilon(frozen::kBand));
}
