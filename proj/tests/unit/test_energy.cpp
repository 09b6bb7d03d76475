#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "frozen_values.hpp"
#include "sublin/conditions.hpp"
#include "sublin/energy.hpp"
#include "sublin/errors.hpp"
#include "sublin/potential.hpp"

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

// Mass of omega inside |x| <= radius.
double inner_mass(const Measure& omega, double radius) {
  double m = 0.0;
  const auto masses = omega.masses();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (norm(omega.nodes()[i]) <= radius) m += masses[i];
  }
  return m;
}

}  // namespace

TEST_CASE("energy closed form and homogeneity") {
  CHECK(energy(kBall, unit_radial(512), 1.0) == doctest::Approx(4.0 * std::numbers::pi / 45.0).epsilon(1e-3));
  const auto m = unit_radial(257);
  const double e0 = energy(kBall, m, 1.0 / 3.0);
  for (double lambda : {0.5, 2.0, 4.0}) {
    CHECK(energy(kBall, scale(m, lambda), 1.0 / 3.0) ==
          doctest::Approx(std::pow(lambda, 4.0 / 3.0) * e0).epsilon(1e-12));
  }
  PointSet o(3);
  o.push_back(std::vector<double>{0.2, 0.0, 0.0});
  CHECK(std::isinf(energy(kBall, Measure::atomic(kBall, o, {1.0}), 0.5)));
  CHECK(energy(kBall, Measure::zero(kBall), 0.5) == 0.0);
  CHECK_THROWS_AS(energy(kBall, m, 0.0), ArgumentError);
  CHECK_THROWS_AS(energy(kBall, m, -1.0), ArgumentError);
}

TEST_CASE("energy is monotone in the measure") {
  const auto m = unit_grid(1.0 / 8);
  std::vector<double> v(m.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::abs(std::sin(static_cast<double>(i)));
  const auto bigger = m.with_values(v);
  REQUIRE(nodewise_le(m, bigger));
  for (double gamma : {0.25, 1.0, 2.0}) CHECK(energy(kBall, m, gamma) <= energy(kBall, bigger, gamma));
}

TEST_CASE("riesz measure errors") {
  const auto mu = unit_radial(257);
  const auto grid = GridSpec::centered(3, 1.0 / 8, 1.0);
  CHECK_THROWS_AS(riesz_measure_numeric(kBall, mu, 0.5, grid, {RieszStencil::Interior}), ArgumentError);
  CHECK_NOTHROW(riesz_measure_numeric(kBall, mu, 0.5, grid, {RieszStencil::InteriorTrimmed}));
  PointSet o(3);
  o.push_back(std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(riesz_measure_numeric(kBall, Measure::atomic(kBall, o, {1.0}), 0.5, grid,
                                        {RieszStencil::InteriorTrimmed}),
                  ArgumentError);
  CHECK_THROWS_AS(riesz_measure_numeric(kBall, mu, 1.0, grid, {RieszStencil::InteriorTrimmed}), ArgumentError);
  // A grid strictly inside the ball works with the plain stencil.
  const GridSpec inner({-0.5, -0.5, -0.5}, {0.125, 0.125, 0.125}, {8, 8, 8});
  CHECK_NOTHROW(riesz_measure_numeric(kBall, mu, 0.5, inner, {RieszStencil::Interior}));
}

TEST_CASE("exponent-one bypass recovers the density") {
  const auto mu = unit_radial(16385);
  for (double h : {1.0 / 8, 1.0 / 16}) {
    RieszOptions opt{RieszStencil::InteriorTrimmed, 1.0};
    const auto r = riesz_measure_numeric(kBall, mu, 0.5, GridSpec::centered(3, h, 1.0), opt);
    double worst = 0.0;
    for (double v : r.omega.values()) worst = std::max(worst, std::abs(v - 1.0));
    CHECK(worst <= h * h);
    CHECK(r.clipped_mass == 0.0);
  }
}

TEST_CASE("riesz measure interior mass is consistent under refinement") {
  const auto mu = unit_radial(2049);
  const auto a = riesz_measure_numeric(kBall, mu, 0.5, GridSpec::centered(3, 1.0 / 16, 1.0), {RieszStencil::InteriorTrimmed});
  const auto b = riesz_measure_numeric(kBall, mu, 0.5, GridSpec::centered(3, 1.0 / 32, 1.0), {RieszStencil::InteriorTrimmed});
  const double ma = inner_mass(a.omega, 0.5);
  const double mb = inner_mass(b.omega, 0.5);
  CHECK(std::abs(ma - mb) <= 0.1 * mb);
  CHECK(a.clipped_mass <= 0.05 * a.positive_mass);
  CHECK(b.clipped_mass <= 0.05 * b.positive_mass);
}

TEST_CASE("boundary-closed stencil") {
  const auto mu = unit_radial(1025);
  const auto grid = GridSpec::centered(3, 1.0 / 8, 1.0);
  const auto trimmed = riesz_measure_numeric(kBall, mu, 0.5, grid, {RieszStencil::InteriorTrimmed});
  const auto closed = riesz_measure_numeric(kBall, mu, 0.5, grid, {RieszStencil::BoundaryClosed});
  CHECK(closed.active_cells > trimmed.active_cells);
  // Interior cells use the same centred formula in both schemes.
  for (std::size_t i = 0; i < trimmed.omega.size(); ++i) {
    const auto cell = trimmed.omega.cells()[i];
    const auto j = closed.omega.node_of_cell(cell);
    REQUIRE(j.has_value());
    CHECK(closed.omega.values()[*j] == doctest::Approx(trimmed.omega.values()[i]).epsilon(1e-14));
  }
}

TEST_CASE("lemma ratios are invariant under scaling of mu") {
  const double gamma = 1.0 / 3.0;
  const double q = 0.5;
  const auto mu = unit_radial(1025);
  const auto grid = GridSpec::centered(3, 1.0 / 8, 1.0);
  const auto set = EvalSet::radial_uniform(kBall, 1025);
  const auto r31 = lemma31_check(kBall, mu, gamma, q, grid, {RieszStencil::InteriorTrimmed});
  const auto r32 = lemma32_check(kBall, mu, gamma, set);
  CHECK(r31.ratio > 0.0);
  CHECK(r32.ratio > 0.0);
  for (double lambda : {0.5, 2.0, 4.0}) {
    const auto s = scale(mu, lambda);
    CHECK(lemma31_check(kBall, s, gamma, q, grid, {RieszStencil::InteriorTrimmed}).ratio ==
          doctest::Approx(r31.ratio).epsilon(1e-6));
    CHECK(lemma32_check(kBall, s, gamma, set).ratio == doctest::Approx(r32.ratio).epsilon(1e-6));
  }
}

TEST_CASE("degenerate lemma reports") {
  const auto grid = GridSpec::centered(3, 1.0 / 8, 1.0);
  const auto r31 = lemma31_check(kBall, Measure::zero(kBall), 1.0 / 3.0, 0.5, grid);
  CHECK(r31.degenerate);
  CHECK(r31.lhs == 0.0);
  CHECK(r31.rhs == 0.0);
  const auto r32 = lemma32_check(kBall, Measure::zero(kBall), 1.0 / 3.0, EvalSet::radial_uniform(kBall, 65));
  CHECK(r32.degenerate);
}

TEST_CASE("frozen regression values at h = 1/16") {
  const auto e = exponents(3, 4.0, 0.5);
  const auto grid = GridSpec::centered(3, 1.0 / 16, 1.0);
  const auto mu = unit_grid(1.0 / 16);
  const auto set = EvalSet::grid(kBall, grid);
  const auto r31 = lemma31_check(kBall, mu, e.gamma, e.q, grid, {RieszStencil::InteriorTrimmed});
  CHECK(r31.ratio == doctest::Approx(frozen::kLemma31Ratio).epsilon(frozen::kBand));
  CHECK(r31.clipped_mass <= 0.05 * r31.omega_mass);
  CHECK(lemma32_check(kBall, mu, e.gamma, set).ratio == doctest::Approx(frozen::kLemma32Ratio).epsilon(frozen::kBand));
  const auto c = check_cor12(kBall, mu, mu, e);
  CHECK(c.ratio1 == doctest::Approx(frozen::kCor12Ratio1).epsilon(frozen::kBand));
  CHECK(c.ratio2 == doctest::Approx(frozen::kCor12Ratio2).epsilon(frozen::kBand));
  CHECK(check_thm11(kBall, Measure::zero(kBall), mu, e).n2 == doctest::Approx(frozen::kN2).epsilon(frozen::kBand));
}
