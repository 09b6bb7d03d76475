#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sublin/errors.hpp"
#include "sublin/measure.hpp"
#include "sublin/random.hpp"

using namespace sublin;

namespace {

const Domain kBall = Domain::unit_ball(3);

Measure unit_grid(double h) {
  return Measure::grid(kBall, GridSpec::centered(3, h, 1.0), [](std::span<const double>) { return 1.0; });
}

Measure unit_radial(int nodes) {
  std::vector<double> r(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) r[static_cast<std::size_t>(i)] = static_cast<double>(i) / (nodes - 1);
  return Measure::radial(kBall, r, std::vector<double>(r.size(), 1.0));
}

Measure sample_atoms(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  PointSet pts(3);
  std::vector<double> w;
  while (pts.size() < count) {
    const std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (!kBall.contains(x)) continue;
    pts.push_back(x);
    w.push_back(rng.uniform(0.1, 2.0));
  }
  return Measure::atomic(kBall, pts, w);
}

double f_quad(std::span<const double> x) { return 1.0 + x[0] * x[0] + 0.5 * x[1]; }

}  // namespace

TEST_CASE("total mass") {
  PointSet one(3);
  one.push_back(std::vector<double>{0.0, 0.0, 0.0});
  CHECK(total_mass(Measure::atomic(kBall, one, {2.5})) == 2.5);
  CHECK(total_mass(unit_grid(1.0 / 16)) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-2));
  CHECK(total_mass(unit_radial(512)) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-5));
  std::vector<double> r{0.0, 0.5, 1.0};
  CHECK(total_mass(Measure::radial(kBall, r, {0.0, 0.0, 0.0})) == 0.0);
  CHECK(total_mass(Measure::zero(kBall)) == 0.0);
  CHECK(Measure::zero(kBall).is_zero());
}

TEST_CASE("construction errors") {
  PointSet out(3);
  out.push_back(std::vector<double>{1.5, 0.0, 0.0});
  CHECK_THROWS_AS(Measure::atomic(kBall, out, {1.0}), DomainError);
  PointSet in(3);
  in.push_back(std::vector<double>{0.5, 0.0, 0.0});
  CHECK_THROWS_AS(Measure::atomic(kBall, in, {-1.0}), ArgumentError);
  CHECK_THROWS_AS(Measure::atomic(kBall, in, {std::nan("")}), ArgumentError);
  CHECK_THROWS_AS(Measure::atomic(kBall, in, {1.0, 2.0}), ArgumentError);
  CHECK_THROWS_AS(Measure::radial(kBall, {0.0, 1.5}, {1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(Measure::radial(kBall, {0.5, 0.2}, {1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(Measure::radial(Domain::half_space(3), {0.0, 0.5}, {1.0, 1.0}), ArgumentError);
  const auto grid = GridSpec::centered(3, 0.25, 1.0);
  std::vector<double> values(grid.cell_count(), 1.0);
  CHECK_THROWS_AS(Measure::grid(kBall, grid, values), ArgumentError);
}

TEST_CASE("integrate") {
  PointSet p(3);
  p.push_back(std::vector<double>{0.1, 0.2, 0.3});
  const auto dirac = Measure::atomic(kBall, p, {3.0});
  CHECK(integrate(dirac, f_quad) == doctest::Approx(3.0 * f_quad(p[0])));
  CHECK(integrate(unit_grid(1.0 / 16), [](std::span<const double>) { return 1.0; }) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-2));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(std::isinf(integrate(dirac, [inf](std::span<const double>) { return inf; })));
  CHECK_THROWS_AS(integrate(dirac, [](std::span<const double>) { return std::nan(""); }), EvaluationError);
  // Radial trapezoid is second order: int_B |x|^2 dx = 4 pi / 5.
  const double r2 = integrate(unit_radial(1025), [](std::span<const double> x) { return x[0] * x[0]; });
  CHECK(r2 == doctest::Approx(4.0 * std::numbers::pi / 5.0).epsilon(1e-5));
}

TEST_CASE("scale and reweight identities") {
  for (const auto& m : {sample_atoms(50, 3), unit_grid(1.0 / 8), unit_radial(65)}) {
    const double mass = total_mass(m);
    CHECK(total_mass(scale(m, 1.0)) == mass);
    CHECK(total_mass(scale(m, 3.0)) == doctest::Approx(3.0 * mass).epsilon(1e-15));
    CHECK(scale(m, 0.0).is_zero());
    CHECK_THROWS_AS(scale(m, -1.0), ArgumentError);
    CHECK(total_mass(reweight(m, [](std::span<const double>) { return 1.0; })) == mass);
    CHECK(total_mass(reweight(m, [](std::span<const double>) { return 2.5; })) ==
          doctest::Approx(2.5 * mass).epsilon(1e-15));
    CHECK_THROWS_AS(reweight(m, [](std::span<const double>) { return -1.0; }), DomainError);
  }
  PointSet p(3);
  p.push_back(std::vector<double>{0.1, 0.2, 0.3});
  const auto r = reweight(Measure::atomic(kBall, p, {2.0}), f_quad);
  CHECK(r.values()[0] == doctest::Approx(2.0 * f_quad(p[0])));
}

TEST_CASE("integrate is linear, monotone and composes with scale and reweight") {
  auto g = [](std::span<const double> x) { return 0.5 + x[2] * x[2]; };
  auto f2 = [](std::span<const double> x) { return 2.0 + x[0] * x[0] + 0.5 * x[1]; };
  for (const auto& m : {sample_atoms(200, 9), unit_grid(1.0 / 10), unit_radial(129)}) {
    const double a = integrate(m, f_quad);
    const double b = integrate(m, g);
    CHECK(integrate(m, [&](std::span<const double> x) { return f_quad(x) + g(x); }) ==
          doctest::Approx(a + b).epsilon(1e-14));
    CHECK(integrate(m, f_quad) <= integrate(m, f2));
    for (double lambda : {0.0, 0.5, 3.0}) {
      CHECK(integrate(scale(m, lambda), f_quad) == doctest::Approx(lambda * a).epsilon(1e-14));
    }
    CHECK(integrate(reweight(m, g), f_quad) ==
          doctest::Approx(integrate(m, [&](std::span<const double> x) { return g(x) * f_quad(x); })).epsilon(1e-14));
  }
}

TEST_CASE("nodewise comparison") {
  const auto m = unit_radial(33);
  CHECK(nodewise_le(m, scale(m, 2.0)));
  CHECK_FALSE(nodewise_le(scale(m, 2.0), m));
  CHECK_THROWS_AS(nodewise_le(m, unit_radial(17)), ArgumentError);
}

TEST_CASE("grid centres on the lattice stay symmetric") {
  // The cell at (-1, 0, 0) must not enter the ball through rounding.
  for (double h : {1.0 / 12, 1.0 / 16, 0.1}) {
    const auto m = unit_grid(h);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(norm2(m.nodes()[i]) < 1.0);
    const auto grid = GridSpec::centered(3, h, 1.0);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      const auto x = grid.center(c);
      const auto y = grid.center(grid.cell_count() - 1 - c);
      for (int d = 0; d < 3; ++d) REQUIRE(x[d] == -y[d]);
    }
  }
}
