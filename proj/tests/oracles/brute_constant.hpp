#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

// Best constant of |G(f dsigma)|_{L^r(dsigma)} <= c |f|_{L^s(dsigma)} for
// sigma = radial density 1 on the unit ball of R^3, discretized on `nodes`
// equispaced radii with trapezoid masses. The operator is assembled here
// from the shell formula G(x, y) averaged over |y| = t:
// (1/4pi) (1/max(|x|, t) - 1). Search is random sampling followed by
// random coordinate hill climbing.
namespace oracle {

struct RadialOperator {
  std::vector<double> mass;
  std::vector<double> a;  // row-major
  int size = 0;
};

inline RadialOperator radial_ball_operator(int nodes) {
  RadialOperator op;
  op.size = nodes;
  const double h = 1.0 / (nodes - 1);
  for (int i = 0; i < nodes; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == nodes - 1) ? 0.5 * h : h;
    op.mass.push_back(4.0 * std::numbers::pi * r * r * w);
  }
  op.a.assign(static_cast<std::size_t>(nodes) * nodes, 0.0);
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      if (op.mass[j] == 0.0) continue;
      const double m = std::max(i * h, j * h);
      op.a[static_cast<std::size_t>(i) * nodes + j] = op.mass[j] * (1.0 / m - 1.0) / (4.0 * std::numbers::pi);
    }
  }
  return op;
}

inline double ratio(const RadialOperator& op, const std::vector<double>& f, double s, double r) {
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < op.size; ++i) {
    double g = 0.0;
    for (int j = 0; j < op.size; ++j) g += op.a[static_cast<std::size_t>(i) * op.size + j] * f[j];
    num += op.mass[i] * std::pow(g, r);
    den += op.mass[i] * std::pow(f[i], s);
  }
  return den > 0.0 ? std::pow(num, 1.0 / r) / std::pow(den, 1.0 / s) : 0.0;
}

inline double brute_best_constant(int nodes, double s, double r, int samples, int climbs, unsigned seed) {
  const auto op = radial_ball_operator(nodes);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> best(nodes, 1.0);
  double best_ratio = ratio(op, best, s, r);
  std::vector<double> f(nodes);
  for (int k = 0; k < samples; ++k) {
    const double power = 1.0 + 4.0 * u(gen);
    for (auto& v : f) v = std::pow(u(gen), power);
    const double c = ratio(op, f, s, r);
    if (c > best_ratio) {
      best_ratio = c;
      best = f;
    }
  }
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  for (int k = 0; k < climbs; ++k) {
    f = best;
    const double step = 0.5 * std::exp(-3.0 * k / climbs);
    for (int t = 0; t < 4; ++t) {
      const int j = pick(gen);
      f[j] = std::max(0.0, f[j] * (1.0 + step * (2.0 * u(gen) - 1.0)) + 1e-3 * step * u(gen));
    }
    const double c = ratio(op, f, s, r);
    if (c > best_ratio) {
      best_ratio = c;
      best = f;
    }
  }
  return best_ratio;
}

}  // namespace oracle
