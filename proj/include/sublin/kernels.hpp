#pragma once

#include <cmath>
#include <span>

#include "sublin/domain.hpp"

namespace sublin {

// c_n = Gamma(n/2 - 1) / (4 pi^{n/2}), so that -Laplace G mu = mu.
double green_constant(int n);

// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2), area of the unit sphere S^{n-1}.
double sphere_area(int n);

// |B_1| = omega_{n-1} / n.
double ball_volume(int n);

/// Green function of -Laplace on the domain, in (0, +inf]. The diagonal
/// returns +inf. Throws DomainError when x or y is outside the domain.
///
/// The image terms are evaluated in the cancellation-free form
///   a^{-m} - b^{-m} = (b^2 - a^2) * sum_k a^k b^{m-1-k} / ((a + b) (ab)^m),
/// m = n - 2, with b^2 - a^2 = (1 - |x|^2)(1 - |y|^2) on the ball and
/// 4 x_n y_n on the half-space. At x = 0 the ball formula reduces to the
/// Kelvin limit c_n (|y|^{2-n} - 1) with no special casing.
double green_kernel(const Domain& domain, std::span<const double> x, std::span<const double> y);
double green_kernel(const Domain& domain, const Point& x, const Point& y);

namespace detail {

// Per-point factor entering b^2 - a^2 = fx * fy: 1 - |x|^2 on the ball,
// 2 x_n on the half-space, unused (0) on the whole space.
double image_factor(DomainKind kind, std::span<const double> x);

// Kernel from precomputed squared distance a2 and image factors, a2 > 0.
// Shared by the scalar reference loop so that single evaluations and
// batched sums agree term by term. The SIMD variants follow the same
// operation order.
inline double green_term(DomainKind kind, int n, double cn, double a2, double fx, double fy) {
  const int m = n - 2;
  const double a = std::sqrt(a2);
  if (kind == DomainKind::WholeSpace) {
    const double inv = 1.0 / a;
    double g = inv;
    for (int k = 1; k < m; ++k) g = g * inv;
    return cn * g;
  }
  const double d = fx * fy;
  const double b = std::sqrt(a2 + d);
  double s = 1.0;
  double ak = 1.0;
  double abm = a * b;
  const double ab = abm;
  for (int k = 1; k < m; ++k) {
    ak = ak * a;
    s = s * b + ak;
    abm = abm * ab;
  }
  return (cn * d * s) / ((a + b) * abm);
}

}  // namespace detail

}  // namespace sublin
