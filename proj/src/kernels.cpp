#include "sublin/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sublin/errors.hpp"

namespace sublin {

double green_constant(int n) {
  const double half = 0.5 * n;
  return std::tgamma(half - 1.0) / (4.0 * std::pow(std::numbers::pi, half));
}

double sphere_area(int n) {
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double ball_volume(int n) { return sphere_area(n) / n; }

namespace detail {

double image_factor(DomainKind kind, std::span<const double> x) {
  switch (kind) {
    case DomainKind::UnitBall:
      return 1.0 - norm2(x);
    case DomainKind::HalfSpace:
      return 2.0 * x[x.size() - 1];
    case DomainKind::WholeSpace:
      break;
  }
  return 0.0;
}

}  // namespace detail

double green_kernel(const Domain& domain, std::span<const double> x, std::span<const double> y) {
  domain.require_contains(x, "green_kernel(x)");
  domain.require_contains(y, "green_kernel(y)");
  double a2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    a2 += d * d;
  }
  if (a2 == 0.0) return std::numeric_limits<double>::infinity();
  const DomainKind kind = domain.kind();
  return detail::green_term(kind, domain.dim(), green_constant(domain.dim()), a2,
                            detail::image_factor(kind, x), detail::image_factor(kind, y));
}

double green_kernel(const Domain& domain, const Point& x, const Point& y) {
  return green_kernel(domain, x.view(), y.view());
}

}  // namespace sublin
