#include "sublin/domain.hpp"

#include <cmath>
#include <limits>

#include "sublin/errors.hpp"

namespace sublin {

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::WholeSpace:
      return "whole_space";
    case DomainKind::UnitBall:
      return "unit_ball";
    case DomainKind::HalfSpace:
      return "half_space";
  }
  return "unknown";
}

DomainKind domain_kind_from_string(std::string_view name) {
  if (name == "whole_space") return DomainKind::WholeSpace;
  if (name == "unit_ball") return DomainKind::UnitBall;
  if (name == "half_space") return DomainKind::HalfSpace;
  throw ArgumentError("unknown domain kind '" + std::string(name) +
                      "' (expected whole_space, unit_ball or half_space)");
}

Point Point::on_axis(int dim, double r) {
  Point p;
  p.coords.assign(static_cast<std::size_t>(dim), 0.0);
  p.coords[0] = r;
  return p;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double norm(std::span<const double> x) { return std::sqrt(norm2(x)); }

Domain::Domain(DomainKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 3) {
    throw ArgumentError("domain dimension must be >= 3, got " + std::to_string(dim));
  }
}

bool Domain::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  switch (kind_) {
    case DomainKind::WholeSpace:
      return true;
    case DomainKind::UnitBall:
      return norm2(x) < 1.0;
    case DomainKind::HalfSpace:
      return x[static_cast<std::size_t>(dim_ - 1)] > 0.0;
  }
  return false;
}

void Domain::require_contains(std::span<const double> x, std::string_view what) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw DomainError(std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                      ", domain has dimension " + std::to_string(dim_));
  }
  if (!contains(x)) {
    throw DomainError(std::string(what) + ": point lies outside " + std::string(to_string(kind_)));
  }
}

double Domain::boundary_distance(std::span<const double> x, int axis, int direction) const {
  const double inf = std::numeric_limits<double>::infinity();
  const auto a = static_cast<std::size_t>(axis);
  switch (kind_) {
    case DomainKind::WholeSpace:
      return inf;
    case DomainKind::HalfSpace:
      if (axis != dim_ - 1) return inf;
      return direction < 0 ? x[a] : inf;
    case DomainKind::UnitBall: {
      // |x + t d e_a| = 1, t > 0
      const double c = norm2(x) - 1.0;
      const double b = direction * x[a];
      return -b + std::sqrt(b * b - c);
    }
  }
  return inf;
}

}  // namespace sublin
