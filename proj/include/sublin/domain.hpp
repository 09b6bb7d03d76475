#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sublin {

enum class DomainKind { WholeSpace, UnitBall, HalfSpace };

std::string_view to_string(DomainKind kind);
DomainKind domain_kind_from_string(std::string_view name);

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  [[nodiscard]] int dim() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
  [[nodiscard]] std::span<const double> view() const { return coords; }

  // (r, 0, ..., 0): the representative point of a radial node.
  static Point on_axis(int dim, double r);
};

double norm2(std::span<const double> x);
double norm(std::span<const double> x);

/// Model domain in R^n, n >= 3. UnitBall is {|x| < 1}, HalfSpace is
/// {x_n > 0} (last coordinate), WholeSpace is R^n.
class Domain {
 public:
  Domain(DomainKind kind, int dim);

  static Domain whole_space(int dim) { return {DomainKind::WholeSpace, dim}; }
  static Domain unit_ball(int dim) { return {DomainKind::UnitBall, dim}; }
  static Domain half_space(int dim) { return {DomainKind::HalfSpace, dim}; }

  [[nodiscard]] DomainKind kind() const { return kind_; }
  [[nodiscard]] int dim() const { return dim_; }

  [[nodiscard]] bool contains(std::span<const double> x) const;
  [[nodiscard]] bool contains(const Point& x) const { return contains(x.view()); }

  // Throws DomainError naming `what` when x is not an interior point.
  void require_contains(std::span<const double> x, std::string_view what) const;

  // Distance from x to the boundary along +/- e_axis (infinity if the ray
  // never leaves the domain). x must lie inside.
  [[nodiscard]] double boundary_distance(std::span<const double> x, int axis, int direction) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  DomainKind kind_;
  int dim_;
};

}  // namespace sublin
