#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/grid.hpp"
#include "sublin/measure.hpp"
#include "sublin/point_set.hpp"

namespace sublin {

enum class EvalSetKind { Grid, Radial, Scattered };
enum class EvalRule { Nearest, RadialLinear };

std::string_view to_string(EvalSetKind kind);

/// Points where fields are sampled. Grid and Radial sets carry a dx
/// quadrature (midpoint / radial trapezoid); Scattered sets do not.
class EvalSet {
 public:
  // All cells of `grid` whose centre lies in the domain.
  static std::shared_ptr<const EvalSet> grid(const Domain& domain, const GridSpec& grid);
  // Radii in [0, 1] on the ball (r = 1 allowed as a boundary node), any
  // increasing radii >= 0 on the whole space.
  static std::shared_ptr<const EvalSet> radial(const Domain& domain, std::vector<double> radii);
  static std::shared_ptr<const EvalSet> scattered(const Domain& domain, PointSet points);
  // Uniform radial nodes r_i = i / (count - 1) * radius.
  static std::shared_ptr<const EvalSet> radial_uniform(const Domain& domain, std::size_t count, double radius = 1.0);
  // Grid cells or radial nodes of a measure; atoms become a scattered set.
  static std::shared_ptr<const EvalSet> nodes_of(const Measure& m);

  [[nodiscard]] EvalSetKind kind() const { return kind_; }
  [[nodiscard]] const Domain& domain() const { return domain_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const PointSet& points() const { return points_; }
  [[nodiscard]] bool quadrature_complete() const { return kind_ != EvalSetKind::Scattered; }
  [[nodiscard]] EvalRule default_rule() const {
    return kind_ == EvalSetKind::Radial ? EvalRule::RadialLinear : EvalRule::Nearest;
  }

  // dx volume element per point; throws CapabilityError for scattered sets.
  [[nodiscard]] const std::vector<double>& dx_weights() const;

  [[nodiscard]] const GridSpec& grid_spec() const { return grid_; }
  [[nodiscard]] std::span<const std::size_t> cells() const { return cells_; }
  [[nodiscard]] std::optional<std::size_t> point_of_cell(std::size_t flat) const;
  [[nodiscard]] std::span<const double> radii() const { return radii_; }

  // Value of a sampled function at x under `rule`, or nullopt when the rule
  // cannot reach x from this set.
  [[nodiscard]] std::optional<double> interpolate(std::span<const double> values, std::span<const double> x,
                                                  EvalRule rule) const;

 private:
  EvalSet(EvalSetKind kind, const Domain& domain) : kind_(kind), domain_(domain), points_(domain.dim()) {}

  EvalSetKind kind_;
  Domain domain_;
  PointSet points_;
  GridSpec grid_;
  std::vector<std::size_t> cells_;
  std::vector<std::int64_t> cell_to_point_;
  std::vector<double> radii_;
  std::vector<double> dx_weights_;
};

using EvalSetPtr = std::shared_ptr<const EvalSet>;

/// Nonnegative scalar function held as samples on an evaluation set.
struct Field {
  Domain domain;
  EvalSetPtr set;
  std::vector<double> values;
  EvalRule rule = EvalRule::Nearest;

  Field(const Domain& d, EvalSetPtr s, std::vector<double> v);
  Field(const Domain& d, EvalSetPtr s, std::vector<double> v, EvalRule r);

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double sup() const;
  [[nodiscard]] double min() const;

  // Throws CapabilityError when the rule cannot reach x.
  [[nodiscard]] double at(std::span<const double> x) const;
  // Values at every node of m.
  [[nodiscard]] std::vector<double> at_nodes(const Measure& m) const;
};

}  // namespace sublin
