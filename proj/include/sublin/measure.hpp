#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/grid.hpp"
#include "sublin/point_set.hpp"
#include "sublin/simd.hpp"

namespace sublin {

enum class MeasureKind { Atomic, Grid, Radial };

std::string_view to_string(MeasureKind kind);

// Point function used by integrate/reweight. Receives a point of the domain.
using PointFunction = std::function<double(std::span<const double>)>;

/// Nonnegative Radon measure with a fixed set of quadrature nodes.
///
///  - Atomic: point masses; node i carries weight w_i.
///  - Grid: density (w.r.t. dx) on a tensor cell grid; nodes are the cells
///    holding positive density at construction, integrated by the midpoint
///    rule at cell centres.
///  - Radial: density rho(|x|) given at increasing radii, integrated by the
///    composite trapezoid rule in r with the sphere-area factor
///    omega_{n-1} r^{n-1}. The nodes are represented by (r, 0, ..., 0).
///    Only for UnitBall (radii in [0, 1]) and WholeSpace.
///
/// Immutable; copies share storage.
class Measure {
 public:
  static Measure atomic(const Domain& domain, const PointSet& points, std::vector<double> weights);
  static Measure grid(const Domain& domain, const GridSpec& grid, std::vector<double> cell_values);
  // Density sampled at the centres of grid cells that lie inside the domain.
  static Measure grid(const Domain& domain, const GridSpec& grid, const PointFunction& density);
  static Measure radial(const Domain& domain, std::vector<double> radii, std::vector<double> values);
  static Measure zero(const Domain& domain);

  [[nodiscard]] MeasureKind kind() const;
  [[nodiscard]] const Domain& domain() const;
  [[nodiscard]] int dim() const { return domain().dim(); }

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] const PointSet& nodes() const;
  // Atom weight (Atomic) or density value (Grid, Radial) at each node.
  [[nodiscard]] std::span<const double> values() const;
  // Volume element per node: 1 (Atomic), cell volume (Grid), trapezoid
  // weight times omega_{n-1} r^{n-1} (Radial).
  [[nodiscard]] std::span<const double> quadrature() const;
  // values[i] * quadrature[i]
  [[nodiscard]] std::span<const double> masses() const;

  // Grid only.
  [[nodiscard]] const GridSpec& grid_spec() const;
  [[nodiscard]] std::span<const std::size_t> cells() const;
  [[nodiscard]] std::optional<std::size_t> node_of_cell(std::size_t flat) const;

  // Radial only.
  [[nodiscard]] std::span<const double> radii() const;

  // Weighted source points for batched kernel sums (Atomic, Grid).
  [[nodiscard]] const simd::SourceSet& sources() const;

  [[nodiscard]] bool is_zero() const;

  // Same nodes, new per-node values (density or weight). Used by reweight
  // and scale; values must be nonnegative and finite.
  [[nodiscard]] Measure with_values(std::vector<double> values) const;

  struct Data;

 private:
  explicit Measure(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

double total_mass(const Measure& m);

// Quadrature of f against m; +inf when f is infinite at a node of positive
// mass. Throws EvaluationError on NaN.
double integrate(const Measure& m, const PointFunction& f);
// Same with f given at the nodes of m.
double integrate_nodes(const Measure& m, std::span<const double> f_at_nodes);

Measure scale(const Measure& m, double lambda);

// g dm on the same nodes. g must be nonnegative and finite at nodes of
// positive mass.
Measure reweight(const Measure& m, const PointFunction& g);
Measure reweight_nodes(const Measure& m, std::span<const double> g_at_nodes);

// Nodewise comparison m1 <= m2 (same node layout required).
bool nodewise_le(const Measure& m1, const Measure& m2);

}  // namespace sublin
