#include "sublin/measure.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Atomic:
      return "atomic";
    case MeasureKind::Grid:
      return "grid";
    case MeasureKind::Radial:
      return "radial";
  }
  return "unknown";
}

struct Measure::Data {
  MeasureKind kind;
  Domain domain;
  PointSet nodes;
  std::vector<double> values;
  std::vector<double> quadrature;
  std::vector<double> masses;
  // Grid
  GridSpec grid;
  std::vector<std::size_t> cells;
  std::vector<std::int64_t> cell_to_node;
  // Radial
  std::vector<double> radii;
  simd::SourceSet sources;

  Data(MeasureKind k, const Domain& d) : kind(k), domain(d), nodes(d.dim()) {}
};

namespace {

void check_value(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ArgumentError(std::string(what) + ": values must be finite and nonnegative");
  }
}

void finish(Measure::Data& d) {
  d.masses.resize(d.values.size());
  for (std::size_t i = 0; i < d.values.size(); ++i) d.masses[i] = d.values[i] * d.quadrature[i];
  if (d.kind != MeasureKind::Radial) d.sources = simd::SourceSet(d.domain.kind(), d.nodes, d.masses);
}

std::vector<double> radial_quadrature(const std::vector<double>& r, int n) {
  const double area = sphere_area(n);
  std::vector<double> q(r.size(), 0.0);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double half = 0.5 * (r[i + 1] - r[i]);
    q[i] += half;
    q[i + 1] += half;
  }
  for (std::size_t i = 0; i < r.size(); ++i) q[i] *= area * std::pow(r[i], n - 1);
  return q;
}

}  // namespace

Measure Measure::atomic(const Domain& domain, const PointSet& points, std::vector<double> weights) {
  if (points.size() != weights.size()) throw ArgumentError("atomic measure: point and weight counts differ");
  if (!points.empty() && points.dim() != domain.dim()) {
    throw ArgumentError("atomic measure: point dimension does not match domain");
  }
  auto d = std::make_shared<Data>(MeasureKind::Atomic, domain);
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_value(weights[i], "atomic measure");
    domain.require_contains(points[i], "atomic measure");
    d->nodes.push_back(points[i]);
  }
  d->values = std::move(weights);
  d->quadrature.assign(d->values.size(), 1.0);
  finish(*d);
  return Measure(std::move(d));
}

Measure Measure::grid(const Domain& domain, const GridSpec& grid, std::vector<double> cell_values) {
  if (grid.dim() != domain.dim()) throw ArgumentError("grid measure: grid dimension does not match domain");
  if (cell_values.size() != grid.cell_count()) {
    throw ArgumentError("grid measure: expected " + std::to_string(grid.cell_count()) + " cell values, got " +
                        std::to_string(cell_values.size()));
  }
  auto d = std::make_shared<Data>(MeasureKind::Grid, domain);
  d->grid = grid;
  d->cell_to_node.assign(grid.cell_count(), -1);
  std::vector<double> x(static_cast<std::size_t>(domain.dim()));
  for (std::size_t c = 0; c < cell_values.size(); ++c) {
    check_value(cell_values[c], "grid measure");
    if (cell_values[c] == 0.0) continue;
    grid.center(c, x);
    if (!domain.contains(x)) {
      throw ArgumentError("grid measure: cell " + std::to_string(c) + " with positive density lies outside " +
                          std::string(to_string(domain.kind())));
    }
    d->cell_to_node[c] = static_cast<std::int64_t>(d->cells.size());
    d->cells.push_back(c);
    d->nodes.push_back(x);
    d->values.push_back(cell_values[c]);
  }
  d->quadrature.assign(d->values.size(), grid.cell_volume());
  finish(*d);
  return Measure(std::move(d));
}

Measure Measure::grid(const Domain& domain, const GridSpec& grid, const PointFunction& density) {
  if (grid.dim() != domain.dim()) throw ArgumentError("grid measure: grid dimension does not match domain");
  std::vector<double> values(grid.cell_count(), 0.0);
  std::vector<double> x(static_cast<std::size_t>(domain.dim()));
  for (std::size_t c = 0; c < values.size(); ++c) {
    grid.center(c, x);
    if (domain.contains(x)) values[c] = density(x);
  }
  return Measure::grid(domain, grid, std::move(values));
}

Measure Measure::radial(const Domain& domain, std::vector<double> radii, std::vector<double> values) {
  if (domain.kind() == DomainKind::HalfSpace) {
    throw ArgumentError("radial measure: requires unit_ball or whole_space");
  }
  if (radii.size() != values.size()) throw ArgumentError("radial measure: radius and value counts differ");
  if (radii.size() < 2) throw ArgumentError("radial measure: need at least two nodes");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    check_value(values[i], "radial measure");
    if (!std::isfinite(radii[i]) || radii[i] < 0.0) throw ArgumentError("radial measure: radii must be >= 0");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ArgumentError("radial measure: radii must be increasing");
  }
  // Nodes discretize the closed interval; r = 1 is a quadrature node of
  // measure zero in the continuum.
  if (domain.kind() == DomainKind::UnitBall && radii.back() > 1.0) {
    throw ArgumentError("radial measure: radii must not exceed 1 on the unit ball");
  }
  auto d = std::make_shared<Data>(MeasureKind::Radial, domain);
  for (double r : radii) d->nodes.push_back(Point::on_axis(domain.dim(), r));
  d->quadrature = radial_quadrature(radii, domain.dim());
  d->radii = std::move(radii);
  d->values = std::move(values);
  finish(*d);
  return Measure(std::move(d));
}

Measure Measure::zero(const Domain& domain) { return atomic(domain, PointSet(domain.dim()), {}); }

MeasureKind Measure::kind() const { return data_->kind; }
const Domain& Measure::domain() const { return data_->domain; }
std::size_t Measure::size() const { return data_->values.size(); }
const PointSet& Measure::nodes() const { return data_->nodes; }
std::span<const double> Measure::values() const { return data_->values; }
std::span<const double> Measure::quadrature() const { return data_->quadrature; }
std::span<const double> Measure::masses() const { return data_->masses; }

const GridSpec& Measure::grid_spec() const {
  if (data_->kind != MeasureKind::Grid) throw CapabilityError("grid_spec: measure is not a grid density");
  return data_->grid;
}

std::span<const std::size_t> Measure::cells() const {
  if (data_->kind != MeasureKind::Grid) throw CapabilityError("cells: measure is not a grid density");
  return data_->cells;
}

std::optional<std::size_t> Measure::node_of_cell(std::size_t flat) const {
  if (data_->kind != MeasureKind::Grid || flat >= data_->cell_to_node.size()) return std::nullopt;
  const auto node = data_->cell_to_node[flat];
  if (node < 0) return std::nullopt;
  return static_cast<std::size_t>(node);
}

std::span<const double> Measure::radii() const {
  if (data_->kind != MeasureKind::Radial) throw CapabilityError("radii: measure is not radial");
  return data_->radii;
}

const simd::SourceSet& Measure::sources() const {
  if (data_->kind == MeasureKind::Radial) throw CapabilityError("sources: radial measures use the radial formula");
  return data_->sources;
}

bool Measure::is_zero() const {
  for (double m : data_->masses) {
    if (m > 0.0) return false;
  }
  return true;
}

Measure Measure::with_values(std::vector<double> values) const {
  if (values.size() != size()) throw ArgumentError("with_values: value count does not match node count");
  for (double v : values) check_value(v, "with_values");
  auto d = std::make_shared<Data>(*data_);
  d->values = std::move(values);
  finish(*d);
  return Measure(std::move(d));
}

double total_mass(const Measure& m) {
  double s = 0.0;
  for (double w : m.masses()) s += w;
  return s;
}

double integrate_nodes(const Measure& m, std::span<const double> f) {
  if (f.size() != m.size()) throw ArgumentError("integrate: one value per node required");
  const auto mass = m.masses();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::isnan(f[i])) throw EvaluationError("integrate: integrand is NaN at node " + std::to_string(i));
    if (mass[i] == 0.0) continue;
    if (std::isinf(f[i])) return std::numeric_limits<double>::infinity();
    s += mass[i] * f[i];
  }
  return s;
}

double integrate(const Measure& m, const PointFunction& f) {
  std::vector<double> values(m.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(m.nodes()[i]);
  return integrate_nodes(m, values);
}

Measure scale(const Measure& m, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ArgumentError("scale: factor must be finite and >= 0");
  std::vector<double> v(m.values().begin(), m.values().end());
  for (double& x : v) x *= lambda;
  return m.with_values(std::move(v));
}

Measure reweight_nodes(const Measure& m, std::span<const double> g) {
  if (g.size() != m.size()) throw ArgumentError("reweight: one factor per node required");
  std::vector<double> v(m.values().begin(), m.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    if (std::isnan(g[i]) || g[i] < 0.0) {
      throw DomainError("reweight: factor is negative at support node " + std::to_string(i));
    }
    if (std::isinf(g[i])) throw ArgumentError("reweight: factor is infinite at support node " + std::to_string(i));
    v[i] *= g[i];
  }
  return m.with_values(std::move(v));
}

Measure reweight(const Measure& m, const PointFunction& g) {
  std::vector<double> factors(m.size());
  for (std::size_t i = 0; i < factors.size(); ++i) factors[i] = g(m.nodes()[i]);
  return reweight_nodes(m, factors);
}

bool nodewise_le(const Measure& a, const Measure& b) {
  if (a.size() != b.size() || a.kind() != b.kind()) throw ArgumentError("nodewise_le: measures have different nodes");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values()[i] > b.values()[i]) return false;
  }
  return true;
}

}  // namespace sublin
