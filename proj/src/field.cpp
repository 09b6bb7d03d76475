#include "sublin/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

std::string_view to_string(EvalSetKind kind) {
  switch (kind) {
    case EvalSetKind::Grid:
      return "grid";
    case EvalSetKind::Radial:
      return "radial";
    case EvalSetKind::Scattered:
      return "scattered";
  }
  return "unknown";
}

std::shared_ptr<const EvalSet> EvalSet::grid(const Domain& domain, const GridSpec& grid) {
  if (grid.dim() != domain.dim()) throw ArgumentError("grid eval set: dimension mismatch");
  std::shared_ptr<EvalSet> s(new EvalSet(EvalSetKind::Grid, domain));
  s->grid_ = grid;
  s->cell_to_point_.assign(grid.cell_count(), -1);
  std::vector<double> x(static_cast<std::size_t>(domain.dim()));
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    grid.center(c, x);
    if (!domain.contains(x)) continue;
    s->cell_to_point_[c] = static_cast<std::int64_t>(s->cells_.size());
    s->cells_.push_back(c);
    s->points_.push_back(x);
  }
  if (s->cells_.empty()) throw ArgumentError("grid eval set: no cell centre lies inside the domain");
  s->dx_weights_.assign(s->cells_.size(), grid.cell_volume());
  return s;
}

std::shared_ptr<const EvalSet> EvalSet::radial(const Domain& domain, std::vector<double> radii) {
  if (domain.kind() == DomainKind::HalfSpace) throw ArgumentError("radial eval set: requires unit_ball or whole_space");
  if (radii.size() < 2) throw ArgumentError("radial eval set: need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || radii[i] < 0.0) throw ArgumentError("radial eval set: radii must be >= 0");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ArgumentError("radial eval set: radii must be increasing");
  }
  if (domain.kind() == DomainKind::UnitBall && radii.back() > 1.0) {
    throw ArgumentError("radial eval set: radii must not exceed 1 on the unit ball");
  }
  std::shared_ptr<EvalSet> s(new EvalSet(EvalSetKind::Radial, domain));
  for (double r : radii) s->points_.push_back(Point::on_axis(domain.dim(), r));
  const int n = domain.dim();
  const double area = sphere_area(n);
  s->dx_weights_.assign(radii.size(), 0.0);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const double half = 0.5 * (radii[i + 1] - radii[i]);
    s->dx_weights_[i] += half;
    s->dx_weights_[i + 1] += half;
  }
  for (std::size_t i = 0; i < radii.size(); ++i) s->dx_weights_[i] *= area * std::pow(radii[i], n - 1);
  s->radii_ = std::move(radii);
  return s;
}

std::shared_ptr<const EvalSet> EvalSet::radial_uniform(const Domain& domain, std::size_t count, double radius) {
  if (count < 2) throw ArgumentError("radial eval set: need at least two radii");
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = radius * static_cast<double>(i) / static_cast<double>(count - 1);
  return radial(domain, std::move(r));
}

std::shared_ptr<const EvalSet> EvalSet::scattered(const Domain& domain, PointSet points) {
  std::shared_ptr<EvalSet> s(new EvalSet(EvalSetKind::Scattered, domain));
  for (std::size_t i = 0; i < points.size(); ++i) domain.require_contains(points[i], "scattered eval set");
  s->points_ = std::move(points);
  return s;
}

std::shared_ptr<const EvalSet> EvalSet::nodes_of(const Measure& m) {
  switch (m.kind()) {
    case MeasureKind::Radial:
      return radial(m.domain(), std::vector<double>(m.radii().begin(), m.radii().end()));
    case MeasureKind::Grid: {
      std::shared_ptr<EvalSet> s(new EvalSet(EvalSetKind::Grid, m.domain()));
      s->grid_ = m.grid_spec();
      s->cell_to_point_.assign(s->grid_.cell_count(), -1);
      for (std::size_t i = 0; i < m.size(); ++i) {
        s->cell_to_point_[m.cells()[i]] = static_cast<std::int64_t>(i);
        s->cells_.push_back(m.cells()[i]);
      }
      s->points_ = m.nodes();
      s->dx_weights_.assign(m.size(), s->grid_.cell_volume());
      return s;
    }
    case MeasureKind::Atomic:
      return scattered(m.domain(), m.nodes());
  }
  throw ArgumentError("nodes_of: unknown measure kind");
}

const std::vector<double>& EvalSet::dx_weights() const {
  if (!quadrature_complete()) {
    throw CapabilityError("eval set is scattered and carries no dx quadrature; use a grid or radial eval set");
  }
  return dx_weights_;
}

std::optional<std::size_t> EvalSet::point_of_cell(std::size_t flat) const {
  if (kind_ != EvalSetKind::Grid || flat >= cell_to_point_.size()) return std::nullopt;
  const auto p = cell_to_point_[flat];
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

std::optional<double> EvalSet::interpolate(std::span<const double> values, std::span<const double> x,
                                           EvalRule rule) const {
  if (rule == EvalRule::RadialLinear) {
    if (kind_ != EvalSetKind::Radial) return std::nullopt;
    const double r = norm(x);
    const double tol = 1e-12 * std::max(1.0, radii_.back());
    if (r < radii_.front() - tol || r > radii_.back() + tol) return std::nullopt;
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.begin()) return values.front();
    if (it == radii_.end()) return values.back();
    const auto k = static_cast<std::size_t>(it - radii_.begin()) - 1;
    const double t = (r - radii_[k]) / (radii_[k + 1] - radii_[k]);
    if (t == 0.0) return values[k];
    return (1.0 - t) * values[k] + t * values[k + 1];
  }
  switch (kind_) {
    case EvalSetKind::Grid: {
      const auto cell = grid_.locate(x);
      if (!cell) return std::nullopt;
      const auto p = point_of_cell(*cell);
      if (!p) return std::nullopt;
      return values[*p];
    }
    case EvalSetKind::Radial: {
      const double r = norm(x);
      const auto it = std::lower_bound(radii_.begin(), radii_.end(), r);
      std::size_t k = static_cast<std::size_t>(it - radii_.begin());
      if (k == radii_.size()) k = radii_.size() - 1;
      if (k > 0 && r - radii_[k - 1] < radii_[k] - r) --k;
      return values[k];
    }
    case EvalSetKind::Scattered: {
      // exact node match only
      for (std::size_t i = 0; i < points_.size(); ++i) {
        double d2 = 0.0;
        auto p = points_[i];
        for (std::size_t k = 0; k < x.size(); ++k) d2 += (p[k] - x[k]) * (p[k] - x[k]);
        if (d2 <= 1e-24) return values[i];
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Field::Field(const Domain& d, EvalSetPtr s, std::vector<double> v)
    : Field(d, s, std::move(v), s ? s->default_rule() : EvalRule::Nearest) {}

Field::Field(const Domain& d, EvalSetPtr s, std::vector<double> v, EvalRule r)
    : domain(d), set(std::move(s)), values(std::move(v)), rule(r) {
  if (!set) throw ArgumentError("field: missing eval set");
  if (values.size() != set->size()) throw ArgumentError("field: one value per eval point required");
}

double Field::sup() const {
  double s = 0.0;
  for (double v : values) s = std::max(s, v);
  return s;
}

double Field::min() const {
  double s = std::numeric_limits<double>::infinity();
  for (double v : values) s = std::min(s, v);
  return s;
}

double Field::at(std::span<const double> x) const {
  const auto v = set->interpolate(values, x, rule);
  if (!v) throw CapabilityError("field: evaluation rule cannot reach the requested point");
  return *v;
}

std::vector<double> Field::at_nodes(const Measure& m) const {
  std::vector<double> out(m.size());
  // Fast paths when the field lives on exactly the measure's nodes.
  if (m.kind() == MeasureKind::Grid && set->kind() == EvalSetKind::Grid && set->grid_spec() == m.grid_spec()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto p = set->point_of_cell(m.cells()[i]);
      if (!p) throw CapabilityError("field: grid eval set does not cover a support cell of the measure");
      out[i] = values[*p];
    }
    return out;
  }
  if (m.kind() == MeasureKind::Radial && set->kind() == EvalSetKind::Radial &&
      std::equal(m.radii().begin(), m.radii().end(), set->radii().begin(), set->radii().end())) {
    return values;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto v = set->interpolate(values, m.nodes()[i], rule);
    if (!v) throw CapabilityError("field: evaluation rule cannot reach support node " + std::to_string(i));
    out[i] = *v;
  }
  return out;
}

}  // namespace sublin
