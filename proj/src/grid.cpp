#include "sublin/grid.hpp"

#include <cmath>

#include "sublin/errors.hpp"

namespace sublin {

GridSpec::GridSpec(std::vector<double> origin, std::vector<double> spacing, std::vector<int> counts)
    : origin_(std::move(origin)), spacing_(std::move(spacing)), counts_(std::move(counts)) {
  const std::size_t n = counts_.size();
  if (n == 0 || origin_.size() != n || spacing_.size() != n) {
    throw ArgumentError("grid: origin, spacing and counts must have the same nonzero length");
  }
  strides_.assign(n, 1);
  first_centre_.assign(n, std::nan(""));
  cell_count_ = 1;
  cell_volume_ = 1.0;
  // last axis fastest
  for (std::size_t k = n; k-- > 0;) {
    if (counts_[k] <= 0) throw ArgumentError("grid: cell counts must be positive");
    if (!(spacing_[k] > 0.0) || !std::isfinite(spacing_[k])) throw ArgumentError("grid: spacing must be positive");
    if (!std::isfinite(origin_[k])) throw ArgumentError("grid: origin must be finite");
    strides_[k] = cell_count_;
    cell_count_ *= static_cast<std::size_t>(counts_[k]);
    cell_volume_ *= spacing_[k];
    const double t = origin_[k] / spacing_[k] + 0.5;
    if (std::abs(t - std::round(t)) < 1e-9) first_centre_[k] = std::round(t);
  }
}

GridSpec GridSpec::centered(int dim, double h, double half_extent) {
  if (!(h > 0.0)) throw ArgumentError("grid: spacing must be positive");
  if (!(half_extent > 0.0)) throw ArgumentError("grid: extent must be positive");
  const int k = static_cast<int>(std::ceil(half_extent / h - 1e-9));
  const auto n = static_cast<std::size_t>(dim);
  return GridSpec(std::vector<double>(n, -(k + 0.5) * h), std::vector<double>(n, h),
                  std::vector<int>(n, 2 * k + 1));
}

std::vector<int> GridSpec::multi_index(std::size_t flat) const {
  std::vector<int> idx(counts_.size());
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    idx[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return idx;
}

std::optional<std::size_t> GridSpec::flat_index(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= counts_[k]) return std::nullopt;
    flat += static_cast<std::size_t>(idx[k]) * strides_[k];
  }
  return flat;
}

void GridSpec::center(std::size_t flat, std::span<double> out) const {
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    const auto i = flat / strides_[k];
    flat %= strides_[k];
    out[k] = std::isnan(first_centre_[k]) ? origin_[k] + (static_cast<double>(i) + 0.5) * spacing_[k]
                                          : (first_centre_[k] + static_cast<double>(i)) * spacing_[k];
  }
}

Point GridSpec::center(std::size_t flat) const {
  Point p;
  p.coords.resize(counts_.size());
  center(flat, p.coords);
  return p;
}

std::optional<std::size_t> GridSpec::locate(std::span<const double> x) const {
  if (x.size() != counts_.size()) return std::nullopt;
  std::size_t flat = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    const double t = std::floor((x[k] - origin_[k]) / spacing_[k]);
    if (!(t >= 0.0) || t >= counts_[k]) return std::nullopt;
    flat += static_cast<std::size_t>(t) * strides_[k];
  }
  return flat;
}

std::optional<std::size_t> GridSpec::neighbor(std::size_t flat, int axis, int step) const {
  const auto a = static_cast<std::size_t>(axis);
  const auto i = static_cast<long long>((flat / strides_[a]) % static_cast<std::size_t>(counts_[a]));
  const long long j = i + step;
  if (j < 0 || j >= counts_[a]) return std::nullopt;
  return static_cast<std::size_t>(static_cast<long long>(flat) + step * static_cast<long long>(strides_[a]));
}

}  // namespace sublin
