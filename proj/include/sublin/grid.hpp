#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sublin/domain.hpp"

namespace sublin {

/// Tensor-product cell grid: cell (i_1..i_n) spans
/// [origin_d + i_d h_d, origin_d + (i_d + 1) h_d) on each axis.
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(std::vector<double> origin, std::vector<double> spacing, std::vector<int> counts);

  // Cubic grid of spacing h with a cell centred at 0 and cell centres
  // covering [-half_extent, half_extent] on every axis.
  static GridSpec centered(int dim, double h, double half_extent);

  [[nodiscard]] int dim() const { return static_cast<int>(counts_.size()); }
  [[nodiscard]] const std::vector<double>& origin() const { return origin_; }
  [[nodiscard]] const std::vector<double>& spacing() const { return spacing_; }
  [[nodiscard]] const std::vector<int>& counts() const { return counts_; }
  [[nodiscard]] std::size_t cell_count() const { return cell_count_; }
  [[nodiscard]] double cell_volume() const { return cell_volume_; }

  [[nodiscard]] std::vector<int> multi_index(std::size_t flat) const;
  [[nodiscard]] std::optional<std::size_t> flat_index(std::span<const int> idx) const;
  void center(std::size_t flat, std::span<double> out) const;
  [[nodiscard]] Point center(std::size_t flat) const;

  // Cell containing x (half-open), or nullopt outside the grid box.
  [[nodiscard]] std::optional<std::size_t> locate(std::span<const double> x) const;

  // Neighbour of `flat` shifted by `step` cells along `axis`, if inside.
  [[nodiscard]] std::optional<std::size_t> neighbor(std::size_t flat, int axis, int step) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::vector<double> origin_;
  std::vector<double> spacing_;
  std::vector<int> counts_;
  std::vector<std::size_t> strides_;
  // Integer index of the first centre when centres sit on the lattice h*Z
  // (centres are then computed as exact multiples of h), NaN otherwise.
  std::vector<double> first_centre_;
  std::size_t cell_count_ = 0;
  double cell_volume_ = 0.0;
};

}  // namespace sublin
