#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sublin/domain.hpp"

namespace sublin {

// Contiguous list of points of one dimension (row-major, one row per point).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}
  PointSet(int dim, std::vector<double> rows) : dim_(dim), data_(std::move(rows)) {}

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const {
    return dim_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(dim_);
  }
  [[nodiscard]] bool empty() const { return size() == 0; }

  [[nodiscard]] std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] Point point(std::size_t i) const {
    auto row = (*this)[i];
    return Point(std::vector<double>(row.begin(), row.end()));
  }

  void push_back(std::span<const double> x) { data_.insert(data_.end(), x.begin(), x.end()); }
  void push_back(const Point& x) { push_back(x.view()); }
  void reserve(std::size_t n) { data_.reserve(n * static_cast<std::size_t>(dim_)); }

  [[nodiscard]] const std::vector<double>& raw() const { return data_; }

 private:
  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace sublin
