#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/point_set.hpp"

// Batched Green-kernel sums, the inner loop of every potential evaluation.
// A scalar reference implementation is always built; AVX2 and AVX-512
// variants are compiled in separate translation units and picked at runtime
// from the CPU feature bits. SUBLIN_SIMD=scalar|avx2|avx512 in the
// environment overrides the initial choice.
namespace sublin::simd {

enum class Isa { Scalar, Avx2, Avx512 };

std::string_view to_string(Isa isa);
std::optional<Isa> isa_from_string(std::string_view name);

bool isa_compiled(Isa isa);
bool isa_supported(Isa isa);
Isa best_isa();

Isa active_isa();
void set_active_isa(Isa isa);

// Restores the previous ISA on scope exit.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

inline constexpr std::size_t kLaneMultiple = 8;

// Structure-of-arrays copy of weighted source points, padded with
// zero-weight entries to a multiple of kLaneMultiple.
class SourceSet {
 public:
  SourceSet() = default;
  SourceSet(DomainKind kind, const PointSet& points, std::span<const double> weights);

  [[nodiscard]] DomainKind kind() const { return kind_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double green_constant() const { return cn_; }
  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] std::size_t padded_size() const { return padded_; }

  [[nodiscard]] const double* axis(int d) const { return coords_.data() + static_cast<std::size_t>(d) * padded_; }
  [[nodiscard]] const double* weights() const { return weights_.data(); }
  [[nodiscard]] const double* factors() const { return factors_.data(); }

 private:
  DomainKind kind_ = DomainKind::WholeSpace;
  int dim_ = 0;
  double cn_ = 0.0;
  std::size_t count_ = 0;
  std::size_t padded_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<double> factors_;
};

struct KernelSum {
  // sum_j w_j G(x, y_j) over sources with y_j != x
  double sum = 0.0;
  // sum of w_j over sources with y_j == x
  double coincident_weight = 0.0;
};

KernelSum green_sum(const SourceSet& sources, std::span<const double> x);
KernelSum green_sum(const SourceSet& sources, std::span<const double> x, Isa isa);

// One KernelSum per target point; out.size() must equal targets.size().
void green_sums(const SourceSet& sources, const PointSet& targets, std::span<KernelSum> out);
void green_sums(const SourceSet& sources, const PointSet& targets, std::span<KernelSum> out, Isa isa);

namespace detail {
// x[t] points at target t, fx[t] is its image factor.
using SweepFn = void (*)(const SourceSet&, const double* const* x, const double* fx, std::size_t count,
                         KernelSum* out);
void green_sums_scalar(const SourceSet&, const double* const*, const double*, std::size_t, KernelSum*);
#if defined(SUBLIN_HAVE_AVX2)
void green_sums_avx2(const SourceSet&, const double* const*, const double*, std::size_t, KernelSum*);
#endif
#if defined(SUBLIN_HAVE_AVX512)
void green_sums_avx512(const SourceSet&, const double* const*, const double*, std::size_t, KernelSum*);
#endif
}  // namespace detail

}  // namespace sublin::simd
