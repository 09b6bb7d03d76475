#include <atomic>
#include <cstdlib>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/kernels.hpp"
#include "sublin/simd.hpp"

namespace sublin::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Avx512:
      return "avx512";
  }
  return "unknown";
}

std::optional<Isa> isa_from_string(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "avx512") return Isa::Avx512;
  return std::nullopt;
}

bool isa_compiled(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SUBLIN_HAVE_AVX2)
      return true;
#else
      return false;
#endif
    case Isa::Avx512:
#if defined(SUBLIN_HAVE_AVX512)
      return true;
#else
      return false;
#endif
  }
  return false;
}

bool isa_supported(Isa isa) {
  if (!isa_compiled(isa)) return false;
#if defined(__x86_64__) || defined(__i386__)
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return __builtin_cpu_supports("avx2");
    case Isa::Avx512:
      return __builtin_cpu_supports("avx512f");
  }
  return false;
#else
  return isa == Isa::Scalar;
#endif
}

Isa best_isa() {
  if (isa_supported(Isa::Avx512)) return Isa::Avx512;
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  return Isa::Scalar;
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("SUBLIN_SIMD")) {
    if (auto isa = isa_from_string(env); isa && isa_supported(*isa)) return *isa;
  }
  return best_isa();
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ArgumentError("SIMD variant '" + std::string(to_string(isa)) + "' is not available on this machine");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

SourceSet::SourceSet(DomainKind kind, const PointSet& points, std::span<const double> weights)
    : kind_(kind), dim_(points.dim()), count_(points.size()) {
  if (weights.size() != count_) {
    throw ArgumentError("SourceSet: weight count does not match point count");
  }
  cn_ = dim_ >= 3 ? sublin::green_constant(dim_) : 0.0;
  padded_ = (count_ + kLaneMultiple - 1) / kLaneMultiple * kLaneMultiple;
  coords_.assign(static_cast<std::size_t>(dim_) * padded_, 0.0);
  weights_.assign(padded_, 0.0);
  factors_.assign(padded_, 1.0);
  for (std::size_t j = 0; j < count_; ++j) {
    auto y = points[j];
    for (int d = 0; d < dim_; ++d) coords_[static_cast<std::size_t>(d) * padded_ + j] = y[static_cast<std::size_t>(d)];
    weights_[j] = weights[j];
    if (kind_ != DomainKind::WholeSpace) factors_[j] = sublin::detail::image_factor(kind_, y);
  }
}

namespace {

detail::SweepFn sweep_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::green_sums_scalar;
    case Isa::Avx2:
#if defined(SUBLIN_HAVE_AVX2)
      return &detail::green_sums_avx2;
#else
      break;
#endif
    case Isa::Avx512:
#if defined(SUBLIN_HAVE_AVX512)
      return &detail::green_sums_avx512;
#else
      break;
#endif
  }
  throw ArgumentError("green_sum: SIMD variant '" + std::string(to_string(isa)) + "' not compiled in");
}

}  // namespace

KernelSum green_sum(const SourceSet& sources, std::span<const double> x) {
  return green_sum(sources, x, active_isa());
}

KernelSum green_sum(const SourceSet& sources, std::span<const double> x, Isa isa) {
  if (static_cast<int>(x.size()) != sources.dim()) {
    throw ArgumentError("green_sum: target dimension does not match sources");
  }
  const double fx = sublin::detail::image_factor(sources.kind(), x);
  const double* px = x.data();
  KernelSum out;
  sweep_for(isa)(sources, &px, &fx, 1, &out);
  return out;
}

void green_sums(const SourceSet& sources, const PointSet& targets, std::span<KernelSum> out) {
  green_sums(sources, targets, out, active_isa());
}

void green_sums(const SourceSet& sources, const PointSet& targets, std::span<KernelSum> out, Isa isa) {
  if (targets.dim() != sources.dim() && !targets.empty()) {
    throw ArgumentError("green_sums: target dimension does not match sources");
  }
  if (out.size() != targets.size()) throw ArgumentError("green_sums: output size mismatch");
  const std::size_t count = targets.size();
  std::vector<const double*> px(count);
  std::vector<double> fx(count);
  for (std::size_t t = 0; t < count; ++t) {
    px[t] = targets[t].data();
    fx[t] = sublin::detail::image_factor(sources.kind(), targets[t]);
  }
  sweep_for(isa)(sources, px.data(), fx.data(), count, out.data());
}

}  // namespace sublin::simd
