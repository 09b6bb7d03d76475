// Compiled with -mavx2 -ffp-contract=off; only entered after a CPU check.
// Uses IEEE sqrt/div in the same operation order as the scalar reference, so
// every per-pair term is bit-identical to it; only the summation order differs.
#include <immintrin.h>

#include <algorithm>

#include "sublin/simd.hpp"

namespace sublin::simd::detail {

namespace {

constexpr int kTile = 4;

inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

template <int N, bool Image>
void sweep(const SourceSet& sources, const double* const* x, const double* fx, int count, KernelSum* out) {
  const int n = N > 0 ? N : sources.dim();
  const int m = n - 2;
  const __m256d cn = _mm256_set1_pd(sources.green_constant());
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const double* w = sources.weights();
  const double* fy = sources.factors();

  __m256d acc[kTile];
  __m256d hit[kTile];
  for (int t = 0; t < kTile; ++t) {
    acc[t] = zero;
    hit[t] = zero;
  }
  for (std::size_t j = 0; j < sources.padded_size(); j += 4) {
    const __m256d wj = _mm256_loadu_pd(w + j);
    const __m256d fyj = Image ? _mm256_loadu_pd(fy + j) : zero;
    for (int t = 0; t < kTile; ++t) {
      if (t >= count) break;
      __m256d a2 = zero;
      for (int d = 0; d < n; ++d) {
        const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(x[t][d]), _mm256_loadu_pd(sources.axis(d) + j));
        a2 = _mm256_add_pd(a2, _mm256_mul_pd(diff, diff));
      }
      const __m256d coincident = _mm256_cmp_pd(a2, zero, _CMP_EQ_OQ);
      hit[t] = _mm256_add_pd(hit[t], _mm256_and_pd(coincident, wj));
      // keep the masked lanes finite
      const __m256d safe_a2 = _mm256_blendv_pd(a2, one, coincident);
      const __m256d a = _mm256_sqrt_pd(safe_a2);
      __m256d term;
      if constexpr (!Image) {
        const __m256d inv = _mm256_div_pd(one, a);
        __m256d g = inv;
        for (int k = 1; k < m; ++k) g = _mm256_mul_pd(g, inv);
        term = _mm256_mul_pd(cn, g);
      } else {
        const __m256d dd = _mm256_mul_pd(_mm256_set1_pd(fx[t]), fyj);
        const __m256d b = _mm256_sqrt_pd(_mm256_add_pd(safe_a2, dd));
        __m256d s = one;
        __m256d ak = one;
        __m256d abm = _mm256_mul_pd(a, b);
        const __m256d ab = abm;
        for (int k = 1; k < m; ++k) {
          ak = _mm256_mul_pd(ak, a);
          s = _mm256_add_pd(_mm256_mul_pd(s, b), ak);
          abm = _mm256_mul_pd(abm, ab);
        }
        const __m256d num = _mm256_mul_pd(_mm256_mul_pd(cn, dd), s);
        const __m256d den = _mm256_mul_pd(_mm256_add_pd(a, b), abm);
        term = _mm256_div_pd(num, den);
      }
      term = _mm256_andnot_pd(coincident, term);
      acc[t] = _mm256_add_pd(acc[t], _mm256_mul_pd(wj, term));
    }
  }
  for (int t = 0; t < count; ++t) out[t] = {hsum(acc[t]), hsum(hit[t])};
}

template <int N>
void sweep_dispatch(const SourceSet& sources, const double* const* x, const double* fx, int count, KernelSum* out) {
  if (sources.kind() == DomainKind::WholeSpace) {
    sweep<N, false>(sources, x, fx, count, out);
  } else {
    sweep<N, true>(sources, x, fx, count, out);
  }
}

}  // namespace

void green_sums_avx2(const SourceSet& sources, const double* const* x, const double* fx, std::size_t count,
                     KernelSum* out) {
  for (std::size_t i = 0; i < count; i += kTile) {
    const int tile = static_cast<int>(std::min<std::size_t>(kTile, count - i));
    if (sources.dim() == 3) {
      sweep_dispatch<3>(sources, x + i, fx + i, tile, out + i);
    } else {
      sweep_dispatch<0>(sources, x + i, fx + i, tile, out + i);
    }
  }
}

}  // namespace sublin::simd::detail
