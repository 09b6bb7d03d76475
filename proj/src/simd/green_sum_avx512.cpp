// Compiled with -mavx512f -ffp-contract=off; only entered after a CPU check.
//
// Unlike the AVX2 variant this one does not use IEEE sqrt/div: reciprocal
// square roots and reciprocals start from the 14-bit rsqrt14/rcp14
// estimates and take two Newton steps, which lands within a few ulp of the
// correctly rounded value and runs several times faster than vsqrtpd/vdivpd.
#include <immintrin.h>

#include <algorithm>

#include "sublin/simd.hpp"

namespace sublin::simd::detail {

namespace {

constexpr int kTile = 4;

// y ~ 1/sqrt(x), relative error ~1e-16 after two steps from 2^-14.
inline __m512d rsqrt(__m512d x) {
  const __m512d half = _mm512_set1_pd(0.5);
  const __m512d three_halves = _mm512_set1_pd(1.5);
  __m512d y = _mm512_rsqrt14_pd(x);
  const __m512d hx = _mm512_mul_pd(half, x);
  y = _mm512_mul_pd(y, _mm512_sub_pd(three_halves, _mm512_mul_pd(hx, _mm512_mul_pd(y, y))));
  y = _mm512_mul_pd(y, _mm512_sub_pd(three_halves, _mm512_mul_pd(hx, _mm512_mul_pd(y, y))));
  return y;
}

inline __m512d recip(__m512d x) {
  const __m512d two = _mm512_set1_pd(2.0);
  __m512d y = _mm512_rcp14_pd(x);
  y = _mm512_mul_pd(y, _mm512_sub_pd(two, _mm512_mul_pd(x, y)));
  y = _mm512_mul_pd(y, _mm512_sub_pd(two, _mm512_mul_pd(x, y)));
  return y;
}

inline double hsum(__m512d v) {
  alignas(64) double lane[8];
  _mm512_store_pd(lane, v);
  return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + ((lane[4] + lane[5]) + (lane[6] + lane[7]));
}

// One tile of up to kTile targets swept over all sources together, so each
// source block is loaded once per tile.
template <int N, bool Image>
void sweep(const SourceSet& sources, const double* const* x, const double* fx, int count, KernelSum* out) {
  const int n = N > 0 ? N : sources.dim();
  const int m = n - 2;
  const __m512d cn = _mm512_set1_pd(sources.green_constant());
  const __m512d one = _mm512_set1_pd(1.0);
  const __m512d zero = _mm512_setzero_pd();
  const double* w = sources.weights();
  const double* fy = sources.factors();

  __m512d acc[kTile];
  __m512d hit[kTile];
  for (int t = 0; t < kTile; ++t) {
    acc[t] = zero;
    hit[t] = zero;
  }
  for (std::size_t j = 0; j < sources.padded_size(); j += 8) {
    const __m512d wj = _mm512_loadu_pd(w + j);
    const __m512d fyj = Image ? _mm512_loadu_pd(fy + j) : zero;
    for (int t = 0; t < kTile; ++t) {
      if (t >= count) break;
      __m512d a2 = zero;
      for (int d = 0; d < n; ++d) {
        const __m512d diff = _mm512_sub_pd(_mm512_set1_pd(x[t][d]), _mm512_loadu_pd(sources.axis(d) + j));
        a2 = _mm512_add_pd(a2, _mm512_mul_pd(diff, diff));
      }
      const __mmask8 coincident = _mm512_cmp_pd_mask(a2, zero, _CMP_EQ_OQ);
      const __mmask8 regular = static_cast<__mmask8>(~coincident);
      hit[t] = _mm512_mask_add_pd(hit[t], coincident, hit[t], wj);
      const __m512d safe_a2 = _mm512_mask_blend_pd(coincident, a2, one);
      const __m512d ia = rsqrt(safe_a2);
      __m512d term;
      if constexpr (!Image) {
        __m512d g = ia;
        for (int k = 1; k < m; ++k) g = _mm512_mul_pd(g, ia);
        term = _mm512_mul_pd(cn, g);
      } else {
        // c D sum_k a^k b^{m-1-k} / ((a+b) (ab)^m)
        const __m512d dd = _mm512_mul_pd(_mm512_set1_pd(fx[t]), fyj);
        const __m512d b2 = _mm512_add_pd(safe_a2, dd);
        const __m512d ib = rsqrt(b2);
        const __m512d a = _mm512_mul_pd(safe_a2, ia);
        const __m512d b = _mm512_mul_pd(b2, ib);
        const __m512d iab = _mm512_mul_pd(ia, ib);
        __m512d s = one;
        __m512d ak = one;
        __m512d iabm = iab;
        for (int k = 1; k < m; ++k) {
          ak = _mm512_mul_pd(ak, a);
          s = _mm512_add_pd(_mm512_mul_pd(s, b), ak);
          iabm = _mm512_mul_pd(iabm, iab);
        }
        const __m512d num = _mm512_mul_pd(_mm512_mul_pd(cn, dd), s);
        term = _mm512_mul_pd(_mm512_mul_pd(num, iabm), recip(_mm512_add_pd(a, b)));
      }
      acc[t] = _mm512_mask_add_pd(acc[t], regular, acc[t], _mm512_mul_pd(wj, term));
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

void green_sums_avx512(const SourceSet& sources, const double* const* x, const double* fx, std::size_t count,
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
