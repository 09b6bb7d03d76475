#include "sublin/kernels.hpp"
#include "sublin/simd.hpp"

namespace sublin::simd::detail {

void green_sums_scalar(const SourceSet& sources, const double* const* x, const double* fx, std::size_t count,
                       KernelSum* out) {
  const int n = sources.dim();
  const DomainKind kind = sources.kind();
  const double cn = sources.green_constant();
  const double* w = sources.weights();
  const double* fy = sources.factors();
  for (std::size_t t = 0; t < count; ++t) {
    KernelSum s;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      double a2 = 0.0;
      for (int d = 0; d < n; ++d) {
        const double diff = x[t][d] - sources.axis(d)[j];
        a2 = a2 + diff * diff;
      }
      if (a2 == 0.0) {
        s.coincident_weight += w[j];
        continue;
      }
      s.sum = s.sum + w[j] * sublin::detail::green_term(kind, n, cn, a2, fx[t], fy[j]);
    }
    out[t] = s;
  }
}

}  // namespace sublin::simd::detail
