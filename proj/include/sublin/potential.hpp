#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sublin/domain.hpp"
#include "sublin/field.hpp"
#include "sublin/measure.hpp"
#include "sublin/point_set.hpp"

namespace sublin {

/// Green potential G m(x) = int G(x, y) dm(y). +inf when an atom sits at x.
///
/// Grid densities use the midpoint rule with a singular-cell correction:
/// the cell holding x is replaced by the equal-volume ball of radius rho,
/// whose whole-space part integrates exactly to density * rho^2 / (2(n-2)),
/// and the smooth image part is taken at the cell centre. Radial densities
/// use the shell formula c_n sum_j M_j (max(r, s_j)^{2-n} - [ball] 1).
double green_potential(const Domain& domain, const Measure& m, std::span<const double> x);

/// Potential at arbitrary points of the closed domain (no membership check;
/// boundary points of the ball evaluate to 0).
std::vector<double> potential_at(const Measure& m, const PointSet& points);

Field potential_field(const Domain& domain, const Measure& m, const EvalSetPtr& set);

// (int |f|^p dx)^{1/p} over a grid or radial eval set.
double lp_norm_dx(const Field& f, double p);
// (int |f|^p dm)^{1/p}, f taken at the support nodes of m.
double lp_norm_dmu(const Field& f, double p, const Measure& m);
// Same with f already given at the nodes of m.
double lp_norm_nodes(std::span<const double> f, double p, const Measure& m);

/// Dense discretization of f -> G(f dsigma) restricted to the nodes of sigma:
/// (G(f dsigma))(x_i) = sum_j a_ij f_j. Stored column-major.
class NodeOperator {
 public:
  static constexpr std::size_t kMaxNodes = 2048;

  // Throws CapabilityError for atomic sigma (infinite diagonal) and for
  // more than kMaxNodes nodes.
  explicit NodeOperator(const Measure& sigma);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::span<const double> column(std::size_t j) const { return {a_.data() + j * n_, n_}; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return a_[j * n_ + i]; }
  void apply(std::span<const double> f, std::span<double> out) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct BestConstant {
  double constant = 0.0;             // best ratio found (a lower estimate)
  double ones_ratio = 0.0;           // ratio at f = 1
  std::vector<double> maximizer;     // normalized so that |f|_{L^s(dsigma)} = 1
  std::size_t evaluations = 0;
};

/// Lower estimate of the best c in |G(f dsigma)|_{L^r(dsigma)} <= c |f|_{L^s(dsigma)}
/// by multi-start projected ascent with finite-difference gradients.
/// Trial 0 starts from f = 1, the others from seeded random f >= 0; each
/// trial has its own random stream so results do not depend on scheduling.
BestConstant best_constant_estimate(const Domain& domain, const Measure& sigma, double s, double r, int trials,
                                    int steps, std::uint64_t seed);

namespace detail {
// Ratio |Af|_{L^r(dsigma)} / |f|_{L^s(dsigma)} for a given operator.
double weighted_ratio(const NodeOperator& op, std::span<const double> masses, std::span<const double> f, double s,
                      double r);
}  // namespace detail

}  // namespace sublin
