#include "sublin/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/kernels.hpp"
#include "sublin/random.hpp"
#include "sublin/simd.hpp"

namespace sublin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq_dist(std::span<const double> x, std::span<const double> y) {
  double a2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    a2 += d * d;
  }
  return a2;
}

// Smooth image part c_n b^{2-n} of the kernel, b^2 = a^2 + fx fy; G equals
// the whole-space kernel minus this term.
double image_term(DomainKind kind, int n, double cn, double a2, double fx, double fy) {
  if (kind == DomainKind::WholeSpace) return 0.0;
  return cn * std::pow(a2 + fx * fy, -0.5 * (n - 2));
}

// Integral of c_n |x - y|^{2-n} over the ball of volume vol centred at x,
// per unit density: rho^2 / (2 (n - 2)).
double self_ball_coefficient(double vol, int n) {
  const double rho = std::pow(vol / ball_volume(n), 1.0 / n);
  return rho * rho / (2.0 * (n - 2));
}
// Prefix/suffix sums for the shell formula of a radial measure.
class RadialSums {
 public:
  explicit RadialSums(const Measure& m)
      : radii_(m.radii()), m_(m.dim() - 2), cn_(green_constant(m.dim())),
        ball_(m.domain().kind() == DomainKind::UnitBall) {
    const auto mass = m.masses();
    const std::size_t n = radii_.size();
    inner_.assign(n + 1, 0.0);
    outer_.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) inner_[j + 1] = inner_[j] + mass[j];
    for (std::size_t j = n; j-- > 0;) {
      outer_[j] = outer_[j + 1];
      if (mass[j] > 0.0) outer_[j] += mass[j] * std::pow(radii_[j], -m_);
    }
  }

  [[nodiscard]] double operator()(double r) const {
    const auto k = static_cast<std::size_t>(std::upper_bound(radii_.begin(), radii_.end(), r) - radii_.begin());
    double v = outer_[k];
    if (inner_[k] > 0.0) v += inner_[k] * std::pow(r, -m_);
    if (ball_) v -= inner_.back();
    return cn_ * std::max(v, 0.0);
  }

 private:
  std::span<const double> radii_;
  int m_;
  double cn_;
  bool ball_;
  std::vector<double> inner_;
  std::vector<double> outer_;
};

// Replace the midpoint term of the cell holding x by an integral of G over
// that cell: midpoint rule on a k^n subdivision, skipping subcells outside
// the domain, with the equal-volume ball for the subcell holding x.
double grid_correction(const Measure& m, std::span<const double> x, bool coincident) {
  const auto& grid = m.grid_spec();
  const auto cell = grid.locate(x);
  if (!cell) return 0.0;
  const auto node = m.node_of_cell(*cell);
  if (!node) return 0.0;
  const Domain& domain = m.domain();
  const DomainKind kind = domain.kind();
  const int n = m.dim();
  const double cn = green_constant(n);
  const auto y = m.nodes()[*node];
  const double fx = detail::image_factor(kind, x);
  const double mass = m.masses()[*node];
  const auto& h = grid.spacing();

  const int k = n <= 4 ? 4 : 2;
  std::size_t total = 1;
  std::vector<int> home(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    total *= static_cast<std::size_t>(k);
    const double t = (x[d] - (y[d] - 0.5 * h[d])) / (h[d] / k);
    home[d] = std::clamp(static_cast<int>(std::floor(t)), 0, k - 1);
  }
  const double sub_vol = grid.cell_volume() / static_cast<double>(total);
  const double self = self_ball_coefficient(sub_vol, n);

  std::vector<double> ys(static_cast<std::size_t>(n));
  double integral = 0.0;
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t rest = s;
    bool is_home = true;
    for (int d = 0; d < n; ++d) {
      const int j = static_cast<int>(rest % static_cast<std::size_t>(k));
      rest /= static_cast<std::size_t>(k);
      ys[d] = y[d] + ((j + 0.5) / k - 0.5) * h[d];
      is_home = is_home && j == home[d];
    }
    if (!domain.contains(ys)) continue;
    const double a2 = sq_dist(x, ys);
    const double fy = detail::image_factor(kind, ys);
    if (is_home) {
      integral += self - sub_vol * image_term(kind, n, cn, a2, fx, fy);
    } else {
      integral += sub_vol * detail::green_term(kind, n, cn, a2, fx, fy);
    }
  }
  double corr = m.values()[*node] * integral;
  if (!coincident) {
    const double a2 = sq_dist(x, y);
    if (a2 > 0.0) corr -= mass * detail::green_term(kind, n, cn, a2, fx, detail::image_factor(kind, y));
  }
  return corr;
}

void check_exponent(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ArgumentError(std::string(what) + ": exponent must be finite and > 0");
}

}  // namespace

std::vector<double> potential_at(const Measure& m, const PointSet& points) {
  std::vector<double> out(points.size(), 0.0);
  if (m.size() == 0 || points.size() == 0) return out;
  if (m.kind() == MeasureKind::Radial) {
    const RadialSums sums(m);
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = sums(norm(points[i]));
    return out;
  }
  std::vector<simd::KernelSum> sums(points.size());
  simd::green_sums(m.sources(), points, sums);
  if (m.kind() == MeasureKind::Atomic) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = sums[i].coincident_weight > 0.0 ? kInf : sums[i].sum;
    return out;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = sums[i].sum + grid_correction(m, points[i], sums[i].coincident_weight > 0.0);
    out[i] = std::max(v, 0.0);
  }
  return out;
}

double green_potential(const Domain& domain, const Measure& m, std::span<const double> x) {
  domain.require_contains(x, "green_potential");
  if (!(m.domain() == domain)) throw ArgumentError("green_potential: measure lives on a different domain");
  PointSet one(domain.dim());
  one.push_back(x);
  return potential_at(m, one)[0];
}

Field potential_field(const Domain& domain, const Measure& m, const EvalSetPtr& set) {
  if (!set) throw ArgumentError("potential_field: missing eval set");
  if (!(m.domain() == domain) || !(set->domain() == domain)) {
    throw ArgumentError("potential_field: measure, eval set and domain must agree");
  }
  return Field(domain, set, potential_at(m, set->points()));
}

double lp_norm_dx(const Field& f, double p) {
  check_exponent(p, "lp_norm_dx");
  const auto& w = f.set->dx_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double v = std::abs(f.values[i]);
    if (std::isnan(v)) throw EvaluationError("lp_norm_dx: NaN field value at point " + std::to_string(i));
    if (w[i] == 0.0) continue;
    if (std::isinf(v)) return kInf;
    s += w[i] * std::pow(v, p);
  }
  return std::pow(s, 1.0 / p);
}

double lp_norm_nodes(std::span<const double> f, double p, const Measure& m) {
  check_exponent(p, "lp_norm_dmu");
  std::vector<double> fp(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f[i]);
    fp[i] = std::isinf(v) ? kInf : std::pow(v, p);
    if (std::isnan(f[i])) fp[i] = f[i];
  }
  return std::pow(integrate_nodes(m, fp), 1.0 / p);
}

double lp_norm_dmu(const Field& f, double p, const Measure& m) { return lp_norm_nodes(f.at_nodes(m), p, m); }

NodeOperator::NodeOperator(const Measure& sigma) : n_(sigma.size()) {
  if (sigma.kind() == MeasureKind::Atomic) {
    throw CapabilityError("node operator: atomic measures have an infinite self-interaction");
  }
  if (n_ > kMaxNodes) {
    throw CapabilityError("node operator: " + std::to_string(n_) + " nodes exceeds the dense limit of " +
                          std::to_string(kMaxNodes));
  }
  a_.assign(n_ * n_, 0.0);
  const auto mass = sigma.masses();
  const int n = sigma.dim();
  const double cn = green_constant(n);
  const DomainKind kind = sigma.domain().kind();
  if (sigma.kind() == MeasureKind::Radial) {
    const auto r = sigma.radii();
    const double sub = kind == DomainKind::UnitBall ? 1.0 : 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (mass[j] == 0.0) continue;
      for (std::size_t i = 0; i < n_; ++i) {
        a_[j * n_ + i] = cn * mass[j] * (std::pow(std::max(r[i], r[j]), -(n - 2)) - sub);
      }
    }
    return;
  }
  const auto& nodes = sigma.nodes();
  std::vector<double> f(n_);
  for (std::size_t i = 0; i < n_; ++i) f[i] = detail::image_factor(kind, nodes[i]);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double a2 = sq_dist(nodes[i], nodes[j]);
      a_[j * n_ + i] = i == j ? std::max(grid_correction(sigma, nodes[j], true), 0.0)
                              : mass[j] * detail::green_term(kind, n, cn, a2, f[i], f[j]);
    }
  }
}

void NodeOperator::apply(std::span<const double> f, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (f[j] == 0.0) continue;
    const double* col = a_.data() + j * n_;
    for (std::size_t i = 0; i < n_; ++i) out[i] += col[i] * f[j];
  }
}

namespace detail {

double weighted_ratio(const NodeOperator& op, std::span<const double> masses, std::span<const double> f, double s,
                      double r) {
  std::vector<double> y(op.size());
  op.apply(f, y);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += masses[i] * std::pow(y[i], r);
    den += masses[i] * std::pow(f[i], s);
  }
  if (!(den > 0.0)) return 0.0;
  return std::pow(num, 1.0 / r) / std::pow(den, 1.0 / s);
}

}  // namespace detail

namespace {

class Ascent {
 public:
  Ascent(const NodeOperator& op, std::span<const double> mass, double s, double r)
      : op_(op), mass_(mass), s_(s), r_(r), y_(op.size()) {}

  // Normalizes f and returns its ratio.
  double reset(std::vector<double>& f) {
    op_.apply(f, y_);
    double den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) den += mass_[i] * std::pow(f[i], s_);
    if (!(den > 0.0)) return 0.0;
    const double k = std::pow(den, -1.0 / s_);
    for (auto& v : f) v *= k;
    for (auto& v : y_) v *= k;
    num_ = numerator_sum(y_);
    ++evaluations;
    return std::pow(num_, 1.0 / r_);
  }

  // Forward/central difference gradient at the current (normalized) f.
  void gradient(const std::vector<double>& f, std::vector<double>& g) {
    double fmax = 0.0;
    for (double v : f) fmax = std::max(fmax, v);
    const double h = 1e-6 * fmax;
    const double base = std::pow(num_, 1.0 / r_);
    std::vector<double> z(y_.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      g[j] = 0.0;
      if (mass_[j] == 0.0) continue;
      const double up = shifted(f, j, h, z);
      if (f[j] >= h) {
        g[j] = (up - shifted(f, j, -h, z)) / (2.0 * h);
      } else {
        g[j] = (up - base) / h;
      }
    }
  }

  std::size_t evaluations = 0;

 private:
  double numerator_sum(std::span<const double> y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (mass_[i] > 0.0) s += mass_[i] * std::pow(y[i], r_);
    }
    return s;
  }

  // Ratio at f + delta e_j; the denominator of f is 1.
  double shifted(const std::vector<double>& f, std::size_t j, double delta, std::vector<double>& z) {
    const auto col = op_.column(j);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max(y_[i] + delta * col[i], 0.0);
    const double den = 1.0 + mass_[j] * (std::pow(f[j] + delta, s_) - std::pow(f[j], s_));
    ++evaluations;
    return std::pow(numerator_sum(z), 1.0 / r_) / std::pow(den, 1.0 / s_);
  }

  const NodeOperator& op_;
  std::span<const double> mass_;
  double s_;
  double r_;
  std::vector<double> y_;
  double num_ = 0.0;
};

}  // namespace

BestConstant best_constant_estimate(const Domain& domain, const Measure& sigma, double s, double r, int trials,
                                    int steps, std::uint64_t seed) {
  if (!(sigma.domain() == domain)) throw ArgumentError("best_constant_estimate: measure lives on a different domain");
  if (sigma.size() == 0 || sigma.is_zero()) throw ArgumentError("best_constant_estimate: sigma has empty support");
  if (!(s > 1.0) || !std::isfinite(s)) throw ArgumentError("best_constant_estimate: need s > 1");
  if (!(r > 0.0) || !(r < s)) throw ArgumentError("best_constant_estimate: need 0 < r < s");
  if (trials < 1 || steps < 0) throw ArgumentError("best_constant_estimate: need trials >= 1 and steps >= 0");

  BestConstant out;
  if (sigma.kind() == MeasureKind::Atomic) {
    out.constant = kInf;
    out.ones_ratio = kInf;
    out.maximizer.assign(sigma.size(), 1.0);
    return out;
  }

  const NodeOperator op(sigma);
  const auto mass = sigma.masses();
  const std::size_t n = op.size();
  Ascent ascent(op, mass, s, r);
  std::vector<double> g(n);
  std::vector<double> trial_f(n);

  for (int t = 0; t < trials; ++t) {
    std::vector<double> f(n, 1.0);
    if (t > 0) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
      for (auto& v : f) v = rng.uniform();
    }
    double best = ascent.reset(f);
    if (t == 0) out.ones_ratio = best;
    double eta = 0.1;
    for (int step = 0; step < steps; ++step) {
      ascent.gradient(f, g);
      double gmax = 0.0;
      double fmax = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        gmax = std::max(gmax, std::abs(g[j]));
        fmax = std::max(fmax, f[j]);
      }
      if (!(gmax > 0.0)) break;
      bool moved = false;
      // Backtracking: only improvements are accepted.
      for (int tries = 0; tries < 40 && !moved; ++tries) {
        for (std::size_t j = 0; j < n; ++j) trial_f[j] = std::max(f[j] + eta * fmax * g[j] / gmax, 0.0);
        const double value = ascent.reset(trial_f);
        if (value > best) {
          best = value;
          f.swap(trial_f);
          eta = std::min(2.0 * eta, 10.0);
          moved = true;
        } else {
          eta *= 0.5;
        }
      }
      if (!moved) break;
      ascent.reset(f);
    }
    if (t == 0 || best > out.constant) {
      out.constant = best;
      out.maximizer = f;
    }
  }
  out.evaluations = ascent.evaluations;
  return out;
}

}  // namespace sublin
