#include "sublin/energy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sublin/errors.hpp"
#include "sublin/potential.hpp"

namespace sublin {

double energy(const Domain& domain, const Measure& m, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ArgumentError("energy: gamma must be finite and > 0");
  if (!(m.domain() == domain)) throw ArgumentError("energy: measure lives on a different domain");
  if (m.size() == 0) return 0.0;
  const auto g = potential_at(m, m.nodes());
  std::vector<double> gp(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) gp[i] = std::isinf(g[i]) ? g[i] : std::pow(g[i], gamma);
  return integrate_nodes(m, gp);
}

RieszMeasure riesz_measure_numeric(const Domain& domain, const Measure& mu, double q, const GridSpec& grid,
                                   const RieszOptions& options) {
  if (!(mu.domain() == domain)) throw ArgumentError("riesz_measure_numeric: measure lives on a different domain");
  if (grid.dim() != domain.dim()) throw ArgumentError("riesz_measure_numeric: grid dimension mismatch");
  const double power = options.exponent ? *options.exponent : 1.0 - q;
  if (!options.exponent && !(q > 0.0 && q < 1.0)) throw ArgumentError("riesz_measure_numeric: q must lie in (0, 1)");
  if (!(power > 0.0)) throw ArgumentError("riesz_measure_numeric: exponent must be > 0");

  const int n = domain.dim();
  const auto& h = grid.spacing();

  // Points where w is needed: every in-domain cell plus its in-domain
  // stencil neighbours (the collar may leave the grid box).
  PointSet centres(n);
  std::vector<std::size_t> active;
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> nb(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    grid.center(c, x);
    if (!domain.contains(x)) continue;
    bool inside = true;
    for (int d = 0; d < n && inside; ++d) {
      for (int dir = -1; dir <= 1; dir += 2) {
        nb = x;
        nb[d] += dir * h[d];
        if (!domain.contains(nb)) inside = false;
      }
    }
    if (!inside) {
      if (options.stencil == RieszStencil::Interior) {
        throw ArgumentError("riesz_measure_numeric: the stencil of cell " + std::to_string(c) +
                            " leaves the domain; use an interior grid");
      }
      if (options.stencil == RieszStencil::InteriorTrimmed) continue;
    }
    active.push_back(c);
    centres.push_back(x);
  }
  if (active.empty()) throw ArgumentError("riesz_measure_numeric: no active cell inside the domain");

  // Layout per active cell: centre, then (-e_d, +e_d) for each axis.
  const std::size_t stride = 1 + 2 * static_cast<std::size_t>(n);
  PointSet pts(n);
  pts.reserve(active.size() * stride);
  std::vector<double> reach(active.size() * stride, 0.0);  // distance to the stencil point
  std::vector<char> in_domain(active.size() * stride, 1);
  for (std::size_t a = 0; a < active.size(); ++a) {
    const auto c = centres[a];
    pts.push_back(c);
    for (int d = 0; d < n; ++d) {
      for (int dir = -1; dir <= 1; dir += 2) {
        nb.assign(c.begin(), c.end());
        nb[d] += dir * h[d];
        const std::size_t slot = a * stride + 1 + 2 * static_cast<std::size_t>(d) + (dir > 0 ? 1 : 0);
        if (domain.contains(nb)) {
          reach[slot] = h[d];
        } else {
          reach[slot] = domain.boundary_distance(c, d, dir);
          in_domain[slot] = 0;
          nb.assign(c.begin(), c.end());  // placeholder, value forced to 0
        }
        pts.push_back(nb);
      }
    }
  }

  const auto g = potential_at(mu, pts);
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw ArgumentError("riesz_measure_numeric: G mu is infinite on the stencil");
    w[i] = std::pow(g[i], power);
  }

  RieszMeasure out{Measure::zero(domain)};
  std::vector<double> density(grid.cell_count(), 0.0);
  const double vol = grid.cell_volume();
  for (std::size_t a = 0; a < active.size(); ++a) {
    const double wc = w[a * stride];
    double lap = 0.0;
    for (int d = 0; d < n; ++d) {
      const std::size_t lo = a * stride + 1 + 2 * static_cast<std::size_t>(d);
      const std::size_t hi = lo + 1;
      const bool lo_in = in_domain[lo] != 0;
      const bool hi_in = in_domain[hi] != 0;
      if (lo_in && hi_in) {
        lap += (w[lo] - 2.0 * wc + w[hi]) / (h[d] * h[d]);
      } else {
        const double hm = reach[lo];
        const double hp = reach[hi];
        const double wm = lo_in ? w[lo] : 0.0;
        const double wp = hi_in ? w[hi] : 0.0;
        lap += 2.0 / (hm + hp) * ((wp - wc) / hp - (wc - wm) / hm);
      }
    }
    const double v = -lap;
    if (v < 0.0) {
      out.clipped_mass += -v * vol;
    } else {
      density[active[a]] = v;
      out.positive_mass += v * vol;
    }
  }
  out.active_cells = active.size();
  out.omega = Measure::grid(domain, grid, std::move(density));
  return out;
}

EnergyReport lemma31_check(const Domain& domain, const Measure& mu, double gamma, double q, const GridSpec& grid,
                           const RieszOptions& options) {
  if (!(gamma > 0.0)) throw ArgumentError("lemma31_check: gamma must be > 0");
  EnergyReport rep;
  rep.gamma = gamma;
  rep.rhs = energy(domain, mu, gamma);
  if (mu.is_zero()) {
    rep.degenerate = true;
    return rep;
  }
  const auto riesz = riesz_measure_numeric(domain, mu, q, grid, options);
  rep.clipped_mass = riesz.clipped_mass;
  rep.omega_mass = riesz.positive_mass;
  rep.lhs = energy(domain, riesz.omega, (gamma + q) / (1.0 - q));
  rep.degenerate = !(rep.rhs > 0.0);
  rep.ratio = rep.degenerate ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

EnergyReport lemma32_check(const Domain& domain, const Measure& mu, double gamma, const EvalSetPtr& dx_set) {
  if (!(gamma > 0.0)) throw ArgumentError("lemma32_check: gamma must be > 0");
  const int n = domain.dim();
  const double p = n * (1.0 + gamma) / (n - 2);
  EnergyReport rep;
  rep.gamma = gamma;
  rep.lhs = lp_norm_dx(potential_field(domain, mu, dx_set), p);
  rep.rhs = std::pow(energy(domain, mu, gamma), 1.0 / (gamma + 1.0));
  rep.degenerate = !(rep.rhs > 0.0);
  rep.ratio = rep.degenerate ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

}  // namespace sublin
