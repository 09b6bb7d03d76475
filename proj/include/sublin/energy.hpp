#pragma once

#include <optional>

#include "sublin/domain.hpp"
#include "sublin/field.hpp"
#include "sublin/grid.hpp"
#include "sublin/measure.hpp"

namespace sublin {

// E_gamma[m] = int (G m)^gamma dm. +inf propagates.
double energy(const Domain& domain, const Measure& m, double gamma);

enum class RieszStencil {
  // Centred (2n+1)-point Laplacian. Every cell of the grid inside the
  // domain must have its whole stencil inside the domain.
  Interior,
  // Same, but cells whose stencil leaves the domain are dropped (omega = 0).
  InteriorTrimmed,
  // Shortley-Weller closure: a neighbour outside the domain is replaced by
  // the boundary crossing along that axis, where w = 0.
  BoundaryClosed,
};

struct RieszOptions {
  RieszStencil stencil = RieszStencil::Interior;
  // Replaces 1 - q as the power applied to G mu (testing: 1 gives -Laplace G mu = mu).
  std::optional<double> exponent;
};

struct RieszMeasure {
  Measure omega;
  double clipped_mass = 0.0;   // sum of |negative part| * cell volume
  double positive_mass = 0.0;  // mass of omega after clipping
  std::size_t active_cells = 0;
};

/// omega_h = max(-Laplace_h (G mu)^{1-q}, 0) on the cells of `grid` that lie
/// in the domain, returned as a grid density.
RieszMeasure riesz_measure_numeric(const Domain& domain, const Measure& mu, double q, const GridSpec& grid,
                                   const RieszOptions& options = {});

struct EnergyReport {
  double gamma = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs when rhs > 0
  double clipped_mass = 0.0;
  double omega_mass = 0.0;  // mass of the clipped Riesz measure
  bool degenerate = false;  // rhs = 0
};

// lhs = E_{(gamma+q)/(1-q)}[omega_h], rhs = E_gamma[mu].
EnergyReport lemma31_check(const Domain& domain, const Measure& mu, double gamma, double q, const GridSpec& grid,
                           const RieszOptions& options = {});

// lhs = |G mu|_{L^p(dx)} with p = n(1+gamma)/(n-2) on `dx_set`,
// rhs = E_gamma[mu]^{1/(gamma+1)}.
EnergyReport lemma32_check(const Domain& domain, const Measure& mu, double gamma, const EvalSetPtr& dx_set);

}  // namespace sublin
