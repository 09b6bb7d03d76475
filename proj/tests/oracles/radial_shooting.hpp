#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

// Radial boundary value problem on the unit ball of R^n,
//   -(1/r^{n-1}) (r^{n-1} u')' = u^q,  u'(0) = 0,  u(1) = 0,
// solved by shooting on a = u(0) with bisection. Independent of the
// integral-equation solver: classical RK4 in r, series start at r0.
namespace oracle {

struct ShootResult {
  double u_at_one = 0.0;
  double first_zero = 2.0;  // radius where u first reaches 0, 2 if never
};

inline ShootResult shoot(int n, double q, double a, int steps = 20000) {
  auto src = [q](double u) { return u > 0.0 ? std::pow(u, q) : 0.0; };
  // u = a - a^q r^2 / (2n) + O(r^4) near the centre.
  const double r0 = 1e-6;
  double r = r0;
  double u = a - src(a) * r0 * r0 / (2.0 * n);
  double v = -src(a) * r0 / n;
  const double h = (1.0 - r0) / steps;
  auto du = [](double, double, double vv) { return vv; };
  auto dv = [&](double rr, double uu, double vv) { return -src(uu) - (n - 1) * vv / rr; };
  ShootResult res;
  for (int i = 0; i < steps; ++i) {
    const double k1u = du(r, u, v), k1v = dv(r, u, v);
    const double k2u = du(r + h / 2, u + h / 2 * k1u, v + h / 2 * k1v), k2v = dv(r + h / 2, u + h / 2 * k1u, v + h / 2 * k1v);
    const double k3u = du(r + h / 2, u + h / 2 * k2u, v + h / 2 * k2v), k3v = dv(r + h / 2, u + h / 2 * k2u, v + h / 2 * k2v);
    const double k4u = du(r + h, u + h * k3u, v + h * k3v), k4v = dv(r + h, u + h * k3u, v + h * k3v);
    const double un = u + h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (res.first_zero > 1.5 && un <= 0.0) res.first_zero = r + h * u / (u - un);
    u = un;
    r += h;
  }
  res.u_at_one = u;
  return res;
}

// u(0) of the positive solution. The zero of u_a moves outward as a grows.
inline double central_value(int n, double q, double lo = 1e-6, double hi = 10.0) {
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(n, q, mid).u_at_one > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
