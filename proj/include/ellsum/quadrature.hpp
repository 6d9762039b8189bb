#ifndef ELLSUM_QUADRATURE_HPP
#define ELLSUM_QUADRATURE_HPP

// Double-exponential (tanh-sinh) integration on (0,1), a reciprocal splice
// for (0,inf), and the normalized Mellin transform.
//
// Integrands on (0,1) receive both x and 1-x so endpoint-singular factors
// can be formed without cancellation.

#include <cmath>
#include <functional>
#include <vector>

#include "ellsum/specfun.hpp"

namespace ellsum {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // conservative estimate
  int levels = 0;
  bool converged = false;
};

// f(x, 1-x) on (0,1)
using Integrand01 = std::function<double(double, double)>;

namespace detail {

// Abscissa in the tanh-sinh transformed variable: x = 1/(1+e^{-2u}),
// u = (pi/2) sinh t, weight dx/dt = 2 x (1-x) (pi/2) cosh t.
struct TsNode {
  double x;
  double one_minus_x;
  double weight;
  bool usable;
};

inline TsNode ts_node(double t) {
  double u = 0.5 * kPi * std::sinh(t);
  double au = std::abs(u);
  // beyond this the short side of the node underflows the guard band
  if (au > 333.8) return {0, 0, 0, false};
  double e = std::exp(-2.0 * au);
  double denom = 1.0 + e;
  double near = e / denom;  // distance to the nearer endpoint
  double far = 1.0 / denom;
  if (near < 1e-290) return {0, 0, 0, false};
  double w = 2.0 * near * far * 0.5 * kPi * std::cosh(t);
  if (u >= 0) return {far, near, w, true};
  return {near, far, w, true};
}

}  // namespace detail

// Tanh-sinh on (0,1) with level doubling up to max_level (h = 2^-level).
// Completes at least 3 levels; the error estimate combines the last level
// delta with a rounding floor, which is conservative in practice.
inline QuadResult integrate_01(const Integrand01& f, double tol,
                               int max_level = 12) {
  const double tmax = 6.115;  // ts_node unusable beyond this anyway
  double h = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  // level 0
  {
    auto n0 = detail::ts_node(0.0);
    sum = f(n0.x, n0.one_minus_x) * n0.weight;
    abs_sum = std::abs(sum);
    for (int j = 1; j * h <= tmax; ++j) {
      for (double t : {j * h, -j * h}) {
        auto nd = detail::ts_node(t);
        if (!nd.usable) continue;
        double v = f(nd.x, nd.one_minus_x) * nd.weight;
        sum += v;
        abs_sum += std::abs(v);
      }
    }
  }
  double prev = sum * h;
  double prev_delta = std::abs(prev);
  QuadResult res;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (int j = 1; j * h <= tmax; j += 2) {
      for (double t : {j * h, -j * h}) {
        auto nd = detail::ts_node(t);
        if (!nd.usable) continue;
        double v = f(nd.x, nd.one_minus_x) * nd.weight;
        add += v;
        abs_sum += std::abs(v);
      }
    }
    double cur = 0.5 * prev + h * add;
    double delta = std::abs(cur - prev);
    double floor_err = 4e-16 * abs_sum * h;
    res.value = cur;
    res.levels = level;
    res.error = delta + floor_err;
    // the floor term lets integrals that cancel to ~0 converge once the
    // level delta reaches the rounding noise of the absolute mass
    if (level >= 3 && delta <= tol * std::abs(cur) + 100 * floor_err) {
      res.converged = true;
      return res;
    }
    prev = cur;
    prev_delta = delta;
  }
  res.converged = false;
  return res;
}

inline QuadResult integrate_01_or_throw(const Integrand01& f, double tol,
                                        int max_level = 12) {
  QuadResult r = integrate_01(f, tol, max_level);
  if (!r.converged)
    throw NoConvergence("integrate_01: no convergence", r.value, r.error);
  return r;
}

// integral over (0,inf), spliced at 1: the upper half is mapped back to
// (0,1) by t -> 1/t.
inline QuadResult integrate_0inf(const std::function<double(double)>& g,
                                 double tol, int max_level = 12) {
  QuadResult lo = integrate_01([&](double x, double) { return g(x); }, tol,
                               max_level);
  QuadResult hi = integrate_01(
      [&](double x, double) {
        double t = 1.0 / x;
        return g(t) * t * t;
      },
      tol, max_level);
  QuadResult out;
  out.value = lo.value + hi.value;
  out.error = lo.error + hi.error;
  out.levels = std::max(lo.levels, hi.levels);
  out.converged = lo.converged && hi.converged;
  return out;
}

// Normalized Mellin transform M_s[f] = (1/Gamma(s)) int_0^inf f(t) t^{s-1} dt.
inline QuadResult mellin_transform(const std::function<double(double)>& f,
                                   double s, double tol, int max_level = 12) {
  if (!(s > 0.0)) throw DomainError("mellin_transform: s must be > 0");
  QuadResult r = integrate_0inf(
      [&](double t) {
        double ft = f(t);
        // exponentially small tails: avoid 0 * t^{s-1} overflow at huge t
        if (std::abs(ft) < 1e-280) return 0.0;
        return ft * std::pow(t, s - 1.0);
      },
      tol, max_level);
  double g = gamma_fn(s);
  r.value /= g;
  r.error /= std::abs(g);
  return r;
}

// ---------------------------------------------------------------------------
// Elliptic data along the nome line q = e^{-t}
// ---------------------------------------------------------------------------

// All six elliptic quantities at the modulus k(e^{-t}), with k and k'
// independently accurate at both ends of (0,inf).  Used when an integral
// over k in (0,1) is pulled back to t via dk/dt = -2kk'^2K^2/pi^2.
struct NomePoint {
  double t;
  double k, kp;
  double K, Kp, E, Ep;
  double jacobian;  // |dk/dt| = 2 k k'^2 K^2 / pi^2
};

inline NomePoint nome_point(double t) {
  NomePoint p;
  p.t = t;
  double t2 = theta_exp(2, t), t3 = theta_exp(3, t), t4 = theta_exp(4, t);
  p.k = (t2 * t2) / (t3 * t3);
  p.kp = (t4 * t4) / (t3 * t3);
  p.K = 0.5 * kPi * t3 * t3;
  p.Kp = p.K * t / kPi;  // exact relation on the nome line
  if (p.k < 1e-280) {
    // K and E are pi/2 + O(k^2), E' = 1 + O(k^2 log k)
    p.E = 0.5 * kPi;
    p.Ep = 1.0;
  } else if (p.kp < 1e-280) {
    p.E = 1.0;
    p.Ep = 0.5 * kPi;
  } else {
    auto r = detail::agm_with_sums(p.kp, p.k * p.k);
    p.E = (kPi / (2.0 * r.agm)) * (1.0 - r.c_sq_weighted);
    auto rp = detail::agm_with_sums(p.k, p.kp * p.kp);
    p.Ep = (kPi / (2.0 * rp.agm)) * (1.0 - rp.c_sq_weighted);
  }
  p.jacobian = 2.0 * p.k * p.kp * p.kp * p.K * p.K / (kPi * kPi);
  return p;
}

}  // namespace ellsum

#endif  // ELLSUM_QUADRATURE_HPP
