#ifndef ELLSUM_LATTICE_HPP
#define ELLSUM_LATTICE_HPP

// The lattice sums L(m,n,p;s): m half-integer-shifted coordinates, n plain,
// p alternating-sign, all over the shifted quadratic form of eq-type
//   sum eps(vec) / Q(vec)^s.
//
// Two evaluation routes:
//  - direct: box summation organized by the integer value of 4Q (a signed
//    convolution of one-dimensional square-exponent arrays), with a smooth
//    cutoff for the conditionally convergent alternating case and Richardson
//    tail extrapolation for the absolutely convergent one;
//  - mellin: the 1-D integral representation over k (or its pullback to the
//    nome line), which also provides the analytic continuation.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsum/kintegral.hpp"
#include "ellsum/quadrature.hpp"
#include "ellsum/rational.hpp"

namespace ellsum {

class DimensionTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class TailUnbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticeSumSpec {
  Rat m, n, p;
  double dimension() const { return to_double(m + n + p); }
  bool integer_exponents() const {
    return m.get_den() == 1 && n.get_den() == 1 && p.get_den() == 1;
  }
};

struct DirectResult {
  double value;
  double error_bound;  // heuristic
};

namespace detail {

// one-dimensional coefficient arrays over v = 4 q_i^2 (or 4 (q_i-1/2)^2)
enum class CoordKind { Shifted, Plain, Alternating };

inline void accumulate_coord(std::vector<double>& out,
                             const std::vector<double>& in, CoordKind kind,
                             int radius, int vmax) {
  std::vector<std::pair<int, double>> sparse;
  if (kind == CoordKind::Shifted) {
    for (int j = 1; j <= radius; ++j) {
      long e = long(2 * j - 1) * (2 * j - 1);
      if (e > vmax) break;
      sparse.push_back({int(e), 2.0});
    }
  } else {
    sparse.push_back({0, 1.0});
    for (int j = 1; j <= radius; ++j) {
      long e = 4l * j * j;
      if (e > vmax) break;
      double c = (kind == CoordKind::Alternating && (j % 2)) ? -2.0 : 2.0;
      sparse.push_back({int(e), c});
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [e, c] : sparse) {
    for (int v = 0; v + e <= vmax; ++v) {
      double x = in[v];
      if (x != 0.0) out[v + e] += c * x;
    }
  }
}

// C^2 smooth cutoff: 1 on [0,1/2], smoothstep down to 0 at 1.
inline double smooth_cutoff(double x) {
  if (x <= 0.5) return 1.0;
  if (x >= 1.0) return 0.0;
  double y = (x - 0.5) * 2.0;
  return 1.0 - y * y * y * (10.0 - 15.0 * y + 6.0 * y * y);
}

}  // namespace detail

// Direct summation over the box |index| <= radius (shifted coordinates run
// over [-radius+1, radius]).  Integer exponents, dimension <= 6.
inline DirectResult lattice_direct(int m, int n, int p, double s, int radius) {
  if (m < 0 || n < 0 || p < 0 || m + n + p == 0)
    throw std::invalid_argument("lattice_direct: bad exponents");
  int dim = m + n + p;
  if (dim > 6) throw DimensionTooLarge("lattice_direct: dimension > 6");
  if (p == 0 && s <= 0.5 * (m + n) + 0.01)
    throw TailUnbounded("lattice_direct: positive sum needs s > dim/2");

  const int vmax = 4 * radius * radius;
  std::vector<double> acc(vmax + 1, 0.0), tmp(vmax + 1, 0.0);
  acc[0] = 1.0;
  auto fold = [&](detail::CoordKind kind, int count) {
    for (int i = 0; i < count; ++i) {
      detail::accumulate_coord(tmp, acc, kind, radius, vmax);
      std::swap(acc, tmp);
    }
  };
  fold(detail::CoordKind::Shifted, m);
  fold(detail::CoordKind::Plain, n);
  fold(detail::CoordKind::Alternating, p);

  // shells are the integer values of 4Q; the term for shell v is
  // acc[v] * (v/4)^{-s}, origin omitted when present (m == 0)
  auto weighted = [&](int v) { return acc[v] * std::pow(0.25 * v, -s); };

  if (p > 0) {
    // conditionally convergent: smooth (Abel-consistent) cutoff at two
    // scales; their difference bounds the smoothing error
    auto smoothed = [&](double scale) {
      double sum = 0.0;
      int V = int(vmax * scale);
      for (int v = 1; v <= V; ++v) {
        if (acc[v] == 0.0) continue;
        sum += weighted(v) * detail::smooth_cutoff(double(v) / V);
      }
      return sum;
    };
    double s1 = smoothed(1.0);
    double s2 = smoothed(0.72);
    return {s1, std::abs(s1 - s2) + 1e-12 * std::abs(s1)};
  }

  // absolutely convergent positive sum: partial sums with Richardson
  // extrapolation in V^{dim/2 - s}
  double e = s - 0.5 * dim;
  std::vector<double> cum(vmax + 1, 0.0);
  double run = 0.0;
  for (int v = 1; v <= vmax; ++v) {
    if (acc[v] != 0.0) run += weighted(v);
    cum[v] = run;
  }
  auto extrap2 = [&](int V1, int V2) {
    double S1 = cum[V1], S2 = cum[V2];
    double r = std::pow(double(V1) / V2, e);
    return S1 + (S1 - S2) / (r - 1.0);
  };
  double a = extrap2(vmax, int(0.64 * vmax));
  double b = extrap2(int(0.8 * vmax), int(0.5 * vmax));
  return {a, std::abs(a - b) + 0.02 * std::abs(a - cum[vmax])};
}

inline DirectResult lattice_direct(const LatticeSumSpec& spec, double s,
                                   int radius) {
  if (!spec.integer_exponents())
    throw std::invalid_argument("lattice_direct: integer exponents only");
  return lattice_direct(int(spec.m.get_d()), int(spec.n.get_d()),
                        int(spec.p.get_d()), s, radius);
}

// ---------------------------------------------------------------------------
// Mellin / K-integral route
// ---------------------------------------------------------------------------

// K-integral spec of the continuation of L(m,n,p;s):
//   k^{(m-2)/2} k'^{(p-4)/2} K^{(m+n+p-2s-2)/2} K'^{s-1}
// (or the Poisson-dual form with m <-> p, K <-> K').
inline KIntegralSpec lattice_kintegrand(const Rat& m, const Rat& n,
                                        const Rat& p, bool dual = false) {
  Rat mm = dual ? p : m;
  Rat pp = dual ? m : p;
  Rat w = m + n + p;
  KIntegrandTerm t;
  t.alpha = LinS::constant((mm - 2) / 2);
  t.beta = LinS::constant((pp - 4) / 2);
  if (!dual) {
    t.gammaK = LinS::affine((w - 2) / 2, Rat(-1));
    t.deltaKp = LinS::affine(Rat(-1), Rat(1));
  } else {
    t.deltaKp = LinS::affine((w - 2) / 2, Rat(-1));
    t.gammaK = LinS::affine(Rat(-1), Rat(1));
  }
  return KIntegralSpec{{t}};
}

// prefactor pi^s/Gamma(s) (2/pi)^{(m+n+p-2)/2}
inline double lattice_prefactor(const Rat& m, const Rat& n, const Rat& p,
                                double s) {
  double w2 = 0.5 * (to_double(m + n + p) - 2.0);
  return std::pow(kPi, s) / gamma_fn(s) * std::pow(2.0 / kPi, w2);
}

// L(m,n,p;s) via the 1-D representation; requires m > 0 (m = 0 needs the
// regularized transform below).  With check_dual, both representations are
// evaluated and must agree within 2*tol.
inline double lattice_mellin(const LatticeSumSpec& spec, double s, double tol,
                             bool check_dual = false) {
  if (spec.m <= 0)
    throw IntegrabilityError("lattice_mellin: m = 0 needs the regularized transform");
  double pf = lattice_prefactor(spec.m, spec.n, spec.p, s);
  auto r = k_integral(lattice_kintegrand(spec.m, spec.n, spec.p), s, tol);
  double v = pf * r.value;
  if (check_dual) {
    if (spec.p <= 0)
      throw IntegrabilityError("lattice_mellin: dual form needs p > 0");
    auto rd = k_integral(lattice_kintegrand(spec.m, spec.n, spec.p, true), s, tol);
    double vd = pf * rd.value;
    if (std::abs(v - vd) > 2.0 * tol * std::max({std::abs(v), std::abs(vd), 1.0}))
      throw NoConvergence("lattice_mellin: dual forms disagree", v, vd);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Regularized (m = 0) transform and general theta-product Mellin
// ---------------------------------------------------------------------------

struct ThetaPow {
  int index;   // 2, 3 or 4
  int tscale;  // theta_i(e^{-tscale * t})
  double power;
};

// M_s[ prod theta - (1 if minus_one) ].  With minus_one the product must
// contain only theta_3/theta_4 factors; it is then formed as
// expm1(sum pow*log1p(theta_m1)) so the far tail keeps full accuracy.
inline double theta_product_mellin(const std::vector<ThetaPow>& factors,
                                   bool minus_one, double s, double tol) {
  for (const auto& f : factors) {
    if (f.index < 2 || f.index > 4 || f.tscale < 1)
      throw std::invalid_argument("theta_product_mellin: bad factor");
    if (minus_one && f.index == 2)
      throw std::invalid_argument(
          "theta_product_mellin: minus_one requires theta_3/theta_4 factors");
  }
  // log-space integrand with the t^{s-1} power folded in, so the 1/t-power
  // growth of the thetas at t -> 0 and the exponential tails at t -> inf
  // never pass through an intermediate overflow
  auto f = [&](double t) -> double {
    double lg = (s - 1.0) * std::log(t);
    if (minus_one) {
      double lp = 0.0;
      for (const auto& fc : factors) {
        double m1 = (fc.index == 3) ? theta3_m1_exp(fc.tscale * t)
                                    : theta4_m1_exp(fc.tscale * t);
        lp += fc.power * std::log1p(m1);
      }
      if (lp > 36.0) return std::exp(lp + lg);  // expm1 == exp here
      double em = std::expm1(lp);
      if (em == 0.0) return 0.0;
      double v = std::exp(std::log(std::abs(em)) + lg);
      return em > 0 ? v : -v;
    }
    for (const auto& fc : factors) {
      double th = theta_exp(fc.index, fc.tscale * t);
      if (th == 0.0) return 0.0;
      lg += fc.power * std::log(th);
    }
    return std::exp(lg);
  };
  auto r = integrate_0inf(f, tol);
  if (!r.converged)
    throw NoConvergence("theta_product_mellin: no convergence", r.value, r.error);
  return r.value / gamma_fn(s);
}

// M_s[theta_3^n theta_4^p - 1]; equals the origin-omitted direct sum.
inline double lattice_mellin_regularized(int n, int p, double s, double tol) {
  if (n < 0 || p < 0 || n + p < 1)
    throw std::invalid_argument("lattice_mellin_regularized: need n + p >= 1");
  std::vector<ThetaPow> fs;
  if (n) fs.push_back({3, 1, double(n)});
  if (p) fs.push_back({4, 1, double(p)});
  return theta_product_mellin(fs, true, s, tol);
}

// ---------------------------------------------------------------------------
// Transformation algebra
// ---------------------------------------------------------------------------

struct EquivalentSum {
  LatticeSumSpec spec;
  double s;
  double scale;  // the common value equals scale * L(spec; s)
};

// L(2m,n,n;s) = 2^{m-s} L(m,m,2n;s)
//             = pi^{2s-m-n} Gamma(m+n-s)/Gamma(s) L(n,n,2m;m+n-s).
// The third scale carries a Gamma ratio that the source display drops; it
// follows from matching the two 1-D representations, whose pi^s/Gamma(s)
// prefactors move with s.
inline std::vector<EquivalentSum> prop2_equivalents(const Rat& m, const Rat& n,
                                                    double s) {
  if (m <= 0 && n <= 0)
    throw std::invalid_argument("prop2_equivalents: need positive parameters");
  double md = to_double(m), nd = to_double(n);
  double sr = md + nd - s;
  return {
      {{m * 2, n, n}, s, 1.0},
      {{m, m, n * 2}, s, std::pow(2.0, md - s)},
      {{n, n, m * 2}, sr,
       std::pow(kPi, 2 * s - md - nd) * gamma_fn(sr) / gamma_fn(s)},
  };
}

// pi^{(m+n+p-4s)/2} Gamma(s)/Gamma((m+n+p-2s)/2) L(m,n,p;s)
//   = L(p,n,m;(m+n+p-2s)/2)   (same Gamma-ratio correction)
inline EquivalentSum reflection_equivalent(const LatticeSumSpec& spec, double s) {
  double w = spec.dimension();
  double sr = 0.5 * (w - 2 * s);
  return {{spec.p, spec.n, spec.m}, sr,
          std::pow(kPi, 0.5 * (w - 4 * s)) * gamma_fn(s) / gamma_fn(sr)};
}

// residual of L(m,n,p+4;s) - L(m,n+4,p;s) + L(m+4,n,p;s) = 0, relative to
// the largest of the three terms
inline double jacobi_linear_relation_check(const Rat& m, const Rat& n,
                                           const Rat& p, double s, double tol) {
  if (m <= 0 || m + n + p == 0)
    throw std::invalid_argument("jacobi_linear_relation_check: need m > 0");
  double a = lattice_mellin({m, n, p + 4}, s, tol);
  double b = lattice_mellin({m, n + 4, p}, s, tol);
  double c = lattice_mellin({m + 4, n, p}, s, tol);
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  return std::abs(a - b + c) / scale;
}

}  // namespace ellsum

#endif  // ELLSUM_LATTICE_HPP
