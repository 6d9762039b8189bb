#ifndef ELLSUM_KINTEGRAL_HPP
#define ELLSUM_KINTEGRAL_HPP

// Integrals over k in (0,1) of products
//   coef * poly(k) * factor * k^a k'^b K^c K'^d E^e E'^f
// with exponents affine in the free parameter s.
//
// Evaluation is in k-space when the binary64 guard band at the endpoints
// provably loses less than the tolerance; otherwise the integral is pulled
// back to the nome line t = pi K'/K (an exact change of variables,
// dk/dt = -2kk'^2K^2/pi^2) where the lost endpoint mass corresponds to
// plain exponential tails.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsum/quadrature.hpp"
#include "ellsum/rational.hpp"
#include "ellsum/specfun.hpp"

namespace ellsum {

class IntegrabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// affine function of s with rational coefficients
struct LinS {
  Rat c0 = Rat(0);
  Rat c1 = Rat(0);
  double at(double s) const { return to_double(c0) + to_double(c1) * s; }
  static LinS constant(const Rat& c) { return {c, Rat(0)}; }
  static LinS affine(const Rat& c0, const Rat& c1) { return {c0, c1}; }
};

// named non-monomial factors appearing in the integral table; each carries
// its vanishing order in k at 0 and in k' at 1
enum class ExtraFactor {
  None,
  OneMinusKp,                // 1 - k'          ~ k^2/2   at 0
  OneMinusKpCubed,           // 1 - k'^3        ~ 3k^2/2  at 0
  SqrtHalfOneMinusKp,        // sqrt((1-k')/2)  ~ k/2     at 0
  OneMinusSqrtHalfOnePlusKp, // 1 - sqrt((1+k')/2) ~ k^2/8 at 0
  InvOnePlusKp,              // 1/(1+k')
  InvSqrtOnePlusK,           // 1/sqrt(1+k)
};

inline int factor_order_at0(ExtraFactor f) {
  switch (f) {
    case ExtraFactor::OneMinusKp:
    case ExtraFactor::OneMinusKpCubed:
    case ExtraFactor::OneMinusSqrtHalfOnePlusKp:
      return 2;
    case ExtraFactor::SqrtHalfOneMinusKp:
      return 1;
    default:
      return 0;
  }
}
inline int factor_order_at1(ExtraFactor) { return 0; }

// evaluated from (k, k') with 1-k' formed as k^2/(1+k')
inline double factor_value(ExtraFactor f, double k, double kp) {
  switch (f) {
    case ExtraFactor::None:
      return 1.0;
    case ExtraFactor::OneMinusKp:
      return k * k / (1.0 + kp);
    case ExtraFactor::OneMinusKpCubed:
      return (k * k / (1.0 + kp)) * (1.0 + kp + kp * kp);
    case ExtraFactor::SqrtHalfOneMinusKp:
      return k / std::sqrt(2.0 * (1.0 + kp));
    case ExtraFactor::OneMinusSqrtHalfOnePlusKp:
      return -std::expm1(0.5 * std::log1p(-0.5 * k * k / (1.0 + kp)));
    case ExtraFactor::InvOnePlusKp:
      return 1.0 / (1.0 + kp);
    case ExtraFactor::InvSqrtOnePlusK:
      return 1.0 / std::sqrt(1.0 + k);
  }
  return 1.0;
}

inline ExtraFactor factor_from_name(const std::string& name) {
  if (name == "none") return ExtraFactor::None;
  if (name == "one_minus_kp") return ExtraFactor::OneMinusKp;
  if (name == "one_minus_kp_cubed") return ExtraFactor::OneMinusKpCubed;
  if (name == "sqrt_half_one_minus_kp") return ExtraFactor::SqrtHalfOneMinusKp;
  if (name == "one_minus_sqrt_half_one_plus_kp")
    return ExtraFactor::OneMinusSqrtHalfOnePlusKp;
  if (name == "inv_one_plus_kp") return ExtraFactor::InvOnePlusKp;
  if (name == "inv_sqrt_one_plus_k") return ExtraFactor::InvSqrtOnePlusK;
  throw std::invalid_argument("unknown integrand factor '" + name + "'");
}

struct KIntegrandTerm {
  Rat coef = Rat(1);
  int two2 = 0;  // coefficient carries 2^{two2/2}
  int pi2 = 0;   // and pi^{pi2/2}
  LinS alpha;    // exponent of k
  LinS beta;     // exponent of k'
  LinS gammaK;   // exponent of K
  LinS deltaKp;  // exponent of K'
  int powE = 0;
  int powEp = 0;
  std::vector<Rat> poly = {Rat(1)};  // polynomial in k
  ExtraFactor factor = ExtraFactor::None;

  double coef_value() const {
    return to_double(coef) * std::pow(2.0, 0.5 * two2) *
           std::pow(kPi, 0.5 * pi2);
  }
  int poly_valuation() const {
    for (size_t i = 0; i < poly.size(); ++i)
      if (poly[i] != 0) return int(i);
    return 0;
  }
  double poly_at(double k) const {
    double acc = 0.0;
    for (size_t i = poly.size(); i-- > 0;) acc = acc * k + to_double(poly[i]);
    return acc;
  }
};

struct KIntegralSpec {
  std::vector<KIntegrandTerm> terms;
};

enum class KIntegralPath { KSpace, NomeLine };

struct EndpointAnalysis {
  bool convergent = true;
  bool k_space_ok = true;
  std::string reason;
};

namespace detail {

// mass of x^a log^L(4/x) over (0, x0), relative to an O(1) integral
inline double guard_mass(double a, double logpow, double x0) {
  double l = std::log(4.0 / x0);
  double lp = std::pow(l, std::max(logpow, 0.0));
  return std::pow(x0, a + 1.0) / (a + 1.0) * lp;
}

}  // namespace detail

inline EndpointAnalysis analyze_k_integrand(const KIntegralSpec& spec,
                                            double s, double tol) {
  EndpointAnalysis out;
  const double x0 = 1e-290;            // guard band in 1-x
  const double kp_min = std::sqrt(2e-290);
  for (const auto& t : spec.terms) {
    double a0 = t.alpha.at(s) + t.poly_valuation() + factor_order_at0(t.factor);
    double d = t.deltaKp.at(s);  // K' ~ log(4/k) at k = 0
    if (a0 < -1.0 - 1e-12) {
      out.convergent = false;
      out.reason = "divergent at k=0 (k-exponent " + std::to_string(a0) + ")";
      return out;
    }
    if (std::abs(a0 + 1.0) <= 1e-12) {
      if (d >= -1.0 - 1e-12) {
        out.convergent = false;
        out.reason = "divergent at k=0 (1/k with K'-exponent >= -1)";
        return out;
      }
      out.k_space_ok = false;  // convergent log-mass beyond the guard band
    } else if (detail::guard_mass(a0, d, x0) > 0.05 * tol) {
      out.k_space_ok = false;
    }
    double b0 = t.beta.at(s) + factor_order_at1(t.factor);
    double g = t.gammaK.at(s);  // K ~ log(4/k') at k = 1
    if (b0 < -2.0 - 1e-12) {
      out.convergent = false;
      out.reason = "divergent at k=1 (k'-exponent " + std::to_string(b0) + ")";
      return out;
    }
    if (std::abs(b0 + 2.0) <= 1e-12) {
      if (g >= -1.0 - 1e-12) {
        out.convergent = false;
        out.reason = "divergent at k=1 (1/k'^2 with K-exponent >= -1)";
        return out;
      }
      out.k_space_ok = false;
    } else if (detail::guard_mass(b0 + 1.0, g, kp_min) > 0.05 * tol) {
      // in the variable k' the measure contributes one extra power
      out.k_space_ok = false;
    }
  }
  return out;
}

namespace detail {

// one term as sign * exp(sum of logs); a zero base with positive exponent
// (exponential endpoint tails) short-circuits to 0 before any overflowing
// counter-factor can turn the product into 0 * inf
inline double log_space_term(double scalar, double k, double kp, double K,
                             double Kp, double E, double Ep, double ea,
                             double eb, double ec, double ed, int pe, int pf) {
  if (scalar == 0.0) return 0.0;
  double lg = std::log(std::abs(scalar));
  struct {
    double base, e;
  } parts[4] = {{k, ea}, {kp, eb}, {K, ec}, {Kp, ed}};
  for (const auto& pr : parts) {
    if (pr.e == 0.0) continue;
    if (pr.base == 0.0) return (pr.e > 0) ? 0.0 : std::numeric_limits<double>::infinity();
    lg += pr.e * std::log(pr.base);
  }
  if (pe) lg += pe * std::log(E);
  if (pf) lg += pf * std::log(Ep);
  double mag = std::exp(lg);
  return scalar > 0 ? mag : -mag;
}

inline double eval_terms_k(const KIntegralSpec& spec, double s, double k,
                           double one_minus_k) {
  EllipticPoint p = elliptic_point(k, one_minus_k);
  double acc = 0.0;
  for (const auto& t : spec.terms) {
    double scalar =
        t.coef_value() * t.poly_at(k) * factor_value(t.factor, k, p.kp);
    acc += log_space_term(scalar, k, p.kp, p.K, p.Kp, p.E, p.Ep,
                          t.alpha.at(s), t.beta.at(s), t.gammaK.at(s),
                          t.deltaKp.at(s), t.powE, t.powEp);
  }
  return acc;
}

// integrand on the nome line with the jacobian's k k'^2 K^2 folded into the
// exponents, so endpoint underflow of k or k' evaluates to the correct limit
inline double eval_terms_t(const KIntegralSpec& spec, double s,
                           const NomePoint& p) {
  double acc = 0.0;
  for (const auto& t : spec.terms) {
    double scalar = t.coef_value() * (2.0 / (kPi * kPi)) * t.poly_at(p.k) *
                    factor_value(t.factor, p.k, p.kp);
    acc += log_space_term(scalar, p.k, p.kp, p.K, p.Kp, p.E, p.Ep,
                          t.alpha.at(s) + 1.0, t.beta.at(s) + 2.0,
                          t.gammaK.at(s) + 2.0, t.deltaKp.at(s), t.powE,
                          t.powEp);
  }
  return acc;
}

}  // namespace detail

struct KIntegralResult {
  double value;
  double error;
  KIntegralPath path;
};

inline KIntegralResult k_integral(const KIntegralSpec& spec, double s,
                                  double tol) {
  EndpointAnalysis an = analyze_k_integrand(spec, s, tol);
  if (!an.convergent) throw IntegrabilityError("k_integral: " + an.reason);
  if (an.k_space_ok) {
    QuadResult r = integrate_01(
        [&](double k, double omk) { return detail::eval_terms_k(spec, s, k, omk); },
        tol);
    if (!r.converged)
      throw NoConvergence("k_integral: tanh-sinh did not converge", r.value,
                          r.error);
    return {r.value, r.error, KIntegralPath::KSpace};
  }
  QuadResult r = integrate_0inf(
      [&](double t) {
        return detail::eval_terms_t(spec, s, nome_point(t));
      },
      tol);
  if (!r.converged)
    throw NoConvergence("k_integral: nome-line quadrature did not converge",
                        r.value, r.error);
  return {r.value, r.error, KIntegralPath::NomeLine};
}

// convenience for fixed-s monomial integrands
inline KIntegrandTerm monomial_term(const Rat& coef, LinS a, LinS b, LinS c,
                                    LinS d) {
  KIntegrandTerm t;
  t.coef = coef;
  t.alpha = a;
  t.beta = b;
  t.gammaK = c;
  t.deltaKp = d;
  return t;
}

}  // namespace ellsum

#endif  // ELLSUM_KINTEGRAL_HPP
