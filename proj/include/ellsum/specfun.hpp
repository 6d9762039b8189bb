#ifndef ELLSUM_SPECFUN_HPP
#define ELLSUM_SPECFUN_HPP

// Complete elliptic integrals, Jacobi theta null values, the nome map,
// Gamma, and generalized hypergeometric series at unit argument.
//
// Everything here is a pure function of its arguments and safe to call
// concurrently.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellsum {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double last = 0, double prev = 0)
      : std::runtime_error(what), last_value(last), prev_value(prev) {}
  double last_value;
  double prev_value;
};

// ---------------------------------------------------------------------------
// Modulus and nome
// ---------------------------------------------------------------------------

// A modulus k in (0,1) together with its complement k' = sqrt(1-k^2).
// k'^2 is always formed as (1-k)(1+k); the two-argument factory lets callers
// that know 1-k to full precision keep that accuracy.
struct Modulus {
  double k;
  double kp;

  static Modulus from_k(double k) {
    if (!(k > 0.0 && k < 1.0)) throw DomainError("modulus: k must be in (0,1)");
    return Modulus{k, std::sqrt((1.0 - k) * (1.0 + k))};
  }
  static Modulus from_k_and_complement_gap(double k, double one_minus_k) {
    if (!(k > 0.0) || !(one_minus_k > 0.0))
      throw DomainError("modulus: k must be in (0,1)");
    return Modulus{k, std::sqrt(one_minus_k * (1.0 + k))};
  }
  static Modulus from_kp(double kp) {
    Modulus m = from_k(kp);
    return Modulus{m.kp, m.k};
  }
};

struct Nome {
  double q;         // exp(-pi*tau_imag)
  double tau_imag;  // K'(k)/K(k) for the generating modulus
  double dq_dk;     // pi^2 q / (2 k k'^2 K^2)
};

// ---------------------------------------------------------------------------
// AGM machinery
// ---------------------------------------------------------------------------

namespace detail {

struct AgmSums {
  double agm;
  double c_sq_weighted;  // sum over n>=0 of 2^{n-1} c_n^2
};

// AGM of (1, b0) with the weighted c_n^2 sum needed for E.  c0_sq is the
// caller-supplied c_0^2 = 1 - b0^2, passed separately so it can be formed
// without cancellation.
inline AgmSums agm_with_sums(double b0, double c0_sq) {
  double a = 1.0, b = b0;
  double csum = 0.5 * c0_sq;
  double pow2 = 0.5;
  double prev_c = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 60; ++iter) {
    double c = 0.5 * (a - b);
    double ac = std::abs(c);
    // converged, or stalled at the rounding floor of the quadratic regime
    if (ac <= 1e-16 * a || (ac < 1e-10 * a && ac >= prev_c)) {
      pow2 *= 2.0;
      csum += pow2 * c * c;
      return {0.5 * (a + b), csum};
    }
    prev_c = ac;
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    csum += pow2 * c * c;
  }
  throw NoConvergence("agm: no convergence in 60 iterations", a, b);
}

inline double agm(double b0) { return agm_with_sums(b0, 0.0).agm; }

}  // namespace detail

// K(k) = pi / (2 agm(1, k')).  Domain [0,1); diverges logarithmically at 1.
inline double ellint_K(double k) {
  if (k == 0.0) return kPi / 2.0;
  if (!(k >= 0.0 && k < 1.0)) {
    if (k >= 1.0) throw std::overflow_error("ellint_K: k -> 1 divergence");
    throw DomainError("ellint_K: k outside [0,1)");
  }
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  if (kp == 0.0) throw std::overflow_error("ellint_K: k -> 1 divergence");
  return kPi / (2.0 * detail::agm(kp));
}

// K'(k) = K(k') computed as pi / (2 agm(1, k)); never forms 1-k^2.
inline double ellint_Kp(double k) {
  if (!(k > 0.0 && k <= 1.0)) {
    if (k == 0.0) throw std::overflow_error("ellint_Kp: k -> 0 divergence");
    throw DomainError("ellint_Kp: k outside (0,1]");
  }
  if (k == 1.0) return kPi / 2.0;
  return kPi / (2.0 * detail::agm(k));
}

// E(k) on [0,1].
inline double ellint_E(double k) {
  if (k == 0.0) return kPi / 2.0;
  if (k == 1.0) return 1.0;
  if (!(k > 0.0 && k < 1.0)) throw DomainError("ellint_E: k outside [0,1]");
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  auto r = detail::agm_with_sums(kp, k * k);
  double K = kPi / (2.0 * r.agm);
  return K * (1.0 - r.c_sq_weighted);
}

// E'(k) = E(k'); c_0^2 = 1 - k'^2 is formed as (1-k)(1+k)... note c_0 = k'
// here, so c_0^2 = (1-k)(1+k).
inline double ellint_Ep(double k) {
  if (k == 1.0) return kPi / 2.0;
  if (k == 0.0) return 1.0;
  if (!(k > 0.0 && k < 1.0)) throw DomainError("ellint_Ep: k outside [0,1]");
  auto r = detail::agm_with_sums(k, (1.0 - k) * (1.0 + k));
  double Kp = kPi / (2.0 * r.agm);
  return Kp * (1.0 - r.c_sq_weighted);
}

struct ComplementaryPair {
  double Kp;
  double Ep;
};

inline ComplementaryPair ellint_complementary(double k) {
  return {ellint_Kp(k), ellint_Ep(k)};
}

// All six elliptic quantities at a modulus given as (k, 1-k), so that
// quadrature nodes hugging k = 1 keep full accuracy (k' is formed from the
// gap, K' from agm(1,k), and the value of k itself is never needed to more
// precision than given).
struct EllipticPoint {
  double k, kp;
  double K, Kp, E, Ep;
};

inline EllipticPoint elliptic_point(double k, double one_minus_k) {
  EllipticPoint p;
  p.k = k;
  p.kp = std::sqrt(one_minus_k * (1.0 + k));
  double k_sq = k * k;
  double kp_sq = one_minus_k * (1.0 + k);
  {
    auto r = detail::agm_with_sums(p.kp, k_sq);
    p.K = kPi / (2.0 * r.agm);
    p.E = p.K * (1.0 - r.c_sq_weighted);
  }
  {
    auto r = detail::agm_with_sums(k, kp_sq);
    p.Kp = kPi / (2.0 * r.agm);
    p.Ep = p.Kp * (1.0 - r.c_sq_weighted);
  }
  return p;
}

// dK/dk = (E - k'^2 K) / (k k'^2)
inline double deriv_K(double k) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("deriv_K: k outside (0,1)");
  double kp2 = (1.0 - k) * (1.0 + k);
  return (ellint_E(k) - kp2 * ellint_K(k)) / (k * kp2);
}

// dE/dk = (E - K) / k
inline double deriv_E(double k) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("deriv_E: k outside (0,1)");
  return (ellint_E(k) - ellint_K(k)) / k;
}

// ---------------------------------------------------------------------------
// Theta null values theta_i(q), i in {2,3,4}
// ---------------------------------------------------------------------------

namespace detail {

// Direct q-series, valid for small q (used with q <= e^{-pi} ~ 0.0432 after
// the modular reduction below, where three terms already reach 1e-18).
inline double theta2_series(double q) {
  // 2 q^{1/4} sum_{n>=0} q^{n(n+1)}; term ratio q^{2n}
  double q2 = q * q;
  double sum = 1.0, term = 1.0, ratio = q2;
  for (int n = 1; n < 64; ++n) {
    term *= ratio;
    ratio *= q2;
    sum += term;
    if (term < 1e-18 * sum && n >= 3) break;
  }
  return 2.0 * std::pow(q, 0.25) * sum;
}

inline double theta34_m1_series(double q, bool alternating) {
  // 2 sum_{n>=1} (+-1)^n q^{n^2}; q^{(n+1)^2} = q^{n^2} * q^{2n+1}
  double q2 = q * q;
  double sum = 0.0;
  double sign = alternating ? -1.0 : 1.0;
  double s = 1.0, qn2 = q, step = q * q2;  // q^{2n+1} at n=1
  for (int n = 1; n < 64; ++n) {
    s *= sign;
    double term = 2.0 * s * qn2;
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && n >= 3) break;
    qn2 *= step;
    step *= q2;
  }
  return sum;
}

}  // namespace detail

// theta_i(e^{-t}) for t > 0.  For t < pi the series in q = e^{-t} converges
// slowly, so the Jacobi imaginary transformation t -> pi^2/t is applied:
//   theta2(e^{-t}) = sqrt(pi/t) theta4(e^{-pi^2/t})
//   theta3(e^{-t}) = sqrt(pi/t) theta3(e^{-pi^2/t})
//   theta4(e^{-t}) = sqrt(pi/t) theta2(e^{-pi^2/t})
inline double theta_exp(int i, double t) {
  if (!(t > 0.0)) throw DomainError("theta_exp: t must be > 0");
  if (i < 2 || i > 4) throw DomainError("theta_exp: index must be 2, 3 or 4");
  if (t >= kPi) {
    double q = std::exp(-t);
    if (i == 2) return detail::theta2_series(q);
    return 1.0 + detail::theta34_m1_series(q, i == 4);
  }
  double tp = kPi * kPi / t;
  double r = std::sqrt(kPi / t);
  double qp = std::exp(-tp);
  if (i == 2) return r * (1.0 + detail::theta34_m1_series(qp, true));
  if (i == 3) return r * (1.0 + detail::theta34_m1_series(qp, false));
  return r * detail::theta2_series(qp);
}

// theta_3(e^{-t}) - 1 and theta_4(e^{-t}) - 1 without the constant-term
// rounding loss (only meaningful gain for t >= pi where the value is near 1).
inline double theta3_m1_exp(double t) {
  if (t >= kPi) return detail::theta34_m1_series(std::exp(-t), false);
  return theta_exp(3, t) - 1.0;
}
inline double theta4_m1_exp(double t) {
  if (t >= kPi) return detail::theta34_m1_series(std::exp(-t), true);
  return theta_exp(4, t) - 1.0;
}

inline double theta(int i, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("theta: q must be in (0,1)");
  return theta_exp(i, -std::log(q));
}

// ---------------------------------------------------------------------------
// Nome map and its inverse
// ---------------------------------------------------------------------------

inline Nome nome(double k) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("nome: k outside (0,1)");
  double K = ellint_K(k);
  double Kp = ellint_Kp(k);
  double tau = Kp / K;
  double q = std::exp(-kPi * tau);
  double kp2 = (1.0 - k) * (1.0 + k);
  double dqdk = kPi * kPi * q / (2.0 * k * kp2 * K * K);
  return Nome{q, tau, dqdk};
}

// k(q) = theta2(q)^2 / theta3(q)^2
inline Modulus modulus_from_nome(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("modulus_from_nome: q outside (0,1)");
  double t = -std::log(q);
  double t2 = theta_exp(2, t), t3 = theta_exp(3, t), t4 = theta_exp(4, t);
  double k = (t2 * t2) / (t3 * t3);
  double kp = (t4 * t4) / (t3 * t3);
  return Modulus{k, kp};
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

namespace detail {

// Lanczos, g = 7, 9 coefficients.
inline double lanczos_sum(double x) {
  static const double c[9] = {
      0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
      771.32342877765313,    -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
  double s = c[0];
  for (int i = 1; i < 9; ++i) s += c[i] / (x + i - 1);
  return s;
}

inline double gamma_positive(double x) {
  // x >= 0.5
  double g = 7.0;
  double base = x + g - 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(base, x - 0.5) * std::exp(-base) *
         lanczos_sum(x);
}

// sin(pi x) with exact zeros at integers.
inline double sin_pi(double x) {
  double n = std::floor(x);
  double r = x - n;
  if (r == 0.0) return 0.0;
  double s = (r <= 0.5) ? std::sin(kPi * r) : std::sin(kPi * (1.0 - r));
  return (std::fmod(n, 2.0) == 0.0) ? s : -s;
}

}  // namespace detail

// Gamma(x) for real x, poles at nonpositive integers.  Reflection is used
// for x < 0.5.
inline double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw DomainError("gamma_fn: pole at nonpositive integer");
  if (x >= 0.5) return detail::gamma_positive(x);
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  double s = detail::sin_pi(x);
  return kPi / (s * detail::gamma_positive(1.0 - x));
}

// ---------------------------------------------------------------------------
// Generalized hypergeometric series pFq at z in [0,1]
// ---------------------------------------------------------------------------

struct PfqResult {
  double value;
  double accuracy;  // declared from agreement of the two summation routes
};

namespace detail {

// Levin u-transform of the partial sums s_0..s_m with terms a_0..a_m,
// remainder estimates w_n = (beta+n) a_{n+1}, evaluated at order m.
inline double levin_u(const std::vector<double>& terms, int kmax) {
  const double beta = 1.0;
  int m = std::min<int>(kmax, int(terms.size()) - 2);
  std::vector<double> psums(m + 2);
  double partial = 0.0;
  for (int j = 0; j <= m + 1; ++j) {
    partial += terms[j];
    psums[j] = partial;
  }
  double nume = 0.0, deno = 0.0, binom = 1.0;
  for (int j = 0; j <= m; ++j) {
    double c = binom;  // (-1)^j C(m,j)
    double ratio = std::pow((beta + j) / (beta + m), m - 1);
    double w = (beta + j) * terms[j + 1];
    if (w == 0.0) break;
    nume += c * ratio * psums[j] / w;
    deno += c * ratio / w;
    binom *= -double(m - j) / double(j + 1);
  }
  if (deno == 0.0) return psums[m];
  return nume / deno;
}

}  // namespace detail

// pFq(a; b; z).  For z = 1 the series is accelerated with a Levin
// u-transform, cross-checked by a raw sum with an Euler-Maclaurin tail on
// the Gamma-interpolated term function; the declared accuracy is the
// disagreement of the two routes.
inline PfqResult hypergeometric_pfq(const std::vector<double>& a,
                                    const std::vector<double>& b, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("pfq: z outside [0,1]");
  if (z == 0.0) return {1.0, 0.0};
  for (double bj : b)
    if (bj <= 0.0 && bj == std::floor(bj))
      throw DomainError("pfq: nonpositive integer lower parameter");

  if (z < 1.0) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
      double r = z;
      for (double ai : a) r *= (ai + n);
      for (double bj : b) r /= (bj + n);
      r /= (n + 1.0);
      term *= r;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) return {sum, 1e-15 * std::abs(sum)};
    }
    throw NoConvergence("pfq: series did not converge for z < 1");
  }

  // z = 1: terms decay like n^{-1-delta}; require delta > 0.
  double delta = 0.0;
  for (double bj : b) delta += bj;
  delta += 1.0;
  for (double ai : a) delta -= ai;
  if (delta <= 0.05)
    throw NoConvergence("pfq: divergent at z = 1 (sum b + 1 - sum a <= 0)");

  const int N = 60;
  std::vector<double> terms(N + 1);
  terms[0] = 1.0;
  for (int n = 0; n < N; ++n) {
    double r = 1.0;
    for (double ai : a) r *= (ai + n);
    for (double bj : b) r /= (bj + n);
    r /= (n + 1.0);
    terms[n + 1] = terms[n] * r;
  }
  // Levin at order 12, with neighbours as a stability estimate (higher
  // orders degrade in binary64).
  double best = detail::levin_u(terms, 12);
  double spread = 0.0;
  for (int kk : {10, 11, 13}) {
    spread = std::max(spread, std::abs(detail::levin_u(terms, kk) - best));
  }

  // Fallback: raw sum to M terms plus integral tail of the
  // Gamma-interpolated term function T(x), via x = M/u substitution.
  const int M = 20000;
  double raw = 0.0, term = 1.0;
  for (int n = 0; n < M; ++n) {
    raw += term;
    double r = 1.0;
    for (double ai : a) r *= (ai + n);
    for (double bj : b) r /= (bj + n);
    r /= (n + 1.0);
    term *= r;
  }
  // log T(x) = sum lgamma(a+x)-lgamma(a) - sum lgamma(b+x)+lgamma(b) - lgamma(1+x)
  auto logT = [&](double x) {
    double v = -std::lgamma(1.0 + x);
    for (double ai : a) v += std::lgamma(ai + x) - std::lgamma(ai);
    for (double bj : b) v -= std::lgamma(bj + x) - std::lgamma(bj);
    return v;
  };
  // tail = sum_{n>=M} T(n) ~ int_{M-1/2}^inf T(x) dx  (midpoint rule; error
  // O(T''), far below the declared-accuracy floor here)
  double a0 = double(M) - 0.5;
  double tail = 0.0;
  {
    // substitute x = a0/u, u in (0,1]; 64-point composite Gauss-ish via
    // simple tanh-sinh light version
    int NN = 400;
    for (int j = 0; j < NN; ++j) {
      double u = (j + 0.5) / NN;
      double x = a0 / u;
      tail += std::exp(logT(x)) * a0 / (u * u) / NN;
    }
  }
  double fallback = raw + tail;
  double acc = std::abs(best - fallback) + spread + 1e-15 * std::abs(best);
  return {best, acc};
}

inline double hypergeometric_pfq_value(const std::vector<double>& a,
                                       const std::vector<double>& b, double z) {
  return hypergeometric_pfq(a, b, z).value;
}

// 2F1(1/2,1/2;1;k^2) convenience used in cross-checks: (2/pi) K(k).

}  // namespace ellsum

#endif  // ELLSUM_SPECFUN_HPP
