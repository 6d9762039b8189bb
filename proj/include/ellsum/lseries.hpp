#ifndef ELLSUM_LSERIES_HPP
#define ELLSUM_LSERIES_HPP

// Dirichlet series with real characters: zeta, beta, lambda, eta and the
// L_{+-d} series, their values at negative integers via generalized
// Bernoulli numbers, the zeta functional equation for negative real
// arguments, and regularized pole-zero products.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsum/rational.hpp"
#include "ellsum/specfun.hpp"

namespace ellsum {

enum class CharId {
  Zeta,    // principal; pole at s = 1
  Eta,     // (1-2^{1-s}) zeta(s)
  Lambda,  // (1-2^{-s}) zeta(s); pole at s = 1
  Beta,    // chi_{-4}
  Lm3,
  Lm8,
  L8,
  L12,
  Lm24,
  L24,
};

struct CharacterId {
  CharId id;
  std::string label;
  unsigned period;
  std::vector<int> sign_pattern;  // indexed by residue 1..period (entry r-1)
  bool principal;
  bool odd;  // chi(-1) = -1
};

inline const CharacterId& character(CharId id) {
  static const std::map<CharId, CharacterId> tbl = [] {
    std::map<CharId, CharacterId> m;
    auto put = [&](CharId id, std::string label, unsigned f,
                   std::vector<int> pat, bool principal, bool odd) {
      m[id] = CharacterId{id, std::move(label), f, std::move(pat), principal,
                          odd};
    };
    put(CharId::Zeta, "ZETA", 1, {1}, true, false);
    put(CharId::Eta, "ETA", 2, {1, -1}, false, false);
    put(CharId::Lambda, "LAMBDA", 2, {1, 0}, false, false);
    put(CharId::Beta, "BETA", 4, {1, 0, -1, 0}, false, true);
    put(CharId::Lm3, "L-3", 3, {1, -1, 0}, false, true);
    put(CharId::Lm8, "L-8", 8, {1, 0, 1, 0, -1, 0, -1, 0}, false, true);
    put(CharId::L8, "L8", 8, {1, 0, -1, 0, -1, 0, 1, 0}, false, false);
    put(CharId::L12, "L12", 12, {1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0}, false,
        false);
    put(CharId::Lm24, "L-24", 24,
        {1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1,  0,
         -1, 0, 0, 0, -1, 0, -1, 0, 0, 0, -1, 0},
        false, true);
    put(CharId::L24, "L24", 24,
        {1, 0, 0, 0, 1, 0, -1, 0, 0, 0, -1, 0,
         -1, 0, 0, 0, -1, 0, 1, 0, 0, 0, 1,  0},
        false, false);
    return m;
  }();
  return tbl.at(id);
}

inline CharId char_from_label(const std::string& label) {
  for (CharId id : {CharId::Zeta, CharId::Eta, CharId::Lambda, CharId::Beta,
                    CharId::Lm3, CharId::Lm8, CharId::L8, CharId::L12,
                    CharId::Lm24, CharId::L24})
    if (character(id).label == label) return id;
  throw std::invalid_argument("unknown character label '" + label + "'");
}

enum class SeriesKind { Finite, Pole, RegularizedLimit };

struct SeriesValue {
  double value;
  SeriesKind kind;
};

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class UnsupportedArgument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonCancelling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Euler-Maclaurin over complete periods: L(chi,s) = sum_{n<=Jf} chi(n)n^{-s}
// + sum_r chi(r) tail(J, r/f).  The integral term is written against the
// zero mean of chi so it stays finite through s = 1 for non-principal
// characters.
inline double lchar_em(const CharacterId& ch, double s) {
  const unsigned f = ch.period;
  const int J = std::max<int>(8, int(72 / f) + 1);
  const int M = 8;  // B_{2i} correction terms
  static const double B2k[8] = {1.0 / 6,  -1.0 / 30,      1.0 / 42, -1.0 / 30,
                                5.0 / 66, -691.0 / 2730, 7.0 / 6,  -3617.0 / 510};
  double head = 0.0;
  for (int j = 0; j < J; ++j)
    for (unsigned r = 1; r <= f; ++r) {
      int c = ch.sign_pattern[r - 1];
      if (c) head += c * std::pow(double(j) * f + r, -s);
    }
  const double Jd = J;
  // integral piece, written against chi's mean so the individual
  // (J+a)^{1-s}/(s-1) poles cancel for zero-mean characters:
  //   f^{1-s} sum_r chi(r) [((J+a)^{1-s} - J^{1-s})/(s-1)]
  // + f^{1-s} (sum_r chi(r)) J^{1-s}/(s-1)
  double int_piece = 0.0;
  int mean = 0;
  for (unsigned r = 1; r <= f; ++r) {
    int c = ch.sign_pattern[r - 1];
    if (!c) continue;
    mean += c;
    double l = std::log1p(double(r) / f / Jd);
    double v;
    if (std::abs((1.0 - s) * l) < 1e-8) {
      v = -l * std::pow(Jd, 1.0 - s) * (1.0 + 0.5 * (1.0 - s) * l);
    } else {
      v = std::pow(Jd, 1.0 - s) * std::expm1((1.0 - s) * l) / (s - 1.0);
    }
    int_piece += c * v;
  }
  if (mean != 0) int_piece += mean * std::pow(Jd, 1.0 - s) / (s - 1.0);
  int_piece *= std::pow(double(f), -s);
  // g(J)/2 - sum_i B_{2i}/(2i)! g^{(2i-1)}(J) for
  // g(x) = f^{-s} sum_r chi(r)(x + r/f)^{-s}
  double corr = 0.0;
  for (unsigned r = 1; r <= f; ++r) {
    int c = ch.sign_pattern[r - 1];
    if (!c) continue;
    double xa = Jd + double(r) / f;
    corr += 0.5 * c * std::pow(xa, -s);
    for (int i = 1; i <= M; ++i) {
      double p = 1.0;
      for (int m = 0; m < 2 * i - 1; ++m) p *= (s + m);
      double fact = 1.0;
      for (int m = 2; m <= 2 * i; ++m) fact *= m;
      corr += c * B2k[i - 1] / fact * p * std::pow(xa, -s - (2 * i - 1));
    }
  }
  return head + int_piece + std::pow(double(f), -s) * corr;
}

// Cohen-Rodriguez Villegas-Zagier acceleration for alternating series
// sum (-1)^n a_n, a_n totally monotone.
inline double cvz_alternating(const std::function<double(int)>& a, int n) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

}  // namespace detail

// Riemann zeta for real s != 1.  Euler-Maclaurin for s > 0; the functional
// equation zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) for
// s <= 0 (exact zeros at negative even integers).
inline double zeta(double s) {
  if (s == 1.0) throw PoleError("zeta: pole at s = 1");
  if (s == 0.0) return -0.5;
  if (s >= 0.5) return detail::lchar_em(character(CharId::Zeta), s);
  double z1 = zeta(1.0 - s);
  double sp = detail::sin_pi(0.5 * s);
  if (sp == 0.0) return 0.0;
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * sp * gamma_fn(1.0 - s) *
         z1;
}

inline double eta_fn(double s) {
  if (s == 1.0) return std::log(2.0);
  return (1.0 - std::pow(2.0, 1.0 - s)) * zeta(s);
}

inline double lambda_fn(double s) {
  if (s == 1.0) throw PoleError("lambda: pole at s = 1");
  return (1.0 - std::pow(2.0, -s)) * zeta(s);
}

// Dirichlet beta via CVZ acceleration (alternating over odd integers).
inline double beta_fn(double s) {
  if (s > 0.0) {
    return detail::cvz_alternating(
        [s](int k) { return std::pow(2.0 * k + 1.0, -s); }, 44);
  }
  // negative arguments: integers only, via generalized Bernoulli below
  throw UnsupportedArgument("beta: s <= 0 handled by lseries_eval");
}

// L(chi, 1-n) = -B_{n,chi}/n with B_{n,chi} = f^{n-1} sum_r chi(r) B_n(r/f).
inline Rat generalized_bernoulli(const CharacterId& ch, unsigned n) {
  Rat acc = 0;
  for (unsigned r = 1; r <= ch.period; ++r) {
    int c = ch.sign_pattern[r - 1];
    if (c) acc += Rat(c) * bernoulli_poly(n, Rat(long(r), long(ch.period)));
  }
  return pow_rat(Rat(long(ch.period)), long(n) - 1) * acc;
}

// L-series evaluation at real s.
//  - s > 0: Euler-Maclaurin block summation (CVZ for beta); 1e-12 or better.
//  - s <= 0 at integers: generalized-Bernoulli functional-equation values.
//  - s < 0 non-integer: only the zeta family (zeta/eta/lambda) continues.
inline SeriesValue lseries_eval(CharId id, double s) {
  const CharacterId& ch = character(id);
  if (id == CharId::Zeta || id == CharId::Eta || id == CharId::Lambda) {
    if (s == 1.0) {
      if (id == CharId::Eta) return {std::log(2.0), SeriesKind::Finite};
      throw PoleError(ch.label + ": pole at s = 1");
    }
    double v = (id == CharId::Zeta)  ? zeta(s)
               : (id == CharId::Eta) ? eta_fn(s)
                                     : lambda_fn(s);
    return {v, SeriesKind::Finite};
  }
  if (s > 0.0) {
    if (id == CharId::Beta) return {beta_fn(s), SeriesKind::Finite};
    return {detail::lchar_em(ch, s), SeriesKind::Finite};
  }
  if (s == std::floor(s)) {
    unsigned n = unsigned(1.0 - s);  // L(1-n) with n >= 1
    Rat v = -generalized_bernoulli(ch, n) / Rat(long(n));
    return {to_double(v), SeriesKind::Finite};
  }
  throw UnsupportedArgument(ch.label +
                            ": negative non-integer argument unsupported");
}

inline double lseries(CharId id, double s) { return lseries_eval(id, s).value; }

// Catalan's constant G = beta(2).
inline double catalan() {
  static const double G = beta_fn(2.0);
  return G;
}

// ---------------------------------------------------------------------------
// Regularized products
// ---------------------------------------------------------------------------

enum class FactorKind { Character, Gamma };

struct RegFactor {
  FactorKind kind;
  CharId id;     // when kind == Character
  double shift;  // evaluated at s0 + shift
};

inline RegFactor char_factor(CharId id, double shift) {
  return RegFactor{FactorKind::Character, id, shift};
}
inline RegFactor gamma_factor(double shift = 0.0) {
  return RegFactor{FactorKind::Gamma, CharId::Zeta, shift};
}

namespace detail {

inline double reg_eval_at(const std::vector<RegFactor>& factors, double s) {
  double prod = 1.0;
  for (const auto& fc : factors) {
    double arg = s + fc.shift;
    if (fc.kind == FactorKind::Gamma)
      prod *= gamma_fn(arg);
    else
      prod *= lseries(fc.id, arg);
  }
  return prod;
}

}  // namespace detail

// lim_{s->s0} prod factors(s), where at most one simple pole is cancelled by
// one simple zero.  Evaluated at s0 +- eps for eps in {1e-4, 1e-5} and
// Richardson-extrapolated in eps^2.
inline double regularized_product(const std::vector<RegFactor>& factors,
                                  double s0) {
  // fast path: no pole at s0
  bool finite = true;
  for (const auto& fc : factors) {
    double arg = s0 + fc.shift;
    if (fc.kind == FactorKind::Gamma) {
      if (arg <= 0.0 && arg == std::floor(arg)) finite = false;
    } else if ((fc.id == CharId::Zeta || fc.id == CharId::Lambda) &&
               arg == 1.0) {
      finite = false;
    }
  }
  if (finite) return detail::reg_eval_at(factors, s0);

  const double e1 = 1e-4, e2 = 1e-5;
  double a1 = 0.5 * (detail::reg_eval_at(factors, s0 + e1) +
                     detail::reg_eval_at(factors, s0 - e1));
  double a2 = 0.5 * (detail::reg_eval_at(factors, s0 + e2) +
                     detail::reg_eval_at(factors, s0 - e2));
  if (!std::isfinite(a1) || !std::isfinite(a2))
    throw NonCancelling("regularized_product: samples not finite");
  double lim = a2 + (a2 - a1) * (e2 * e2) / (e1 * e1 - e2 * e2);
  double agree = std::abs(a1 - a2);
  if (agree > 1e-3 * std::max(1.0, std::abs(a2)))
    throw NonCancelling("regularized_product: eps-samples diverge");
  return lim;
}

}  // namespace ellsum

#endif  // ELLSUM_LSERIES_HPP
