#ifndef ELLSUM_EINTEGRALS_HPP
#define ELLSUM_EINTEGRALS_HPP

// E-integrals by q-differentiation: named base q-identities (a Lambert-type
// series equal to a (k,K,E) expression), the derivation operator that
// differentiates both sides, and the Mellin step that turns the function
// side into a K-integral family with its Dirichlet-product closed form.

#include <functional>
#include <string>
#include <vector>

#include "ellsum/keexpr.hpp"
#include "ellsum/kintegral.hpp"
#include "ellsum/lseries.hpp"
#include "ellsum/qseries.hpp"

namespace ellsum {

struct LambertBase {
  std::string name;
  KEExpr expr;  // the function side
  // exact q-expansion of the series side (for the derivation oracle)
  std::function<QSeries(const Rat&)> series;
  // closed Mellin transform of the series side after r applications of
  // q d/dq: rational * 2^{a+bs} * prod L(chi_i, s + shift_i)
  struct MellinClosed {
    Rat rational;
    Rat two_c0, two_c1;
    std::vector<std::pair<CharId, Rat>> chars;
  };
  std::function<MellinClosed(int)> mellin;
};

// (8/B_4) sum j^3 (-q)^j/(1-q^{2j}) = 240 k^2 k'^2 K^4 / pi^4
inline LambertBase base_e4case() {
  LambertBase b;
  b.name = "e4case";
  Poly k2kp2({Rat(0), Rat(0), Rat(240), Rat(0), Rat(-240)});
  b.expr = KEExpr::term(KMono{0, -8, 8, 0}, RatFun::from_poly(k2kp2));
  b.series = [](const Rat& order) {
    QSeries s = QSeries::zero(order);
    for (long j = 1; Rat(j) < order; ++j) {
      for (long i = 0; Rat(j * (2 * i + 1)) < order; ++i) {
        Rat c = Rat(-240) * Rat(j) * Rat(j) * Rat(j);
        if (j % 2) c = -c;
        s = s + QSeries::monomial(c, Rat(j * (2 * i + 1)), order);
      }
    }
    return s;
  };
  b.mellin = [](int r) {
    // M_s[(q d/dq)^r series] = 240 eta(s-3-r) lambda(s-r)
    LambertBase::MellinClosed m;
    m.rational = Rat(240);
    m.two_c0 = m.two_c1 = 0;
    m.chars = {{CharId::Eta, Rat(-3 - r)}, {CharId::Lambda, Rat(-r)}};
    return m;
  };
  return b;
}

// theta2^4 = (4/pi^2) k^2 K^2 = 16 sum (2n+1) q^{2n+1} / (1 - q^{4n+2})
inline LambertBase base_theta2_pow4() {
  LambertBase b;
  b.name = "theta2^4";
  b.expr = KEExpr::term(KMono{4, -4, 4, 0},
                        RatFun::from_poly(Poly({Rat(0), Rat(0), Rat(1)})));
  b.series = [](const Rat& order) {
    QSeries s = QSeries::zero(order);
    for (long n = 0; Rat(2 * n + 1) < order; ++n)
      for (long i = 0; Rat((2 * n + 1) * (2 * i + 1)) < order; ++i)
        s = s + QSeries::monomial(Rat(16 * (2 * n + 1)),
                                  Rat((2 * n + 1) * (2 * i + 1)), order);
    return s;
  };
  b.mellin = [](int r) {
    LambertBase::MellinClosed m;
    m.rational = Rat(16);
    m.two_c0 = m.two_c1 = 0;
    m.chars = {{CharId::Lambda, Rat(-1 - r)}, {CharId::Lambda, Rat(-r)}};
    return m;
  };
  return b;
}

// theta2^2 = (2/pi) k K = 4 sum_n q^{n+1/2} / (1 + q^{2n+1})
inline LambertBase base_theta2_sq() {
  LambertBase b;
  b.name = "theta2^2";
  b.expr = KEExpr::term(KMono{2, -2, 2, 0},
                        RatFun::from_poly(Poly::variable()));
  b.series = [](const Rat& order) {
    QSeries s = QSeries::zero(order);
    for (long n = 0; Rat(2 * n + 1, 2) < order; ++n)
      for (long i = 0; Rat((2 * n + 1) * (2 * i + 1), 2) < order; ++i) {
        Rat c = Rat((i % 2) ? -4 : 4);
        s = s + QSeries::monomial(c, Rat((2 * n + 1) * (2 * i + 1), 2), order);
      }
    return s;
  };
  b.mellin = [](int r) {
    // 4 sum (n+1/2)^{r-s} sum (-1)^i (2i+1)^{r-s} = 2^{s-r+2} lambda(s-r) beta(s-r)
    LambertBase::MellinClosed m;
    m.rational = Rat(4);
    m.two_c0 = Rat(-r);
    m.two_c1 = Rat(1);
    m.chars = {{CharId::Lambda, Rat(-r)}, {CharId::Beta, Rat(-r)}};
    return m;
  };
  return b;
}

inline LambertBase base_constant() {
  LambertBase b;
  b.name = "constant";
  b.expr = KEExpr::scalar(Rat(1));
  b.series = [](const Rat& order) { return QSeries::constant(Rat(1), order); };
  b.mellin = [](int) {
    return LambertBase::MellinClosed{Rat(0), Rat(0), Rat(0), {}};
  };
  return b;
}

inline std::vector<LambertBase> lambert_bases() {
  return {base_e4case(), base_theta2_pow4(), base_theta2_sq(),
          base_constant()};
}

inline LambertBase lambert_base(const std::string& name) {
  for (auto& b : lambert_bases())
    if (b.name == name) return b;
  throw std::invalid_argument("unknown base identity '" + name + "'");
}

// Differentiate the function side r times; the series side differentiates
// term-by-term (exponent multiplication), which the tests cross-check.
inline KEExpr derive_E_identity(const KEExpr& base, int times = 1) {
  KEExpr x = base;
  for (int i = 0; i < times; ++i) x = x.q_ddq();
  return x;
}

// A derived identity pushed through the Mellin step:
//   int_0^1 (sum of integrand terms) dk
//     = rational * 2^{two(s)} * pi^{pi(s)} * Gamma(s) * prod L(chi, s+shift)
struct DerivedEIdentity {
  std::string base;
  int derivs;
  KIntegralSpec lhs;
  Rat rational;
  Rat two_c0, two_c1;
  Rat pi_c0, pi_c1;
  std::vector<std::pair<CharId, Rat>> chars;
};

namespace detail {

// factor R = P * k^{a} (1-k^2)^{w} with P coprime to k and 1-k^2; the
// extracted powers go into the exponents where the endpoint analysis (and
// stable evaluation near k = 1) can see them
struct MonoFactored {
  Poly P;
  int a, w;
};

inline MonoFactored factor_monomials(const RatFun& R) {
  Poly num = R.num(), den = R.den();
  Poly k = Poly::variable();
  Poly W({Rat(1), Rat(0), Rat(-1)});
  int a = 0, w = 0;
  for (;;) {
    auto q = den.divide_exact(k);
    if (!q) break;
    den = *q;
    --a;
  }
  for (;;) {
    auto q = den.divide_exact(W);
    if (!q) break;
    den = *q;
    --w;
  }
  if (den.degree() != 0)
    throw std::domain_error(
        "mellin step: denominator not of the form k^a (1-k^2)^b");
  num = num * (Rat(1) / den.coeff(0));
  for (;;) {
    auto q = num.divide_exact(k);
    if (!q) break;
    num = *q;
    ++a;
  }
  for (;;) {
    auto q = num.divide_exact(W);
    if (!q) break;
    num = *q;
    ++w;
  }
  return {num, a, w};
}

}  // namespace detail

inline DerivedEIdentity mellin_step(const LambertBase& base, int derivs) {
  KEExpr X = derive_E_identity(base.expr, derivs);
  DerivedEIdentity out;
  out.base = base.name;
  out.derivs = derivs;
  if (X.is_zero()) {
    out.rational = 0;
    return out;
  }
  // all terms share the 2- and pi-powers (q d/dq shifts them uniformly)
  int two2 = X.terms().begin()->first.two2;
  int pi2 = X.terms().begin()->first.pi2;
  for (const auto& [m, R] : X.terms()) {
    if (m.two2 != two2 || m.pi2 != pi2)
      throw std::domain_error("mellin step: mixed scalar weights");
    auto f = detail::factor_monomials(R);
    KIntegrandTerm t;
    t.coef = Rat(1);
    t.poly = f.P.coeffs();
    t.alpha = LinS::constant(Rat(f.a - 1));
    t.beta = LinS::constant(Rat(2 * f.w - 2));
    t.gammaK = LinS::affine(Rat(m.K2, 2) - 1, Rat(-1));
    t.deltaKp = LinS::affine(Rat(-1), Rat(1));
    t.powE = m.e;
    out.lhs.terms.push_back(t);
  }
  // identity: (pi^{s+1}/(2 Gamma(s))) 2^{two2/2} pi^{pi2/2} * int = closed(s)
  auto closed = base.mellin(derivs);
  out.rational = closed.rational * 2;
  out.two_c0 = closed.two_c0 - Rat(two2, 2);
  out.two_c1 = closed.two_c1;
  out.pi_c0 = Rat(-1) - Rat(pi2, 2);
  out.pi_c1 = Rat(-1);
  out.chars = closed.chars;
  return out;
}

inline double derived_rhs_value(const DerivedEIdentity& id, double s) {
  double v = to_double(id.rational) *
             std::pow(2.0, to_double(id.two_c0) + to_double(id.two_c1) * s) *
             std::pow(kPi, to_double(id.pi_c0) + to_double(id.pi_c1) * s) *
             gamma_fn(s);
  for (const auto& [c, sh] : id.chars) v *= lseries(c, s + to_double(sh));
  return v;
}

// the same value when one factor's pole cancels another's zero at s0
inline double derived_rhs_regularized(const DerivedEIdentity& id, double s0) {
  std::vector<RegFactor> fs;
  fs.push_back(gamma_factor(0));
  for (const auto& [c, sh] : id.chars) fs.push_back(char_factor(c, to_double(sh)));
  double lim = regularized_product(fs, s0);
  return to_double(id.rational) *
         std::pow(2.0, to_double(id.two_c0) + to_double(id.two_c1) * s0) *
         std::pow(kPi, to_double(id.pi_c0) + to_double(id.pi_c1) * s0) * lim;
}

}  // namespace ellsum

#endif  // ELLSUM_EINTEGRALS_HPP
