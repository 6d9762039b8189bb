#ifndef ELLSUM_MODULAR_HPP
#define ELLSUM_MODULAR_HPP

// The odd-power-of-K families: theta power sums, the harmonic-numerator
// lattice functions f_{4p} (whose E parts cancel), their Mellin step at
// s = 4p, and the sqrt(2)-lattice variant that ships K^{2p-1} integrals
// against Gamma(1/8)Gamma(3/8) constants.

#include <array>
#include <stdexcept>

#include "ellsum/eisenstein.hpp"
#include "ellsum/keexpr.hpp"
#include "ellsum/poly.hpp"
#include "ellsum/rational.hpp"

namespace ellsum {

class EResidue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// sum_n n^{2b} q^{n^2} as a KEExpr: b-fold q d/dq of theta3 = sqrt(2K/pi)
inline KEExpr theta_power_sum(int b) {
  if (b < 0) throw std::invalid_argument("theta_power_sum: b >= 0");
  KEExpr x = KEExpr::term(KMono{1, -1, 1, 0}, RatFun(Rat(1)));
  for (int i = 0; i < b; ++i) x = x.q_ddq();
  return x;
}

struct F4pResult {
  int p;
  Poly G;      // f_{4p}(q) = 2^{2p+1} G(k) K^{4p+1} / pi^{4p+1}
  KEExpr raw;  // the assembled expression (single E-free monomial)
};

// f_{4p}(q) = sum_b C(4p,2b) (-1)^b [sum m^{4p-2b} q^{m^2}][sum n^{2b} q^{n^2}];
// modularity forces every E monomial to cancel and the K powers to collapse
// to K^{4p+1}.
inline F4pResult compute_f4p(int p) {
  if (p < 1) throw std::invalid_argument("compute_f4p: p >= 1");
  KEExpr acc;
  for (int b = 0; b <= 2 * p; ++b) {
    Rat c = Rat(binom(4 * p, 2 * b));
    if (b % 2) c = -c;
    acc = acc + theta_power_sum(2 * p - b) * theta_power_sum(b) * c;
  }
  if (!acc.is_E_free())
    throw EResidue("compute_f4p: E monomials failed to cancel");
  auto single = acc.single();
  if (!single)
    throw EResidue("compute_f4p: K powers failed to collapse");
  const KMono& m = single->first;
  if (m.K2 != 2 * (4 * p + 1) || m.pi2 != -2 * (4 * p + 1) ||
      m.two2 != 4 * p + 2 || m.e != 0)
    throw EResidue("compute_f4p: unexpected monomial weights");
  auto G = single->second.as_poly();
  if (!G) throw EResidue("compute_f4p: coefficient not a polynomial");
  return {p, *G, acc};
}

// int_0^1 k g(k) K'^{4p-1} dk = constant * Gamma(1/4)^{8p} / pi^{2p}
struct Thm42Identity {
  int p;
  Poly g_even;   // even part: the integrand is k * g_even(k)
  Rat constant;  // rational multiplier of Gamma(1/4)^{8p} pi^{-2p}
};

// Mellin of f_{4p} at s = 4p: the K powers drop out, leaving the K'^{4p-1}
// integral; the lattice side is 2 zeta(4p) E_{4p}(i), an exact rational
// multiple of (E_4 at the lemniscatic point)^p since E_6 vanishes there.
inline Thm42Identity compute_gp(int p) {
  F4pResult f = compute_f4p(p);
  // G = k k'^2 * (k * g_even): divide by k^2 (1 - k^2)
  Poly div({Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1)});
  auto g = f.G.divide_exact(div);
  if (!g) throw EResidue("compute_gp: G not divisible by k^2 k'^2");
  if (!g->is_even()) throw EResidue("compute_gp: g not even");

  // E_{4p}(i) = c_p E_4(i)^p with E_4(i) = 3 Gamma(1/4)^8/(64 pi^6)
  Rat c_p;
  if (p == 1) {
    c_p = 1;
  } else {
    WeightedPoly P = eisenstein_as_E4E6(4 * p);
    auto it = P.mono.find({p, 0});
    if (it == P.mono.end())
      throw EResidue("compute_gp: no pure E4 power in the basis");
    c_p = it->second;
  }
  // lattice side: 2 zeta(4p) c_p (3/64)^p Gamma^{8p} pi^{4p-6p}
  Rat lattice_rat = Rat(2) * zeta_even_rational(4 * p) * c_p *
                    pow_rat(Rat(3, 64), p);
  // integral side: (pi^{4p+1} / (2 Gamma(4p))) * 2^{2p+1} pi^{-(4p+1)} *
  //                int k g_even K'^{4p-1}
  Int gamma_4p = 1;
  for (int i = 2; i < 4 * p; ++i) gamma_4p *= i;
  Rat integral_scale = pow_rat(Rat(2), 2 * p + 1) / (Rat(2) * Rat(gamma_4p));
  // int = lattice / scale, pi powers: lattice pi^{-2p} * Gamma-power
  Rat full = lattice_rat / integral_scale;
  // normalize the displayed polynomial
  Rat c = g->content();
  if (g->coeff(g->valuation()) < 0) c = -c;
  Poly g_even = *g * (Rat(1) / c);
  return {p, g_even, full * c};
}

// ---------------------------------------------------------------------------
// Quadratic field Q(sqrt2) values for the singular-point constants
// ---------------------------------------------------------------------------

struct Quad2 {
  Rat a, b;  // a + b sqrt(2)
  Quad2 operator+(const Quad2& o) const { return {a + o.a, b + o.b}; }
  Quad2 operator-(const Quad2& o) const { return {a - o.a, b - o.b}; }
  Quad2 operator*(const Quad2& o) const {
    return {a * o.a + Rat(2) * b * o.b, a * o.b + b * o.a};
  }
  Quad2 operator*(const Rat& s) const { return {a * s, b * s}; }
  Quad2 inverse() const {
    Rat n = a * a - Rat(2) * b * b;
    return {a / n, -b / n};
  }
  bool operator==(const Quad2& o) const { return a == o.a && b == o.b; }
  double value() const { return to_double(a) + to_double(b) * std::sqrt(2.0); }
  Quad2 pow(int e) const {
    Quad2 acc{Rat(1), Rat(0)};
    Quad2 base = e >= 0 ? *this : inverse();
    for (int i = 0; i < std::abs(e); ++i) acc = acc * base;
    return acc;
  }
};

// ---------------------------------------------------------------------------
// Tower ring Q(k)[w, u], w = k', u = sqrt(1 + k'), for the theta3(q^2) sums
// ---------------------------------------------------------------------------

struct Tower {
  RatFun a, b, c, d;  // a + b w + c u + d w u

  static Tower zero() { return {}; }
  static Tower one() { return {RatFun(Rat(1)), {}, {}, {}}; }
  static Tower u_unit() { return {{}, {}, RatFun(Rat(1)), {}}; }
  bool is_zero() const {
    return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
  }
  Tower operator+(const Tower& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Tower operator-(const Tower& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Tower operator-() const { return {-a, -b, -c, -d}; }
  Tower scale(const RatFun& s) const {
    return {a * s, b * s, c * s, d * s};
  }
  Tower operator*(const Tower& o) const {
    static const RatFun W =
        RatFun::from_poly(Poly({Rat(1), Rat(0), Rat(-1)}));  // 1 - k^2
    // basis products: w^2 = W, u^2 = 1 + w, (wu)^2 = W(1+w),
    // u*wu = W + w, w*wu = W u
    Tower r;
    r.a = a * o.a + W * (b * o.b) + c * o.c + W * (c * o.d + d * o.c) +
          W * (d * o.d);
    r.b = a * o.b + b * o.a + c * o.c + (c * o.d + d * o.c) + W * (d * o.d);
    r.c = a * o.c + c * o.a + W * (b * o.d + d * o.b);
    r.d = a * o.d + d * o.a + b * o.c + c * o.b;
    return r;
  }
  // d/dk with w' = -k w / W and u' = u/(2k) - w u/(2kW)
  Tower derivative() const {
    static const RatFun k = RatFun::from_poly(Poly::variable());
    static const RatFun W =
        RatFun::from_poly(Poly({Rat(1), Rat(0), Rat(-1)}));
    RatFun inv2k = RatFun(Poly(Rat(1)), Poly({Rat(0), Rat(2)}));
    RatFun k_over_W = k / W;
    Tower r;
    r.a = a.derivative();
    r.b = b.derivative() - b * k_over_W;
    r.c = c.derivative() + c * inv2k - d * inv2k;
    r.d = d.derivative() - c * inv2k / W - d * k_over_W + d * inv2k;
    return r;
  }
  double eval(double kv) const {
    double w = std::sqrt((1 - kv) * (1 + kv));
    double u = std::sqrt(1 + w);
    return a.eval(kv) + b.eval(kv) * w + c.eval(kv) * u + d.eval(kv) * w * u;
  }
};

// KEExpr with tower coefficients (for expressions containing sqrt(1+k'))
class KE2Expr {
 public:
  KE2Expr() = default;
  static KE2Expr term(KMono m, Tower t) {
    KE2Expr x;
    if (!t.is_zero()) x.t_[m] = std::move(t);
    return x;
  }
  static KE2Expr embed(const KEExpr& e) {
    KE2Expr x;
    for (const auto& [m, R] : e.terms())
      x.add(m, Tower{R, {}, {}, {}});
    return x;
  }

  const std::map<KMono, Tower>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  KE2Expr operator+(const KE2Expr& o) const {
    KE2Expr r = *this;
    for (const auto& [m, t] : o.t_) r.add(m, t);
    return r;
  }
  KE2Expr operator*(const KE2Expr& o) const {
    KE2Expr r;
    for (const auto& [m1, t1] : t_)
      for (const auto& [m2, t2] : o.t_)
        r.add(KMono{m1.two2 + m2.two2, m1.pi2 + m2.pi2, m1.K2 + m2.K2,
                    m1.e + m2.e},
              t1 * t2);
    return r;
  }
  KE2Expr operator*(const Rat& s) const {
    KE2Expr r = *this;
    for (auto& [m, t] : r.t_) t = t.scale(RatFun(s));
    return r;
  }

  bool is_E_free() const {
    for (const auto& [m, t] : t_)
      if (m.e != 0) return false;
    return true;
  }
  std::optional<std::pair<KMono, Tower>> single() const {
    if (t_.size() != 1) return std::nullopt;
    return *t_.begin();
  }

  KE2Expr q_ddq() const {
    static const RatFun k = RatFun::from_poly(Poly::variable());
    static const RatFun W =
        RatFun::from_poly(Poly({Rat(1), Rat(0), Rat(-1)}));
    KE2Expr r;
    for (const auto& [m, T] : t_) {
      KMono base{m.two2 + 2, m.pi2 - 4, m.K2 + 4, m.e};
      r.add(base, T.derivative().scale(k * W));
      if (m.K2 != 0) {
        Rat half_c = Rat(m.K2, 2);
        r.add(KMono{m.two2 + 2, m.pi2 - 4, m.K2 + 2, m.e + 1},
              T.scale(RatFun(half_c)));
        r.add(base, (-T).scale(RatFun(half_c) * W));
      }
      if (m.e != 0) {
        Rat ec = Rat(m.e);
        r.add(base, T.scale(RatFun(ec) * W));
        r.add(KMono{m.two2 + 2, m.pi2 - 4, m.K2 + 6, m.e - 1},
              (-T).scale(RatFun(ec) * W));
      }
    }
    return r;
  }

  double eval(double kv) const {
    double K = ellint_K(kv), E = ellint_E(kv);
    double acc = 0;
    for (const auto& [m, T] : t_) {
      double v = T.eval(kv) * std::pow(2.0, 0.5 * m.two2) *
                 std::pow(kPi, 0.5 * m.pi2) * std::pow(K, 0.5 * m.K2);
      for (int i = 0; i < m.e; ++i) v *= E;
      acc += v;
    }
    return acc;
  }

 private:
  void add(const KMono& m, const Tower& t) {
    if (t.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_[m] = t;
    } else {
      it->second = it->second + t;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  std::map<KMono, Tower> t_;
};

// theta3(q^2) = sqrt((1+k') K / pi) = u sqrt(K/pi)
inline KE2Expr theta3_q2_expr() {
  return KE2Expr::term(KMono{0, -1, 1, 0}, Tower::u_unit());
}

// sum_m m^{2b} q^{2 m^2} = 2^{-b} (q d/dq)^b theta3(q^2)
inline KE2Expr theta3_q2_power_sum(int b) {
  KE2Expr x = theta3_q2_expr();
  for (int i = 0; i < b; ++i) x = x.q_ddq();
  return x * pow_rat(Rat(1, 2), b);
}

namespace detail {

// substitute k -> k' into a rational function: returns (even, odd) parts
// e(k) + o(k) w after reducing w^2 = 1 - k^2 and rationalizing denominators
inline std::pair<RatFun, RatFun> ratfun_at_complement(const RatFun& R) {
  Poly W({Rat(1), Rat(0), Rat(-1)});
  auto eval_poly = [&](const Poly& P) -> std::pair<Poly, Poly> {
    // P(w) = Pe(W-composed) + w * Po(W-composed)
    auto [pe, po] = P.even_odd_split();
    auto even_in_w = [&](const Poly& q) {
      // q has only even powers; q(w) = qhalf(w^2) = qhalf(1-k^2)
      std::vector<Rat> h(q.degree() / 2 + 1);
      for (int i = 0; i <= q.degree(); i += 2) h[i / 2] = q.coeff(i);
      return Poly(std::move(h)).compose(W);
    };
    return {even_in_w(pe), even_in_w(po)};
  };
  auto [ne, no] = eval_poly(R.num());
  auto [de, dо] = eval_poly(R.den());
  // 1/(de + w do) = (de - w do) / (de^2 - W do^2)
  Poly denom = de * de - W * dо * dо;
  Poly re = ne * de - W * no * dо;
  Poly ro = no * de - ne * dо;
  return {RatFun(re, denom), RatFun(ro, denom)};
}

}  // namespace detail

// the mirror k <-> k' of a tower element; afterwards 'u' denotes sqrt(1+k)
inline Tower tower_mirror(const Tower& t) {
  static const RatFun k = RatFun::from_poly(Poly::variable());
  auto [ae, ao] = detail::ratfun_at_complement(t.a);
  auto [be, bo] = detail::ratfun_at_complement(t.b);
  auto [ce, co] = detail::ratfun_at_complement(t.c);
  auto [de, do_] = detail::ratfun_at_complement(t.d);
  // a(k') + b(k') k + c(k') u + d(k') k u
  Tower r;
  r.a = ae + k * be;
  r.b = ao + k * bo;
  r.c = ce + k * de;
  r.d = co + k * do_;
  return r;
}

// multiply a tower element by w (used for the mirror jacobian k/k')
inline Tower tower_times_w(const Tower& t) {
  static const RatFun W = RatFun::from_poly(Poly({Rat(1), Rat(0), Rat(-1)}));
  return {W * t.b, t.a, W * t.d, t.c};
}

// sqrt2-lattice family: g(q) = sum_{m,n} Re[(n - sqrt2 i m)^{2p}] q^{n^2+2m^2}
// = G(k,k',u) K^{2p+1}; the Mellin step at s = 2p gives
//   int_0^1 P(k)/sqrt(1+k) K^{2p-1} dk
//     = constant * Gamma(1/8)^{2p} Gamma(3/8)^{2p} / pi^p.
struct Rem44Identity {
  int p;
  Poly P;          // numerator polynomial over sqrt(1+k)
  Quad2 constant;  // multiplier of Gamma(1/8)^{2p} Gamma(3/8)^{2p} pi^{-p}
};

inline Rem44Identity rem44_identity(int p) {
  if (p < 2 || p > 4)
    throw std::invalid_argument("rem44_identity: generated for p = 2, 3, 4");
  // assemble g(q): Re[(n - sqrt2 i m)^{2p}] = sum_j C(2p,2j)(-2)^j n^{2(p-j)} m^{2j}
  KE2Expr g;
  for (int j = 0; j <= p; ++j) {
    Rat c = Rat(binom(2 * p, 2 * j)) * pow_rat(Rat(-2), j);
    g = g + KE2Expr::embed(theta_power_sum(p - j)) * theta3_q2_power_sum(j) * c;
  }
  if (!g.is_E_free()) throw EResidue("rem44_identity: E residue");
  auto single = g.single();
  if (!single) throw EResidue("rem44_identity: monomial collapse failed");
  const KMono& m = single->first;
  if (m.K2 != 2 * (2 * p + 1) || m.pi2 != -2 * (2 * p + 1) ||
      m.two2 != 2 * p + 1)
    throw EResidue("rem44_identity: unexpected weights");

  // H = G / (k k'^2); mirror; multiply by the jacobian k/k'
  static const RatFun kW = RatFun(
      Poly({Rat(0), Rat(1)}) * Poly({Rat(1), Rat(0), Rat(-1)}), Poly(Rat(1)));
  RatFun inv_kW = RatFun(Rat(1)) / kW;
  Tower H = single->second.scale(inv_kW);
  Tower M = tower_mirror(H);
  // times k/w = k * w / W
  static const RatFun k_over_W = RatFun(
      Poly({Rat(0), Rat(1)}), Poly({Rat(1), Rat(0), Rat(-1)}));
  Tower R = tower_times_w(M).scale(k_over_W);
  // expect pure u-component P(k)/(1+k)
  if (!R.a.is_zero() || !R.b.is_zero() || !R.d.is_zero())
    throw EResidue("rem44_identity: mirrored integrand not of the stated shape");
  RatFun cu = R.c * RatFun::from_poly(Poly({Rat(1), Rat(1)}));  // * (1+k)
  auto P = cu.as_poly();
  if (!P) throw EResidue("rem44_identity: numerator not polynomial");

  // lattice side: sum' (n + sqrt2 i m)^{-2p} = 2 zeta(2p) E_{2p}(e^{-2 sqrt2 pi});
  // at k0 = sqrt2 - 1: K0^2 = (2+sqrt2)/(128 pi) Gamma(1/8)^2 Gamma(3/8)^2
  Quad2 k0sq{Rat(3), Rat(-2)};                  // k0^2 = 3 - 2 sqrt2
  Quad2 K0sq_rat{Rat(2, 128), Rat(1, 128)};     // (2 + sqrt2)/128
  Quad2 lattice;
  if (p == 2) {
    // E4 = (16/pi^4)(1 - k^2 + k^4) K^4
    Quad2 poly = Quad2{Rat(1), Rat(0)} - k0sq + k0sq * k0sq;
    lattice = poly * K0sq_rat.pow(2) * Rat(16) * zeta_even_rational(4) * Rat(2);
  } else if (p == 3) {
    // E6 = (32/pi^6)(1+k^2)(1-2k^2)(2-k^2) K^6
    Quad2 one{Rat(1), Rat(0)}, two{Rat(2), Rat(0)};
    Quad2 poly = (one + k0sq) * (one - k0sq * Rat(2)) * (two - k0sq);
    lattice = poly * K0sq_rat.pow(3) * Rat(32) * zeta_even_rational(6) * Rat(2);
  } else {
    // E8 = E4^2
    Quad2 one{Rat(1), Rat(0)};
    Quad2 poly = one - k0sq + k0sq * k0sq;
    lattice =
        poly * poly * K0sq_rat.pow(4) * Rat(256) * zeta_even_rational(8) * Rat(2);
  }
  // pi bookkeeping: zeta(2p) gives pi^{2p}; E-form pi^{-2p}; K0^{2p} gives
  // pi^{-p}: lattice = (quad2) Gamma^{2p}Gamma^{2p} pi^{-p}.
  // integral side: M_{2p}[g] = (pi^{2p+1}/(2 Gamma(2p))) 2^{(2p+1)/2}
  //                pi^{-(2p+1)} int P/sqrt(1+k) K^{2p-1}
  // so int = lattice * 2 Gamma(2p) / 2^{(2p+1)/2}, with pi^{-p} from lattice
  // and the sqrt2 from 2^{(2p+1)/2} folded into Quad2.
  Int gamma_2p = 1;
  for (int i = 2; i < 2 * p; ++i) gamma_2p *= i;
  // 2^{-(2p+1)/2} = 2^{-p} / sqrt2 = 2^{-p} * (sqrt2 / 2)
  Quad2 inv_sqrt2{Rat(0), Rat(1, 2)};
  Quad2 constant = lattice * Rat(2) * Rat(gamma_2p) *
                   pow_rat(Rat(1, 2), p) * inv_sqrt2;
  // displayed polynomial normalization
  Rat c = P->content();
  if (P->coeff(P->valuation()) < 0) c = -c;
  Poly Pn = *P * (Rat(1) / c);
  return {p, Pn, constant * (Rat(1) / c)};
}

}  // namespace ellsum

#endif  // ELLSUM_MODULAR_HPP
