#ifndef ELLSUM_KEEXPR_HPP
#define ELLSUM_KEEXPR_HPP

// Exact expressions sum_i 2^{a_i/2} pi^{b_i/2} R_i(k) K^{c_i/2} E^{d_i}
// with rational-function coefficients, closed under the operator
// q d/dq = (2 k k'^2 K^2 / pi^2) d/dk, plus the re-expansion of such an
// expression as an exact q-series (through K = (pi/2) theta3^2 and the
// derived series for E and k).

#include <map>
#include <optional>
#include <stdexcept>

#include "ellsum/poly.hpp"
#include "ellsum/qseries.hpp"
#include "ellsum/specfun.hpp"

namespace ellsum {

struct KMono {
  int two2 = 0;  // 2^{two2/2}
  int pi2 = 0;   // pi^{pi2/2}
  int K2 = 0;    // K^{K2/2}, may be negative
  int e = 0;     // E^e, e >= 0
  auto operator<=>(const KMono&) const = default;
};

class KEExpr {
 public:
  KEExpr() = default;
  static KEExpr term(KMono m, RatFun r) {
    KEExpr x;
    if (!r.is_zero()) x.t_[m] = std::move(r);
    return x;
  }
  static KEExpr scalar(const Rat& c) {
    return term(KMono{}, RatFun(c));
  }

  const std::map<KMono, RatFun>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  KEExpr operator-() const {
    KEExpr r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  KEExpr operator+(const KEExpr& o) const {
    KEExpr r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
  }
  KEExpr operator-(const KEExpr& o) const { return *this + (-o); }
  KEExpr operator*(const KEExpr& o) const {
    KEExpr r;
    for (const auto& [m1, c1] : t_)
      for (const auto& [m2, c2] : o.t_) {
        KMono m{m1.two2 + m2.two2, m1.pi2 + m2.pi2, m1.K2 + m2.K2,
                m1.e + m2.e};
        r.add_term(m, c1 * c2);
      }
    return r;
  }
  KEExpr operator*(const Rat& s) const {
    KEExpr r = *this;
    for (auto& [m, c] : r.t_) c = c * s;
    return r;
  }

  bool is_E_free() const {
    for (const auto& [m, c] : t_)
      if (m.e != 0) return false;
    return true;
  }

  // when the whole expression is a single monomial, return it
  std::optional<std::pair<KMono, RatFun>> single() const {
    if (t_.size() != 1) return std::nullopt;
    return *t_.begin();
  }

  // q d/dq = (2 k k'^2 K^2/pi^2) d/dk using
  //   dK/dk = E/(k k'^2) - K/k,   dE/dk = (E - K)/k
  KEExpr q_ddq() const {
    static const RatFun k = RatFun::from_poly(Poly::variable());
    static const RatFun W =
        RatFun::from_poly(Poly({Rat(1), Rat(0), Rat(-1)}));  // 1 - k^2
    KEExpr r;
    for (const auto& [m, R] : t_) {
      KMono base{m.two2 + 2, m.pi2 - 4, m.K2 + 4, m.e};
      // R'(k) * k W
      r.add_term(base, R.derivative() * k * W);
      if (m.K2 != 0) {
        Rat half_c = Rat(m.K2, 2);
        // + (K2/2) R E K^{..-1} ... -> K2+2 with E+1, and -(K2/2) R W on base
        KMono mE{m.two2 + 2, m.pi2 - 4, m.K2 + 2, m.e + 1};
        r.add_term(mE, R * half_c);
        r.add_term(base, -(R * half_c) * W);
      }
      if (m.e != 0) {
        Rat ec = Rat(m.e);
        r.add_term(base, R * ec * W);
        KMono mK{m.two2 + 2, m.pi2 - 4, m.K2 + 6, m.e - 1};
        r.add_term(mK, -(R * ec) * W);
      }
    }
    return r;
  }

  double eval(double kv) const {
    double acc = 0;
    double K = ellint_K(kv), E = ellint_E(kv);
    for (const auto& [m, R] : t_) {
      double v = R.eval(kv) * std::pow(2.0, 0.5 * m.two2) *
                 std::pow(kPi, 0.5 * m.pi2) * std::pow(K, 0.5 * m.K2);
      for (int i = 0; i < m.e; ++i) v *= E;
      acc += v;
    }
    return acc;
  }

  // Exact q-expansion.  Substitutes K = (pi/2) SK, E = (pi/2) SE,
  // k = theta2^2/theta3^2; requires every term's net pi power
  // pi2/2 + K2/2 + e to vanish and its net 2 power to be an integer.
  QSeries qexpand(const Rat& order) const;

 private:
  void add_term(const KMono& m, const RatFun& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_[m] = c;
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  std::map<KMono, RatFun> t_;
};

namespace detail {

struct QExpandCache {
  QSeries k;    // theta2^2/theta3^2, leading q^{1/2}
  QSeries th3;  // theta3
  QSeries SE;   // E/(pi/2)
};

inline const QExpandCache& qexpand_cache(const Rat& order) {
  static std::map<Rat, QExpandCache> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  QExpandCache c;
  // generous working order: the k-series enters denominators with negative
  // leading exponents, so build with headroom
  Rat work = order + 8;
  QSeries t2 = theta2_qseries(work);
  QSeries t3 = theta3_qseries(work);
  QSeries t4 = theta4_qseries(work);
  c.th3 = t3;
  c.k = (t2 * t2) / (t3 * t3);
  QSeries SK = t3 * t3;
  QSeries kp2 = (t4 * t4 * t4 * t4) / (SK * SK);
  c.SE = (SK.qdq() * Rat(2)) / (SK * SK) + kp2 * SK;
  return cache.emplace(order, std::move(c)).first->second;
}

inline QSeries qexpand_ratfun(const RatFun& R, const QSeries& kq,
                              const Rat& order) {
  auto horner = [&](const Poly& p) {
    QSeries acc = QSeries::zero(order + 8);
    for (int i = p.degree(); i >= 0; --i)
      acc = acc * kq + QSeries::constant(p.coeff(i), order + 8);
    return acc;
  };
  QSeries n = horner(R.num());
  if (R.den().degree() == 0) return n * (Rat(1) / R.den().coeff(0));
  return n / horner(R.den());
}

}  // namespace detail

inline QSeries KEExpr::qexpand(const Rat& order) const {
  const auto& cc = detail::qexpand_cache(order);
  QSeries acc = QSeries::zero(order);
  for (const auto& [m, R] : t_) {
    // K^{K2/2} E^e = (pi/2)^{K2/2+e} th3^{K2} SE^e
    if (m.pi2 + m.K2 + 2 * m.e != 0)
      throw std::domain_error("qexpand: term has residual pi power");
    int two_net = m.two2 - m.K2 - 2 * m.e;
    if (two_net % 2 != 0)
      throw std::domain_error("qexpand: term has residual sqrt(2) factor");
    QSeries v = detail::qexpand_ratfun(R, cc.k, order);
    v = v * cc.th3.pow_int(m.K2);
    if (m.e) v = v * cc.SE.pow_int(m.e);
    v = v * pow_rat(Rat(2), two_net / 2);
    acc = acc + v;
  }
  return acc.truncated(order);
}

}  // namespace ellsum

#endif  // ELLSUM_KEEXPR_HPP
