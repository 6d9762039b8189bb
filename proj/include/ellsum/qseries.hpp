#ifndef ELLSUM_QSERIES_HPP
#define ELLSUM_QSERIES_HPP

// Truncated q-expansions with exact rational coefficients on a rational
// exponent grid offset + j*step (Laurent offsets allowed).  Every series
// carries the exponent bound `order` below which it is exact.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ellsum/rational.hpp"

namespace ellsum {

namespace detail {

inline Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int num, den;
  Rat aa = abs(a), bb = abs(b);
  Int x = aa.get_num() * bb.get_den();
  Int y = bb.get_num() * aa.get_den();
  mpz_gcd(num.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  Rat r(num);
  r /= Rat(aa.get_den() * bb.get_den());
  r.canonicalize();
  return r;
}

}  // namespace detail

class QSeries {
 public:
  QSeries() : offset_(0), step_(1), order_(0) {}

  static QSeries zero(const Rat& order) {
    QSeries s;
    s.order_ = order;
    return s;
  }
  static QSeries constant(const Rat& c, const Rat& order) {
    QSeries s = zero(order);
    if (c != 0 && order > 0) {
      s.c_ = {c};
      s.offset_ = 0;
    }
    return s;
  }
  // c * q^e
  static QSeries monomial(const Rat& c, const Rat& e, const Rat& order) {
    QSeries s = zero(order);
    if (c != 0 && e < order) {
      s.c_ = {c};
      s.offset_ = e;
    }
    return s;
  }

  const Rat& order() const { return order_; }
  const Rat& step() const { return step_; }
  bool is_zero() const {
    for (const auto& c : c_)
      if (c != 0) return false;
    return true;
  }
  // lowest exponent with nonzero coefficient; only valid when !is_zero()
  Rat leading_exponent() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return offset_ + Rat(long(i)) * step_;
    throw std::domain_error("QSeries: leading exponent of zero series");
  }
  Rat leading_coeff() const {
    for (const auto& c : c_)
      if (c != 0) return c;
    throw std::domain_error("QSeries: leading coeff of zero series");
  }

  Rat coeff(const Rat& e) const {
    if (c_.empty()) return Rat(0);
    Rat idx = (e - offset_) / step_;
    if (idx.get_den() != 1 || idx < 0) return Rat(0);
    long i = idx.get_num().get_si();
    return (i < long(c_.size())) ? c_[i] : Rat(0);
  }

  void set_coeff(const Rat& e, const Rat& c) {
    // e must lie on the grid
    Rat idx = (e - offset_) / step_;
    if (idx.get_den() != 1 || idx < 0)
      throw std::domain_error("QSeries: exponent off grid");
    size_t i = size_t(idx.get_num().get_si());
    if (i >= c_.size()) c_.resize(i + 1);
    c_[i] = c;
  }

  QSeries truncated(const Rat& new_order) const {
    QSeries r = *this;
    if (new_order < r.order_) r.order_ = new_order;
    while (!r.c_.empty() &&
           r.offset_ + Rat(long(r.c_.size() - 1)) * r.step_ >= r.order_)
      r.c_.pop_back();
    return r;
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  QSeries operator+(const QSeries& o) const {
    if (is_zero()) {
      QSeries r = o;
      r.order_ = std::min(order_, o.order_, rat_less);
      return r.truncated(r.order_);
    }
    if (o.is_zero()) {
      QSeries r = *this;
      r.order_ = std::min(order_, o.order_, rat_less);
      return r.truncated(r.order_);
    }
    Rat order = min_rat(order_, o.order_);
    Rat off = min_rat(offset_, o.offset_);
    Rat st = detail::rat_gcd(detail::rat_gcd(step_, o.step_),
                             abs(offset_ - o.offset_));
    if (st == 0) st = step_;
    QSeries r = zero(order);
    r.offset_ = off;
    r.step_ = st;
    r.accumulate(*this);
    r.accumulate(o);
    return r.truncated(order);
  }
  QSeries operator-(const QSeries& o) const { return *this + (-o); }

  QSeries operator*(const QSeries& o) const {
    Rat order;
    if (is_zero() || o.is_zero()) {
      // truncation info: zero series acts as O(q^order)
      Rat lead_this = is_zero() ? order_ : leading_exponent();
      Rat lead_o = o.is_zero() ? o.order_ : o.leading_exponent();
      order = min_rat(order_ + lead_o, o.order_ + lead_this);
      return zero(order);
    }
    order = min_rat(order_ + o.leading_exponent(), o.order_ + leading_exponent());
    QSeries r = zero(order);
    r.offset_ = offset_ + o.offset_;
    r.step_ = detail::rat_gcd(step_, o.step_);
    long len = r.len_below(order);
    r.c_.assign(std::max<long>(len, 0), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rat ei = offset_ + Rat(long(i)) * step_;
      for (size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == 0) continue;
        Rat e = ei + o.offset_ + Rat(long(j)) * o.step_;
        if (e >= order) break;
        Rat idx = (e - r.offset_) / r.step_;
        r.c_[size_t(idx.get_num().get_si())] += c_[i] * o.c_[j];
      }
    }
    return r;
  }

  QSeries operator*(const Rat& s) const {
    QSeries r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  // reciprocal of a series with nonzero leading coefficient
  QSeries inverse() const {
    if (is_zero()) throw std::domain_error("QSeries: inverse of zero");
    Rat lead = leading_exponent();
    Rat c0 = leading_coeff();
    // this = c0 q^lead (1 + h), h = this/(c0 q^lead) - 1 with lead(h) > 0
    Rat order = order_ - lead - lead;  // inverse exact below order_ - 2*lead
    QSeries h = (*this * (Rat(1) / c0));
    h.offset_ -= lead;
    h = h.truncated(order_ - lead);
    QSeries one = constant(Rat(1), h.order());
    h = h - one;
    QSeries acc = one;
    QSeries pw = one;
    if (!h.is_zero()) {
      for (long i = 0; i < 4096; ++i) {
        pw = pw * (-h);
        if (pw.is_zero()) break;
        acc = acc + pw;
      }
    }
    acc = acc * (Rat(1) / c0);
    acc.offset_ -= lead;
    acc.order_ = order;
    return acc.truncated(order);
  }

  QSeries operator/(const QSeries& o) const { return *this * o.inverse(); }

  QSeries pow_int(long e) const {
    if (e == 0) return constant(Rat(1), order_);
    QSeries base = e > 0 ? *this : inverse();
    long n = e > 0 ? e : -e;
    QSeries acc = base;
    for (long i = 1; i < n; ++i) acc = acc * base;
    return acc;
  }

  // q d/dq: multiply each coefficient by its exponent
  QSeries qdq() const {
    QSeries r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] *= r.offset_ + Rat(long(i)) * r.step_;
    return r;
  }

  // q -> q^a for positive integer a
  QSeries stretch(long a) const {
    QSeries r = *this;
    r.offset_ *= a;
    r.step_ *= a;
    r.order_ *= a;
    return r;
  }

  // q -> -q; all exponents must be integers
  QSeries negate_q() const {
    QSeries r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i) {
      Rat e = r.offset_ + Rat(long(i)) * r.step_;
      if (e.get_den() != 1)
        throw std::domain_error("QSeries: q -> -q needs integer exponents");
      if (e.get_num() % 2 != 0) r.c_[i] = -r.c_[i];
    }
    return r;
  }

  double eval(double q) const {
    double acc = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      double e = to_double(offset_ + Rat(long(i)) * step_);
      acc += to_double(c_[i]) * std::pow(q, e);
    }
    return acc;
  }

  bool equal_to(const QSeries& o, const Rat& upto) const {
    QSeries d = (*this - o).truncated(upto);
    return d.is_zero();
  }

 private:
  static bool rat_less(const Rat& a, const Rat& b) { return a < b; }
  static Rat min_rat(const Rat& a, const Rat& b) { return a < b ? a : b; }

  long len_below(const Rat& order) const {
    // number of grid slots with exponent < order
    Rat n = (order - offset_) / step_;
    if (n <= 0) return 0;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_num().get_mpz_t(), n.get_den().get_mpz_t());
    return q.get_si();
  }

  void accumulate(const QSeries& s) {
    long need = 0;
    for (size_t i = 0; i < s.c_.size(); ++i) {
      if (s.c_[i] == 0) continue;
      Rat e = s.offset_ + Rat(long(i)) * s.step_;
      if (e >= order_) break;
      Rat idx = (e - offset_) / step_;
      long ii = idx.get_num().get_si();
      need = std::max(need, ii + 1);
      if (long(c_.size()) < need) c_.resize(need);
      c_[size_t(ii)] += s.c_[i];
    }
  }

  Rat offset_;
  Rat step_;
  std::vector<Rat> c_;
  Rat order_;
};

// theta null q-expansions
inline QSeries theta2_qseries(const Rat& order) {
  // 2 sum_{n>=0} q^{(n+1/2)^2}: offset 1/4, integer grid (exponents 1/4 + n(n+1))
  QSeries s = QSeries::zero(order);
  for (long n = 0;; ++n) {
    Rat e = Rat(1, 4) + Rat(n * (n + 1));
    if (e >= order) break;
    s = s + QSeries::monomial(Rat(2), e, order);
  }
  return s;
}
inline QSeries theta3_qseries(const Rat& order) {
  QSeries s = QSeries::constant(Rat(1), order);
  for (long n = 1; Rat(n * n) < order; ++n)
    s = s + QSeries::monomial(Rat(2), Rat(n * n), order);
  return s;
}
inline QSeries theta4_qseries(const Rat& order) {
  QSeries s = QSeries::constant(Rat(1), order);
  for (long n = 1; Rat(n * n) < order; ++n)
    s = s + QSeries::monomial(Rat((n % 2) ? -2 : 2), Rat(n * n), order);
  return s;
}

}  // namespace ellsum

#endif  // ELLSUM_QSERIES_HPP
