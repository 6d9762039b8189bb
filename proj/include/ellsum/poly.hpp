#ifndef ELLSUM_POLY_HPP
#define ELLSUM_POLY_HPP

// Dense polynomials over Q and reduced rational functions, for the exact
// Eisenstein / modular-form algebra.

#include <optional>
#include <stdexcept>
#include <vector>

#include "ellsum/rational.hpp"

namespace ellsum {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
  static Poly monomial(const Rat& c, int deg) {
    std::vector<Rat> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
  }
  static Poly variable() { return monomial(Rat(1), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  const Rat& coeff(int i) const {
    static const Rat z = Rat(0);
    return (i >= 0 && i < int(c_.size())) ? c_[i] : z;
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return int(i);
    return 0;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Poly operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(int(i)) + o.coeff(int(i));
    return Poly(std::move(v));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(v));
  }
  Poly operator*(const Rat& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(long(i));
    return Poly(std::move(v));
  }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  double eval(double x) const {
    double acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + to_double(c_[i]);
    return acc;
  }

  // long division; throws on zero divisor
  std::pair<Poly, Poly> divrem(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("poly divrem by zero");
    Poly r = *this;
    std::vector<Rat> q(std::max<int>(degree() - d.degree() + 1, 0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int sh = r.degree() - d.degree();
      Rat f = r.c_.back() / d.c_.back();
      q[sh] = f;
      r = r - d * monomial(f, sh);
    }
    return {Poly(std::move(q)), r};
  }

  std::optional<Poly> divide_exact(const Poly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  // gcd of all coefficients (positive); zero polynomial has content 0
  Rat content() const {
    Rat g = 0;
    for (const auto& c : c_) {
      if (c == 0) continue;
      if (g == 0) {
        g = abs(c);
      } else {
        Rat a = abs(c);
        // gcd(a, g) for rationals: gcd of numerators / lcm of denominators
        Int num, den;
        mpz_gcd(num.get_mpz_t(), a.get_num_mpz_t(), g.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), g.get_den_mpz_t());
        g = Rat(num) / Rat(den);
      }
    }
    return g;
  }

  bool is_even() const {
    for (size_t i = 1; i < c_.size(); i += 2)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_odd() const {
    for (size_t i = 0; i < c_.size(); i += 2)
      if (c_[i] != 0) return false;
    return true;
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
    return acc;
  }

  // for even p(k): the polynomial p(k') with k'^2 = 1 - k^2, exact
  Poly substitute_complementary() const {
    if (!is_even())
      throw std::domain_error("substitute_complementary: polynomial not even");
    Poly half;  // q with p(k) = q(k^2)
    std::vector<Rat> h(c_.size() / 2 + 1);
    for (size_t i = 0; i < c_.size(); i += 2) h[i / 2] = c_[i];
    half = Poly(std::move(h));
    Poly one_minus_k2({Rat(1), Rat(0), Rat(-1)});
    return half.compose(one_minus_k2);
  }

  // even/odd split: p(k) = pe(k^2-grid even part) + k * po(...), both
  // returned still in the variable k (pe even, po even)
  std::pair<Poly, Poly> even_odd_split() const {
    std::vector<Rat> e(c_.size()), o(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i % 2 == 0)
        e[i] = c_[i];
      else if (i >= 1)
        o[i - 1] = c_[i];
    }
    return {Poly(std::move(e)), Poly(std::move(o))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divrem(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // normalize monic
  Rat lead = a.coeff(a.degree());
  return a * (Rat(1) / lead);
}

// reduced rational function; denominator monic
class RatFun {
 public:
  RatFun() : num_(), den_(Rat(1)) {}
  RatFun(const Rat& c) : num_(c), den_(Rat(1)) {}
  RatFun(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
  static RatFun from_poly(Poly p) { return RatFun(std::move(p), Poly(Rat(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }
  std::optional<Poly> as_poly() const {
    if (!is_poly()) return std::nullopt;
    return num_ * (Rat(1) / den_.coeff(0));
  }

  RatFun operator-() const { return RatFun(-num_, den_, no_reduce{}); }
  RatFun operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFun operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFun operator*(const RatFun& o) const {
    return RatFun(num_ * o.num_, den_ * o.den_);
  }
  RatFun operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::domain_error("RatFun division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
  }
  RatFun operator*(const Rat& s) const { return RatFun(num_ * s, den_, no_reduce{}); }
  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  RatFun derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(),
                  den_ * den_);
  }

  double eval(double x) const { return num_.eval(x) / den_.eval(x); }
  Rat eval(const Rat& x) const { return num_.eval(x) / den_.eval(x); }

 private:
  struct no_reduce {};
  RatFun(Poly n, Poly d, no_reduce) : num_(std::move(n)), den_(std::move(d)) {}
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
    Rat lead = den_.coeff(den_.degree());
    num_ = num_ * (Rat(1) / lead);
    den_ = den_ * (Rat(1) / lead);
  }
  Poly num_;
  Poly den_;
};

}  // namespace ellsum

#endif  // ELLSUM_POLY_HPP
