#ifndef ELLSUM_RATIONAL_HPP
#define ELLSUM_RATIONAL_HPP

// Exact rational arithmetic (GMP) plus Bernoulli numbers and binomials.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellsum {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline Int binom(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rat pow_rat(const Rat& x, long e) {
  if (e == 0) return rat(1);
  Rat base = e > 0 ? x : Rat(1) / x;
  unsigned long n = e > 0 ? e : -e;
  Rat acc = rat(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// Bernoulli numbers with B_1 = -1/2, from the standard recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline const Rat& bernoulli(unsigned n) {
  static const std::vector<Rat> table = [] {
    const unsigned N = 64;
    std::vector<Rat> b(N + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= N; ++m) {
      Rat acc = 0;
      for (unsigned j = 0; j < m; ++j) acc += Rat(binom(m + 1, j)) * b[j];
      b[m] = -acc / Rat(binom(m + 1, m));
    }
    return b;
  }();
  if (n >= table.size()) throw std::out_of_range("bernoulli: n too large");
  return table[n];
}

// Bernoulli polynomial B_n(x) = sum_i C(n,i) B_i x^{n-i}, exact.
inline Rat bernoulli_poly(unsigned n, const Rat& x) {
  Rat acc = 0;
  Rat xp = 1;  // x^{n-i} built from the top
  // evaluate with Horner in x: B_n(x) = sum_{i=0}^{n} C(n,i) B_i x^{n-i}
  for (unsigned i = 0; i <= n; ++i) {
    acc += Rat(binom(n, i)) * bernoulli(i) * pow_rat(x, long(n - i));
  }
  return acc;
}

// zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!), returned as the
// rational multiplier of pi^{2n}.
inline Rat zeta_even_rational(unsigned two_n) {
  if (two_n == 0 || two_n % 2 != 0)
    throw std::invalid_argument("zeta_even_rational: need positive even");
  unsigned n = two_n / 2;
  Int fact = 1;
  for (unsigned i = 2; i <= two_n; ++i) fact *= i;
  Rat val = bernoulli(two_n) * pow_rat(rat(2), two_n) / (Rat(fact) * 2);
  if (n % 2 == 0) val = -val;
  return val;  // zeta(2n) = val * pi^{2n}
}

}  // namespace ellsum

#endif  // ELLSUM_RATIONAL_HPP
