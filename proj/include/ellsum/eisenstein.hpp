#ifndef ELLSUM_EISENSTEIN_HPP
#define ELLSUM_EISENSTEIN_HPP

// Eisenstein series: exact Lambert q-expansions, the expression of E_{2n}
// as a weight-homogeneous polynomial in E_4 and E_6, the three closed
// k-forms (arguments q^2, q and -q), and the even-weight integral family
// built from E_{2n}(q^2) - E_{2n}(-q).

#include <map>
#include <stdexcept>
#include <vector>

#include "ellsum/keexpr.hpp"
#include "ellsum/poly.hpp"
#include "ellsum/qseries.hpp"
#include "ellsum/rational.hpp"

namespace ellsum {

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonDivisible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E_{2n}(q) = 1 - (4n/B_{2n}) sum_{N>=1} sigma_{2n-1}(N) q^N, exact.
inline QSeries eisenstein_qseries(int two_n, long order) {
  if (two_n < 4 || two_n % 2 != 0)
    throw std::invalid_argument("eisenstein_qseries: need even weight >= 4");
  Rat factor = Rat(-2 * two_n) / bernoulli(two_n);
  QSeries s = QSeries::constant(Rat(1), Rat(order));
  for (long N = 1; N < order; ++N) {
    Int sigma = 0;
    for (long d = 1; d <= N; ++d) {
      if (N % d == 0) {
        Int dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), d, two_n - 1);
        sigma += dp;
      }
    }
    s.set_coeff(Rat(N), factor * Rat(sigma));
  }
  return s;
}

// weight-homogeneous polynomial in E4, E6: map (i, j) -> coefficient with
// 4i + 6j = weight for every monomial
struct WeightedPoly {
  int weight = 0;
  std::map<std::pair<int, int>, Rat> mono;
};

// Solve E_{2n} = P_n(E_4, E_6) by exact linear algebra on q-expansions and
// verify against twice as many further coefficients.
inline WeightedPoly eisenstein_as_E4E6(int two_n) {
  if (two_n < 4 || two_n % 2 != 0)
    throw std::invalid_argument("eisenstein_as_E4E6: need even weight >= 4");
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; 4 * i <= two_n; ++i) {
    if ((two_n - 4 * i) % 6 == 0) basis.push_back({i, (two_n - 4 * i) / 6});
  }
  const int B = int(basis.size());
  const long order = 3 * B + 4;  // rows for solving plus verification
  QSeries e4 = eisenstein_qseries(4, order);
  QSeries e6 = eisenstein_qseries(6, order);
  std::vector<QSeries> cols;
  for (auto [i, j] : basis) {
    QSeries c = QSeries::constant(Rat(1), Rat(order));
    for (int a = 0; a < i; ++a) c = c * e4;
    for (int b = 0; b < j; ++b) c = c * e6;
    cols.push_back(c);
  }
  QSeries target = eisenstein_qseries(two_n, order);
  // B x B system from coefficients of q^0..q^{B-1}
  std::vector<std::vector<Rat>> A(B, std::vector<Rat>(B + 1));
  for (int r = 0; r < B; ++r) {
    for (int c = 0; c < B; ++c) A[r][c] = cols[c].coeff(Rat(r));
    A[r][B] = target.coeff(Rat(r));
  }
  // Gaussian elimination, exact
  for (int col = 0; col < B; ++col) {
    int piv = -1;
    for (int r = col; r < B; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw SingularSystem("eisenstein_as_E4E6: singular system");
    std::swap(A[col], A[piv]);
    for (int r = 0; r < B; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col] / A[col][col];
      for (int c = col; c <= B; ++c) A[r][c] -= f * A[col][c];
    }
  }
  WeightedPoly out;
  out.weight = two_n;
  QSeries check = QSeries::zero(Rat(order));
  for (int c = 0; c < B; ++c) {
    Rat x = A[c][B] / A[c][c];
    if (x != 0) out.mono[basis[c]] = x;
    check = check + cols[c] * x;
  }
  if (!check.equal_to(target, Rat(order)))
    throw SingularSystem("eisenstein_as_E4E6: overdetermined check failed");
  return out;
}

enum class KFormVariant { QSquared, Q, MinusQ };

namespace detail {

struct KFormPair {
  Rat c4;   // E4 -> c4 * A(k) K^4 / pi^4
  Poly A;
  Rat c6;   // E6 -> c6 * Bp(k) K^6 / pi^6
  Poly Bp;
};

inline KFormPair kform_data(KFormVariant v) {
  Poly k2({Rat(0), Rat(0), Rat(1)});
  Poly one(Rat(1));
  switch (v) {
    case KFormVariant::QSquared:
      return {Rat(16), Poly({Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)}),
              Rat(32),
              (one + k2) * Poly({Rat(1), Rat(0), Rat(-2)}) *
                  Poly({Rat(2), Rat(0), Rat(-1)})};
    case KFormVariant::Q:
      return {Rat(16), Poly({Rat(1), Rat(0), Rat(14), Rat(0), Rat(1)}),
              Rat(64),
              (one + k2) * Poly({Rat(1), Rat(0), Rat(-34), Rat(0), Rat(1)})};
    case KFormVariant::MinusQ:
      return {Rat(16), Poly({Rat(1), Rat(0), Rat(-16), Rat(0), Rat(16)}),
              Rat(64),
              Poly({Rat(1), Rat(0), Rat(-2)}) *
                  Poly({Rat(1), Rat(0), Rat(32), Rat(0), Rat(-32)})};
  }
  throw std::logic_error("kform_data");
}

}  // namespace detail

// E_{2n}(q^2 / q / -q) as coeff(k) * K^{2n} / pi^{2n}; returned as a KEExpr
// whose single monomial is (pi^{-2n}, K^{2n}) with a polynomial coefficient.
inline KEExpr eisenstein_k_form(int two_n, KFormVariant v) {
  WeightedPoly P = eisenstein_as_E4E6(two_n);
  auto data = detail::kform_data(v);
  Poly acc;
  for (const auto& [ij, coef] : P.mono) {
    auto [i, j] = ij;
    Poly term(coef * pow_rat(data.c4, i) * pow_rat(data.c6, j));
    for (int a = 0; a < i; ++a) term = term * data.A;
    for (int b = 0; b < j; ++b) term = term * data.Bp;
    acc = acc + term;
  }
  return KEExpr::term(KMono{0, -2 * two_n, 2 * two_n, 0},
                      RatFun::from_poly(acc));
}

struct PnResult {
  int n;
  Poly Qn;  // E_{2n}(q^2) - E_{2n}(-q) = Qn(k) K^{2n} / pi^{2n}
  Poly pn;  // Qn / (k^2 k'^2)
};

// The even-weight construction: subtract the -q form from the q^2 form, the
// constant 1 cancels, and the difference divides exactly by k^2 k'^2.
inline PnResult compute_pn(int n) {
  if (n < 2) throw std::invalid_argument("compute_pn: need n >= 2");
  KEExpr diff = eisenstein_k_form(2 * n, KFormVariant::QSquared) -
                eisenstein_k_form(2 * n, KFormVariant::MinusQ);
  auto single = diff.single();
  if (!single) throw NonDivisible("compute_pn: unexpected monomial structure");
  auto Qn_opt = single->second.as_poly();
  if (!Qn_opt) throw NonDivisible("compute_pn: Qn not a polynomial");
  Poly Qn = *Qn_opt;
  Poly divisor = Poly({Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1)});  // k^2 k'^2
  auto pn = Qn.divide_exact(divisor);
  if (!pn) throw NonDivisible("compute_pn: Qn not divisible by k^2 k'^2");
  // claims of the construction; under k -> k' the E6 closed forms flip
  // sign, so pn picks up (-1)^n (the source text asserts plain symmetry,
  // but its own odd-n displays such as 1-2k^2 are anti-invariant)
  if (!pn->is_even()) throw NonDivisible("compute_pn: pn not even");
  if (pn->degree() > 2 * n - 4)
    throw NonDivisible("compute_pn: degree bound violated");
  Poly mirrored = pn->substitute_complementary();
  Poly expected = (n % 2 == 0) ? *pn : -*pn;
  if (!(mirrored == expected))
    throw NonDivisible("compute_pn: pn(k') != (-1)^n pn(k)");
  return {n, Qn, *pn};
}

// the identity emitted for the registry:
//   int_0^1 k ptilde(k) K^{2n-1-s} K'^{s-1} dk
//     = prefactor * pi^{2n-1-s} Gamma(s) eta(s+1-2n) lambda(s)
struct Thm31Identity {
  int n;
  Poly ptilde;    // integer coefficients, gcd 1, positive constant term
  Rat prefactor;  // -(8n/B_{2n}) / content
};

inline Thm31Identity thm31_identity(int n) {
  PnResult pr = compute_pn(n);
  Rat c = pr.pn.content();
  if (pr.pn.coeff(pr.pn.valuation()) < 0) c = -c;
  Poly ptilde = pr.pn * (Rat(1) / c);
  Rat pref = Rat(-8 * n) / bernoulli(2 * n) / c;
  return {n, ptilde, pref};
}

}  // namespace ellsum

#endif  // ELLSUM_EISENSTEIN_HPP
