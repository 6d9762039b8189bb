#include "ellsum/kintegral.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ellsum/lseries.hpp"

using namespace ellsum;

namespace {
KIntegralSpec mono(const Rat& c, LinS a, LinS b, LinS g, LinS d) {
  return KIntegralSpec{{monomial_term(c, a, b, g, d)}};
}
LinS L(long c0n, long c0d = 1, long c1 = 0) {
  return LinS{Rat(c0n, c0d), Rat(c1)};
}
}  // namespace

TEST_CASE("k_integral classics") {
  // int k K^2 = 7 zeta(3)/4
  auto r1 = k_integral(mono(rat(1), L(1), L(0), L(2), L(0)), 0.0, 1e-10);
  CHECK(r1.path == KIntegralPath::KSpace);
  CHECK(r1.value == Catch::Approx(7.0 / 4 * lseries(CharId::Zeta, 3)).epsilon(1e-9));

  // int k K K' = pi^3/16
  auto r2 = k_integral(mono(rat(1), L(1), L(0), L(1), L(1)), 0.0, 1e-10);
  CHECK(r2.value == Catch::Approx(std::pow(kPi, 3) / 16).epsilon(1e-9));

  // int K'^3 = Gamma(1/4)^8 / (128 pi^2), log^3 endpoint blowup
  auto r3 = k_integral(mono(rat(1), L(0), L(0), L(0), L(3)), 0.0, 1e-9);
  double expect = std::pow(gamma_fn(0.25), 8) / (128 * kPi * kPi);
  CHECK(std::abs(r3.value - expect) <= 1e-8 * expect);
}

TEST_CASE("eq (1.9) family with affine exponents") {
  // integrand k^{-1/2} k'^{-3/2} K^{-s} K'^{s-1};
  // times pi^s/Gamma(s) equals 2^{2s+1} L-8(s) L8(s)
  KIntegralSpec spec = mono(rat(1), L(-1, 2), L(-3, 2),
                            LinS{Rat(0), Rat(-1)}, LinS{Rat(-1), Rat(1)});
  for (double s : {1.0, 1.5, 2.0}) {
    auto r = k_integral(spec, s, 1e-11);
    double lhs = std::pow(kPi, s) / gamma_fn(s) * r.value;
    double rhs = std::pow(2.0, 2 * s + 1) * lseries(CharId::Lm8, s) *
                 lseries(CharId::L8, s);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("nome-line fallback for guard-band-limited integrands") {
  // theta2 row: pi^{s+1/2}/(sqrt2 Gamma(s)) int k^{-1/2} k'^{-2} K^{-1/2-s}
  // K'^{s-1} = 2^{2s+1} lambda(2s); k-space cannot certify the k'^{-2} end
  KIntegralSpec spec = mono(rat(1), L(-1, 2), L(-2),
                            LinS{Rat(-1, 2), Rat(-1)}, LinS{Rat(-1), Rat(1)});
  double s = 2.0;
  auto an = analyze_k_integrand(spec, s, 1e-9);
  CHECK(an.convergent);
  CHECK_FALSE(an.k_space_ok);
  auto r = k_integral(spec, s, 1e-10);
  CHECK(r.path == KIntegralPath::NomeLine);
  double lhs = std::pow(kPi, s + 0.5) / (std::sqrt(2.0) * gamma_fn(s)) * r.value;
  double rhs = std::pow(2.0, 2 * s + 1) * lseries(CharId::Lambda, 2 * s);
  CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
}

TEST_CASE("divergent integrands are rejected") {
  // 1/k^2
  CHECK_THROWS_AS(k_integral(mono(rat(1), L(-2), L(0), L(0), L(0)), 0.0, 1e-9),
                  IntegrabilityError);
  // 1/k without K' damping
  CHECK_THROWS_AS(k_integral(mono(rat(1), L(-1), L(0), L(0), L(0)), 0.0, 1e-9),
                  IntegrabilityError);
  // 1/k'^2 with growing K
  CHECK_THROWS_AS(k_integral(mono(rat(1), L(0), L(-2), L(1), L(0)), 0.0, 1e-9),
                  IntegrabilityError);
}

TEST_CASE("mirror substitution preserves value") {
  // int k^a k'^b K^c K'^d = int k^{b+1} k'^{a-1} K^d K'^c
  struct Case {
    long a4, b4;  // exponents in quarters
    long c, d;
  };
  for (auto cs : {Case{2, -2, 1, 1}, Case{4, 0, 2, 0}, Case{0, 0, 0, 2},
                  Case{6, -1, 1, 2}}) {
    auto orig = k_integral(mono(rat(1), LinS{Rat(cs.a4, 4), Rat(0)},
                                LinS{Rat(cs.b4, 4), Rat(0)}, L(cs.c), L(cs.d)),
                           0.0, 1e-11);
    auto mirr = k_integral(mono(rat(1), LinS{Rat(cs.b4 + 4, 4), Rat(0)},
                                LinS{Rat(cs.a4 - 4, 4), Rat(0)}, L(cs.d), L(cs.c)),
                           0.0, 1e-11);
    CHECK(orig.value == Catch::Approx(mirr.value).epsilon(1e-9));
  }
}

TEST_CASE("factors evaluate stably at both ends") {
  // one-term row analogue: (1 - sqrt((1+k')/2))/(k k'^2 K) (K'/K)^{s-1}
  KIntegrandTerm t = monomial_term(rat(1), L(-1), L(-2), LinS{Rat(0), Rat(-1)},
                                   LinS{Rat(-1), Rat(1)});
  t.factor = ExtraFactor::OneMinusSqrtHalfOnePlusKp;
  KIntegralSpec spec{{t}};
  double s = 2.0;
  auto r = k_integral(spec, s, 1e-10);
  double lhs = std::pow(kPi, s) / gamma_fn(s) * r.value;
  double rhs = 2 * lseries(CharId::Zeta, s) *
               (2 * lseries(CharId::Beta, s) - lseries(CharId::Lm8, s));
  CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
  // factor values at extreme arguments stay finite and positive
  for (ExtraFactor f :
       {ExtraFactor::OneMinusKp, ExtraFactor::OneMinusKpCubed,
        ExtraFactor::SqrtHalfOneMinusKp,
        ExtraFactor::OneMinusSqrtHalfOnePlusKp, ExtraFactor::InvOnePlusKp,
        ExtraFactor::InvSqrtOnePlusK}) {
    double v0 = factor_value(f, 1e-200, 1.0);
    double v1 = factor_value(f, 1.0, 1e-200);
    CHECK(std::isfinite(v0));
    CHECK(std::isfinite(v1));
    CHECK(v0 >= 0.0);
    CHECK(v1 >= 0.0);
  }
}

TEST_CASE("E-carrying integrands") {
  // eq (eeg) at s=2: int k K'^2 K (2E - K) = (pi^2/2) Gamma(3) eta(-1) lambda(2)
  KIntegrandTerm t1 = monomial_term(rat(2), L(1), L(0), L(1), L(2));
  t1.powE = 1;
  KIntegrandTerm t2 = monomial_term(rat(-1), L(1), L(0), L(2), L(2));
  KIntegralSpec spec{{t1, t2}};
  auto r = k_integral(spec, 0.0, 1e-10);
  double rhs = 0.5 * kPi * kPi * gamma_fn(3) * lseries(CharId::Eta, -1) *
               lseries(CharId::Lambda, 2);
  CHECK(std::abs(r.value - rhs) <= 1e-9 * std::abs(rhs));
}
