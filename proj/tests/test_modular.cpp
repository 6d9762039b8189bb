#include "ellsum/modular.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "ellsum/kintegral.hpp"

using namespace ellsum;

TEST_CASE("theta power sums against the series oracle") {
  // b=0: theta3 itself
  QSeries t3 = theta3_qseries(Rat(31));
  CHECK(theta_power_sum(0).qexpand(Rat(31)).equal_to(t3, Rat(31)));
  // b=1: 2q + 8q^4 + 18q^9 + 32 q^16 + 50 q^25 ...
  QSeries s1 = theta_power_sum(1).qexpand(Rat(31));
  CHECK(s1.coeff(Rat(1)) == 2);
  CHECK(s1.coeff(Rat(4)) == 8);
  CHECK(s1.coeff(Rat(9)) == 18);
  CHECK(s1.coeff(Rat(16)) == 32);
  CHECK(s1.coeff(Rat(25)) == 50);
  CHECK(s1.coeff(Rat(2)) == 0);
  CHECK(s1.equal_to(t3.qdq(), Rat(31)));
  // b=2: 2q + 32q^4 + 162q^9 ...
  QSeries s2 = theta_power_sum(2).qexpand(Rat(31));
  CHECK(s2.coeff(Rat(1)) == 2);
  CHECK(s2.coeff(Rat(4)) == 32);
  CHECK(s2.coeff(Rat(9)) == 162);
  CHECK(s2.equal_to(t3.qdq().qdq(), Rat(31)));
}

TEST_CASE("f_{4p} collapses to a polynomial times K^{4p+1}") {
  // p=1: f_4 = 8 k^2 k'^2 K^5 / pi^5; q-expansion starts 4q + ...
  auto f1 = compute_f4p(1);
  CHECK(f1.G == Poly({Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1)}));  // k^2 k'^2
  QSeries ser = f1.raw.qexpand(Rat(11));
  CHECK(ser.coeff(Rat(1)) == 4);
  // direct oracle: sum over (m,n), coefficient of q^N is sum of Re(m-in)^4
  for (long N = 1; N <= 10; ++N) {
    long acc = 0;
    for (long m = -4; m <= 4; ++m)
      for (long n = -4; n <= 4; ++n) {
        if (m * m + n * n != N) continue;
        // real part of (m - in)^4: m^4 - 6 m^2 n^2 + n^4
        acc += m * m * m * m - 6 * m * m * n * n + n * n * n * n;
      }
    CHECK(ser.coeff(Rat(N)) == Rat(acc));
  }
  // p=2: f_8 = 32 k^2 k'^2 (4 + k^2 - k^4) K^9/pi^9
  auto f2 = compute_f4p(2);
  Poly expect2 = Poly({Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1)}) *
                 Poly({Rat(4), Rat(0), Rat(1), Rat(0), Rat(-1)});
  CHECK(f2.G == expect2);
  // p=3: integrand polynomial k(16-92k^2+93k^4-2k^6+k^8)
  auto g3 = compute_gp(3);
  CHECK(g3.g_even ==
        Poly({Rat(16), Rat(0), Rat(-92), Rat(0), Rat(93), Rat(0), Rat(-2),
              Rat(0), Rat(1)}));
}

TEST_CASE("thm42 identities match the worked examples exactly") {
  // p=1: int k K'^3 = Gamma^8(1/4)/(640 pi^2)
  auto g1 = compute_gp(1);
  CHECK(g1.g_even == Poly(Rat(1)));
  CHECK(g1.constant == Rat(1, 640));
  // p=2: int k(4+k^2-k^4) K'^7 = 3 Gamma^16/(2^12 5 pi^4)
  auto g2 = compute_gp(2);
  CHECK(g2.g_even == Poly({Rat(4), Rat(0), Rat(1), Rat(0), Rat(-1)}));
  CHECK(g2.constant == Rat(3) / (Rat(4096) * Rat(5)));
  // p=3: 189 Gamma^24/(2^15 65 pi^6)
  auto g3 = compute_gp(3);
  CHECK(g3.constant == Rat(189) / (Rat(32768) * Rat(65)));
  // p=4: polynomial and 43659 Gamma^32/(2^21 85 pi^8)
  auto g4 = compute_gp(4);
  CHECK(g4.g_even == Poly({Rat(64), Rat(0), Rat(848), Rat(0), Rat(-2136),
                           Rat(0), Rat(2577), Rat(0), Rat(-1291), Rat(0),
                           Rat(3), Rat(0), Rat(-1)}));
  CHECK(g4.constant == Rat(43659) / (Rat(2097152) * Rat(85)));
  // observation: g_p odd (k times an even polynomial) for p = 1..4
  for (auto* g : {&g1, &g2, &g3, &g4}) CHECK(g->g_even.is_even());
}

TEST_CASE("thm42 numerics at the K'^7 integral") {
  auto g2 = compute_gp(2);
  KIntegrandTerm t;
  t.alpha = LinS::constant(Rat(1));
  t.deltaKp = LinS::constant(Rat(7));
  t.poly = g2.g_even.coeffs();
  auto r = k_integral(KIntegralSpec{{t}}, 0.0, 1e-9);
  double expect = to_double(g2.constant) * std::pow(gamma_fn(0.25), 16) /
                  std::pow(kPi, 4);
  CHECK(std::abs(r.value - expect) <= 1e-8 * expect);
}

TEST_CASE("tower ring sanity") {
  // (u * u) = 1 + w; (wu)^2 = W(1+w)
  Tower u = Tower::u_unit();
  Tower uu = u * u;
  CHECK(uu.a == RatFun(Rat(1)));
  CHECK(uu.b == RatFun(Rat(1)));
  CHECK(uu.c.is_zero());
  // numeric agreement of derivative
  Tower t = u * u * u;  // (1+w) u
  double k = 0.37, h = 1e-6;
  auto val = [&](double kk) { return t.eval(kk); };
  double fd = (val(k + h) - val(k - h)) / (2 * h);
  CHECK(t.derivative().eval(k) == Catch::Approx(fd).epsilon(1e-8));
}

TEST_CASE("theta3(q^2) power sums") {
  // sum m^{2b} q^{2m^2}: numeric spot-check at q = 0.06 via direct series
  double q = 0.06;
  Modulus mod = modulus_from_nome(q);
  for (int b : {0, 1, 2}) {
    KE2Expr T = theta3_q2_power_sum(b);
    double direct = (b == 0) ? 1.0 : 0.0;
    for (long m = 1; m <= 30; ++m) {
      double mp = 1;
      for (int i = 0; i < 2 * b; ++i) mp *= m;
      direct += 2 * mp * std::pow(q, 2.0 * m * m);
    }
    CHECK(T.eval(mod.k) == Catch::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("sqrt2-lattice identities match the remark displays") {
  // p=2: int (2+3k-k^2)/sqrt(1+k) K^3 = G18^4 G38^4/(384 sqrt2 pi^2)
  auto r2 = rem44_identity(2);
  CHECK(r2.P == Poly({Rat(2), Rat(3), Rat(-1)}));
  // constant should be 1/(384 sqrt2) = sqrt2/768
  CHECK(r2.constant == Quad2{Rat(0), Rat(1, 768)});
  // p=3 (the K^5 example): (4-6k+5k^2+12k^3+k^4), 1/(2304 sqrt2)
  auto r3 = rem44_identity(3);
  CHECK(r3.P == Poly({Rat(4), Rat(-6), Rat(5), Rat(12), Rat(1)}));
  CHECK(r3.constant == Quad2{Rat(0), Rat(1, 4608)});
}

TEST_CASE("sqrt2-lattice numerics") {
  auto r2 = rem44_identity(2);
  KIntegrandTerm t;
  t.gammaK = LinS::constant(Rat(3));
  t.poly = r2.P.coeffs();
  t.factor = ExtraFactor::InvSqrtOnePlusK;
  auto r = k_integral(KIntegralSpec{{t}}, 0.0, 1e-10);
  double g18 = gamma_fn(0.125), g38 = gamma_fn(0.375);
  double expect = r2.constant.value() * std::pow(g18 * g38, 4) / (kPi * kPi);
  CHECK(std::abs(r.value - expect) <= 1e-9 * expect);
}
