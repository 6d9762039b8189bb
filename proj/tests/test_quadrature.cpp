#include "ellsum/quadrature.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace ellsum;

TEST_CASE("endpoint-singular basics") {
  auto r1 = integrate_01([](double x, double) { return 1.0 / std::sqrt(x); }, 1e-13);
  CHECK(r1.converged);
  CHECK(r1.value == Catch::Approx(2.0).epsilon(1e-12));

  auto r2 = integrate_01([](double x, double) { return std::log(x); }, 1e-13);
  CHECK(r2.value == Catch::Approx(-1.0).epsilon(1e-12));

  // both-end singularity
  auto r3 = integrate_01(
      [](double x, double omx) { return 1.0 / std::sqrt(x * omx); }, 1e-13);
  CHECK(r3.value == Catch::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("eq. (1.10) integrand") {
  // int_0^1 dk / (sqrt(k) k'^{3/2} K(k)) = 2 log(1+sqrt(2))
  auto f = [](double k, double omk) {
    EllipticPoint p = elliptic_point(k, omk);
    return 1.0 / (std::sqrt(k) * std::pow(p.kp, 1.5) * p.K);
  };
  auto r = integrate_01(f, 1e-12);
  CHECK(r.converged);
  CHECK(r.value ==
        Catch::Approx(2 * std::log(1 + std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("error estimate is conservative on known singular integrals") {
  struct Case {
    Integrand01 f;
    double exact;
  };
  std::vector<Case> cases;
  // x^{-a} families, log powers, mixed
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    cases.push_back({[a](double x, double) { return std::pow(x, -a); },
                     1.0 / (1.0 - a)});
    cases.push_back(
        {[a](double x, double omx) { return std::pow(omx, -a); },
         1.0 / (1.0 - a)});
  }
  for (int p : {1, 2, 3}) {
    double sign = (p % 2) ? -1.0 : 1.0;
    double fact = 1.0;
    for (int i = 2; i <= p; ++i) fact *= i;
    cases.push_back({[p](double x, double) { return std::pow(std::log(x), p); },
                     sign * fact});
  }
  cases.push_back({[](double x, double) { return std::log(x) / std::sqrt(x); },
                   -4.0});
  cases.push_back(
      {[](double x, double omx) { return std::log(x) * std::log(omx); },
       2.0 - kPi * kPi / 6});
  cases.push_back({[](double x, double) { return 1.0; }, 1.0});
  cases.push_back({[](double x, double) { return x * x; }, 1.0 / 3});
  for (double a : {0.3, 0.6}) {
    cases.push_back({[a](double x, double omx) {
                       return std::pow(x, -a) * std::log(1.0 / x);
                     },
                     1.0 / ((1 - a) * (1 - a))});
  }
  cases.push_back({[](double x, double omx) {
                     return 1.0 / (std::sqrt(x) * std::sqrt(omx) * (1 + x));
                   },
                   kPi / std::sqrt(2.0)});
  cases.push_back({[](double x, double) { return std::sin(kPi * x); },
                   2.0 / kPi});
  cases.push_back({[](double x, double) { return std::exp(x); },
                   std::exp(1.0) - 1.0});
  REQUIRE(cases.size() >= 20);
  for (const auto& c : cases) {
    auto r = integrate_01(c.f, 1e-12);
    double true_err = std::abs(r.value - c.exact);
    CHECK(true_err <= r.error + 1e-15 * std::abs(c.exact));
  }
}

TEST_CASE("mellin transform") {
  auto r = mellin_transform([](double t) { return std::exp(-3.0 * t); }, 2.0, 1e-13);
  CHECK(r.value == Catch::Approx(1.0 / 9).epsilon(1e-12));
  for (double s : {0.5, 1.0, 2.5}) {
    auto re = mellin_transform([](double t) { return std::exp(-t); }, s, 1e-13);
    CHECK(re.value == Catch::Approx(1.0).epsilon(1e-12));
  }
  // theta2 theta4 at s=1 equals the (1.9) value 2 log(1+sqrt2) after the
  // pi^{-s} Gamma(s) 2^{2s+1} L-8 L8 closed form; cross-check against the
  // k-space route of the same identity
  auto th = [](double t) { return theta_exp(2, t) * theta_exp(4, t); };
  auto rm = mellin_transform(th, 1.0, 1e-12);
  // sum form = 2^{2s+1} L-8(s) L8(s) at s=1 = 8 * (pi/sqrt8) * log(1+sqrt2)/sqrt2
  double sum_form = 8.0 * (kPi / std::sqrt(8.0)) *
                    (std::log(1 + std::sqrt(2.0)) / std::sqrt(2.0));
  CHECK(rm.value == Catch::Approx(sum_form).epsilon(1e-11));
}

TEST_CASE("nome point") {
  for (double t : {0.05, 0.4, kPi, 7.0, 30.0}) {
    NomePoint p = nome_point(t);
    CHECK(p.k > 0);
    CHECK(p.kp > 0);
    CHECK(std::abs(p.k * p.k + p.kp * p.kp - 1.0) < 1e-13);
    CHECK(p.Kp / p.K == Catch::Approx(t / kPi).epsilon(1e-13));
  }
  // jacobian vs finite difference of k(t), away from the ends where k(t)
  // saturates in binary64 and the difference quotient loses all digits
  for (double t : {1.0, kPi, 5.0}) {
    NomePoint p = nome_point(t);
    double h = 1e-6 * t;
    double kd = (nome_point(t + h).k - nome_point(t - h).k) / (2 * h);
    CHECK(std::abs(-kd - p.jacobian) <= 1e-6 * std::abs(p.jacobian));
  }
}
