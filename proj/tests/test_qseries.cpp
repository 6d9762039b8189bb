#include "ellsum/qseries.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "ellsum/keexpr.hpp"
#include "ellsum/specfun.hpp"

using namespace ellsum;

TEST_CASE("theta expansions") {
  QSeries t3 = theta3_qseries(Rat(26));
  CHECK(t3.coeff(Rat(0)) == 1);
  CHECK(t3.coeff(Rat(1)) == 2);
  CHECK(t3.coeff(Rat(2)) == 0);
  CHECK(t3.coeff(Rat(4)) == 2);
  CHECK(t3.coeff(Rat(9)) == 2);
  CHECK(t3.coeff(Rat(25)) == 2);
  QSeries t4 = theta4_qseries(Rat(26));
  CHECK(t4.coeff(Rat(1)) == -2);
  CHECK(t4.coeff(Rat(4)) == 2);
  CHECK(t4.coeff(Rat(9)) == -2);
  QSeries t2 = theta2_qseries(Rat(26));
  CHECK(t2.coeff(Rat(1, 4)) == 2);
  CHECK(t2.coeff(Rat(9, 4)) == 2);
  CHECK(t2.coeff(Rat(25, 4)) == 2);
}

TEST_CASE("triple product to order 25") {
  Rat order(25);
  QSeries lhs = theta2_qseries(order) * theta3_qseries(order) *
                theta4_qseries(order);
  // sum over n of 2n(-1)^n q^{(n+1/2)^2}
  QSeries rhs = QSeries::zero(order);
  for (long n = -10; n <= 10; ++n) {
    Rat e = Rat((2 * n + 1) * (2 * n + 1), 4);
    if (e >= order) continue;
    rhs = rhs + QSeries::monomial(Rat(2 * n * ((n % 2) ? -1 : 1)), e, order);
  }
  CHECK(lhs.equal_to(rhs, order));
}

TEST_CASE("quartic identity as exact series") {
  Rat order(40);
  QSeries t2 = theta2_qseries(order), t3 = theta3_qseries(order),
          t4 = theta4_qseries(order);
  QSeries lhs = t3.pow_int(4);
  QSeries rhs = t2.pow_int(4) + t4.pow_int(4);
  CHECK(lhs.equal_to(rhs, order));
}

TEST_CASE("series arithmetic") {
  Rat order(12);
  QSeries t3 = theta3_qseries(order);
  // division round trip
  QSeries q = theta2_qseries(order) / t3;
  CHECK((q * t3).equal_to(theta2_qseries(order), q.order()));
  // stretch and negate
  QSeries t3q2 = t3.stretch(2);
  CHECK(t3q2.coeff(Rat(2)) == 2);
  CHECK(t3q2.coeff(Rat(1)) == 0);
  CHECK(t3.negate_q().coeff(Rat(1)) == -2);
  CHECK(t3.negate_q().coeff(Rat(4)) == 2);
  // qdq multiplies by exponents
  CHECK(t3.qdq().coeff(Rat(4)) == 8);
  // numeric eval agrees with the numeric theta
  double qv = 0.03;
  CHECK(theta3_qseries(Rat(40)).eval(qv) ==
        Catch::Approx(theta(3, qv)).epsilon(1e-14));
  CHECK(theta2_qseries(Rat(40)).eval(qv) ==
        Catch::Approx(theta(2, qv)).epsilon(1e-14));
}

TEST_CASE("KEExpr q d/dq matches series derivative (theta3)") {
  // one application of q d/dq to theta3 = sqrt(2K/pi) gives sum n^2 q^{n^2}
  KEExpr th3 = KEExpr::term(KMono{1, -1, 1, 0}, RatFun(Rat(1)));
  KEExpr d1 = th3.q_ddq();
  Rat order(21);
  QSeries got = d1.qexpand(order);
  QSeries expect = theta3_qseries(order).qdq();
  CHECK(got.equal_to(expect, order));
  // and numerically via finite differences of theta3(q)
  double q = 0.05, h = 1e-6;
  double fd = q * (theta(3, q + h) - theta(3, q - h)) / (2 * h);
  Modulus m = modulus_from_nome(q);
  CHECK(d1.eval(m.k) == Catch::Approx(fd).epsilon(1e-7));
}

TEST_CASE("KEExpr expansion of theta2^2") {
  // (2/pi) k K = theta2^2; its expansion is 4 q^{1/2} + 8 q^{3/2}...
  KEExpr t22 = KEExpr::term(KMono{2, -2, 2, 0},
                            RatFun::from_poly(Poly::variable()));
  Rat order(15);
  QSeries got = t22.qexpand(order);
  QSeries expect = theta2_qseries(order) * theta2_qseries(order);
  CHECK(got.equal_to(expect, order));
  // derivative cross-check against term-by-term qdq, order 12
  QSeries dgot = t22.q_ddq().qexpand(Rat(12));
  CHECK(dgot.equal_to(expect.qdq(), Rat(12)));
}

TEST_CASE("KEExpr round trip at random moduli") {
  // E-carrying expression: q d/dq of theta2^2 (contains E through K')
  KEExpr t22 = KEExpr::term(KMono{2, -2, 2, 0},
                            RatFun::from_poly(Poly::variable()));
  KEExpr d = t22.q_ddq();
  QSeries ser = d.qexpand(Rat(40));
  for (double k : {0.05, 0.12, 0.21, 0.33, 0.40, 0.48, 0.55, 0.62, 0.70, 0.76}) {
    double q = nome(k).q;
    CHECK(std::abs(d.eval(k) - ser.eval(q)) <=
          1e-10 * std::max(1.0, std::abs(d.eval(k))));
  }
}
