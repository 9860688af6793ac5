#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betarep/ball.hpp"

using namespace betarep;

namespace {

mpq_class rand_q(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 60);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("exact constructors give zero radius") {
  RealBall b = RealBall::exact_si(5, 128);
  CHECK(b.is_exact());
  CHECK(b.contains(mpq_class(5)));
  CHECK_FALSE(b.contains(mpq_class(6)));
}

TEST_CASE("containment under random rational arithmetic chains") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    mpq_class a = rand_q(rng), b = rand_q(rng), c = rand_q(rng);
    RealBall A = RealBall::from_rational(a, 96);
    RealBall B = RealBall::from_rational(b, 96);
    RealBall C = RealBall::from_rational(c, 96);
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    mpq_class chain = a * b + c;
    CHECK((A * B + C).contains(chain));
    if (b != 0 && !B.contains_zero()) {
      mpq_class q = a / b;
      CHECK((A / B).contains(q));
    }
  }
}

TEST_CASE("log of exact one is a tiny ball around zero") {
  RealBall one = RealBall::exact_si(1, 128);
  RealBall l = ball_log(one);
  CHECK(l.contains(mpq_class(0)));
  // radius <= 1e-30
  CHECK(l.rad_d() <= 1e-30);
}

TEST_CASE("log of an enclosure of e contains one") {
  mpfr_t lo, hi, x;
  mpfr_init2(lo, 192);
  mpfr_init2(hi, 192);
  mpfr_init2(x, 192);
  mpfr_set_ui(x, 1, MPFR_RNDN);
  mpfr_exp(lo, x, MPFR_RNDD);
  mpfr_exp(hi, x, MPFR_RNDU);
  RealBall e = RealBall::from_endpoints_mpfr(lo, hi, 192);
  mpfr_clears(lo, hi, x, (mpfr_ptr) nullptr);
  CHECK(ball_log(e).contains(mpq_class(1)));
}

TEST_CASE("log 10 matches an independent high-precision bracket") {
  RealBall ten = RealBall::exact_si(10, 256);
  RealBall l = ball_log(ten);
  // independent bracket at four times the precision
  mpfr_t lo, hi, arg;
  mpfr_init2(lo, 1024);
  mpfr_init2(hi, 1024);
  mpfr_init2(arg, 1024);
  mpfr_set_ui(arg, 10, MPFR_RNDN);
  mpfr_log(lo, arg, MPFR_RNDD);
  mpfr_log(hi, arg, MPFR_RNDU);
  RealBall ref = RealBall::from_endpoints_mpfr(lo, hi, 1024);
  mpfr_clears(lo, hi, arg, (mpfr_ptr) nullptr);
  CHECK(l.overlaps(ref));
  CHECK(l.rad_d() < 1e-60);
  CHECK(doctest::Approx(l.mid_d()) == 2.302585092994046);
}

TEST_CASE("log rejects balls touching the nonpositive axis") {
  RealBall z = RealBall::exact_si(0, 64);
  CHECK_THROWS_AS(ball_log(z), DomainError);
  RealBall wide = RealBall::from_decimal("0.5", "1.0", 64);
  CHECK_THROWS_AS(ball_log(wide), DomainError);
}

TEST_CASE("sqrt and abs behave on straddling intervals") {
  RealBall wide = RealBall::from_decimal("1.0", "3.0", 96);  // [-2, 4]
  RealBall r = wide.sqrt();                                  // [0, 2]
  CHECK(r.contains(mpq_class(0)));
  CHECK(r.contains(mpq_class(2)));
  CHECK_FALSE(r.contains(mpq_class(3)));
  RealBall a = wide.abs();
  CHECK(a.contains(mpq_class(0)));
  CHECK(a.contains(mpq_class(4)));
  RealBall neg = RealBall::exact_si(-9, 96);
  CHECK_THROWS_AS(neg.sqrt(), DomainError);
  CHECK(neg.abs().contains(mpq_class(9)));
}

TEST_CASE("division by a zero-containing ball is a domain error") {
  RealBall num = RealBall::exact_si(1, 64);
  RealBall den = RealBall::from_decimal("0.1", "0.5", 64);
  CHECK_THROWS_AS(num / den, DomainError);
}

TEST_CASE("pow_ui agrees with exact rational powers") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    mpq_class a = rand_q(rng);
    RealBall A = RealBall::from_rational(a, 128);
    mpq_class e = a * a * a * a * a;
    CHECK(A.pow_ui(5).contains(e));
  }
}

TEST_CASE("certified comparisons") {
  RealBall a = RealBall::from_decimal("1.0", "0.25", 64);
  RealBall b = RealBall::from_decimal("2.0", "0.25", 64);
  CHECK(a.lt(b));
  CHECK_FALSE(b.lt(a));
  CHECK(a.overlaps(a));
  CHECK_FALSE(a.overlaps(b));
  CHECK(RealBall::max(a, b).contains(mpq_class(9, 4)));
  CHECK(RealBall::min(a, b).contains(mpq_class(3, 4)));
}

TEST_CASE("complex arithmetic containment and abs") {
  ComplexBall z = ComplexBall::exact_si(3, 4, 128);
  CHECK(z.abs().contains(mpq_class(5)));
  ComplexBall w = ComplexBall::exact_si(1, -2, 128);
  ComplexBall p = z * w;  // (3+4i)(1-2i) = 11 - 2i
  CHECK(p.re().contains(mpq_class(11)));
  CHECK(p.im().contains(mpq_class(-2)));
  ComplexBall q = p / w;
  CHECK(q.re().contains(mpq_class(3)));
  CHECK(q.im().contains(mpq_class(4)));
  CHECK(z.pow_ui(2).re().contains(mpq_class(-7)));
  CHECK(z.pow_ui(2).im().contains(mpq_class(24)));
}

TEST_CASE("poly evaluation with ball coefficients") {
  // p(x) = 2 - 3x + x^2 at x = 5/2 -> 2 - 15/2 + 25/4 = 3/4
  std::vector<RealBall> coeffs{RealBall::exact_si(2, 96),
                               RealBall::exact_si(-3, 96),
                               RealBall::exact_si(1, 96)};
  RealBall x = RealBall::from_rational(mpq_class(5, 2), 96);
  CHECK(eval_poly(coeffs, x).contains(mpq_class(3, 4)));
}
