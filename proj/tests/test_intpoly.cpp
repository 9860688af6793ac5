#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "betarep/intpoly.hpp"

using namespace betarep;

namespace {

// independent bisection oracle: rational approximation of the unique root
// of p in [lo, hi] to the requested width, using only sign evaluations
mpq_class bisect_oracle(const IntPoly& p, mpq_class lo, mpq_class hi,
                        const mpq_class& width) {
  int slo = p.sign_at(lo);
  REQUIRE(slo != 0);
  REQUIRE(p.sign_at(hi) == -slo);
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    int sm = p.sign_at(mid);
    if (sm == 0) return mid;
    (sm == slo ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("arithmetic and exact division") {
  IntPoly a = IntPoly::from_si({-2, 0, 1});  // X^2 - 2
  IntPoly b = IntPoly::from_si({-3, 1});     // X - 3
  IntPoly prod = a * b;
  CHECK(prod == IntPoly::from_si({6, -2, -3, 1}));
  auto quo = prod.divide_exact(b);
  REQUIRE(quo.has_value());
  CHECK(*quo == a);
  CHECK_FALSE(prod.divide_exact(IntPoly::from_si({1, 1})).has_value());
}

TEST_CASE("content, primitive and squarefree part") {
  IntPoly p = IntPoly::from_si({-8, 0, 4});  // 4X^2 - 8
  CHECK(p.content() == 4);
  CHECK(p.primitive() == IntPoly::from_si({-2, 0, 1}));
  // (X-1)^2 (X+2)
  IntPoly q = IntPoly::from_si({-1, 1}) * IntPoly::from_si({-1, 1}) *
              IntPoly::from_si({2, 1});
  IntPoly sf = q.squarefree_part();
  CHECK(sf == IntPoly::from_si({-1, 1}) * IntPoly::from_si({2, 1}));
  CHECK_FALSE(q.is_squarefree());
  CHECK(sf.is_squarefree());
}

TEST_CASE("sturm root counting") {
  CHECK(IntPoly::from_si({-2, 0, 1}).count_real_roots() == 2);
  CHECK(IntPoly::from_si({-1, -1, 0, 1}).count_real_roots() == 1);
  CHECK(IntPoly::from_si({-6, 11, -6, 1}).count_real_roots() == 3);
  CHECK(IntPoly::from_si({1, 0, 1}).count_real_roots() == 0);
  CHECK(IntPoly::from_si({-2, 0, 1}).sturm_count(0, 2) == 1);
  CHECK(IntPoly::from_si({-2, 0, 1}).sturm_count(2, 10) == 0);
}

TEST_CASE("real root isolation separates and brackets") {
  IntPoly p = IntPoly::from_si({-6, 11, -6, 1});  // roots 1, 2, 3
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 3);
  for (int i = 0; i + 1 < 3; ++i) CHECK(roots[i].hi <= roots[i + 1].lo);
  // rational roots may come out exact or bracketed; both must locate 1,2,3
  for (int want = 1; want <= 3; ++want) {
    bool found = false;
    for (const auto& iv : roots)
      if (iv.lo <= want && mpq_class(want) <= iv.hi) found = true;
    CHECK(found);
  }
}

TEST_CASE("degree-one polynomial isolates exactly") {
  IntPoly p = IntPoly::from_si({-5, 1});
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].exact());
  CHECK(roots[0].lo == 5);
  RealBall b = interval_to_ball(p, roots[0], 128, -80);
  CHECK(b.is_exact());
  CHECK(b.contains(mpq_class(5)));
}

TEST_CASE("refinement of sqrt(2) matches the bisection oracle") {
  IntPoly p = IntPoly::from_si({-2, 0, 1});
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 2);
  const auto& pos = roots[1];
  mpq_class tol(mpz_class(1), mpz_class(1) << 80);
  mpq_class ref = bisect_oracle(p, pos.lo, pos.hi, tol);
  RealBall b = interval_to_ball(p, pos, 160, -70);
  CHECK(b.rad_d() <= std::ldexp(1.0, -70));
  // oracle value is within 2^-80 of the root, so an inflated oracle ball
  // must overlap the certified one
  RealBall oracle = RealBall::from_rational(ref, 160) +
                    RealBall::from_decimal("0", "1e-24", 160);
  CHECK(b.overlaps(oracle));
  CHECK(doctest::Approx(b.mid_d()).epsilon(1e-12) == 1.4142135623730951);
}

TEST_CASE("plastic number root of X^3 - X - 1") {
  IntPoly p = IntPoly::from_si({-1, -1, 0, 1});
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 1);
  RealBall b = interval_to_ball(p, roots[0], 256, -60);
  mpq_class tol(mpz_class(1), mpz_class(1) << 70);
  mpq_class ref = bisect_oracle(p, mpq_class(1), mpq_class(2), tol);
  RealBall oracle = RealBall::from_rational(ref, 256) +
                    RealBall::from_decimal("0", "1e-21", 256);
  CHECK(b.overlaps(oracle));
  CHECK(doctest::Approx(b.mid_d()).epsilon(1e-13) == 1.3247179572447458);
}

TEST_CASE("complex isolation covers all roots disjointly") {
  // (X^2+1)(X^2-2)(X-3): roots +-i, +-sqrt2, 3
  IntPoly p = IntPoly::from_si({1, 0, 1}) * IntPoly::from_si({-2, 0, 1}) *
              IntPoly::from_si({-3, 1});
  auto boxes = isolate_all_roots(p, 128);
  REQUIRE(boxes.size() == 5);
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j)
      CHECK_FALSE(boxes[i].overlaps(boxes[j]));
  for (const auto& b : boxes) CHECK(p.eval(b).contains_zero());
  int complex_boxes = 0, real_boxes = 0;
  for (const auto& b : boxes)
    (b.im().contains_zero() ? real_boxes : complex_boxes)++;
  CHECK(real_boxes == 3);
  CHECK(complex_boxes == 2);
}

TEST_CASE("factorization recovers irreducible factors") {
  IntPoly x2m2 = IntPoly::from_si({-2, 0, 1});
  IntPoly x2p1 = IntPoly::from_si({1, 0, 1});
  IntPoly xm3 = IntPoly::from_si({-3, 1});
  auto factors = factor_squarefree(x2m2 * x2p1 * xm3);
  REQUIRE(factors.size() == 3);
  CHECK(factors[0] == xm3);
  CHECK(factors[1] == x2m2);
  CHECK(factors[2] == x2p1);

  auto irred = factor_squarefree(IntPoly::from_si({-1, -1, 0, 1}));
  REQUIRE(irred.size() == 1);
  CHECK(irred[0] == IntPoly::from_si({-1, -1, 0, 1}));

  // X^4 - 4 = (X^2-2)(X^2+2)
  auto f4 = factor_squarefree(IntPoly::from_si({-4, 0, 0, 0, 1}));
  REQUIRE(f4.size() == 2);
  CHECK(f4[0] == IntPoly::from_si({-2, 0, 1}));
  CHECK(f4[1] == IntPoly::from_si({2, 0, 1}));

  // degree six: norm-poly style product of two cubics
  IntPoly c1 = IntPoly::from_si({-1, -1, 0, 1});
  IntPoly c2 = IntPoly::from_si({1, -1, 0, 1});
  auto f6 = factor_squarefree(c1 * c2);
  REQUIRE(f6.size() == 2);
  CHECK((f6[0] == c1 || f6[0] == c2));
  CHECK((f6[1] == c1 || f6[1] == c2));
  CHECK_FALSE(f6[0] == f6[1]);
}

TEST_CASE("minimal polynomial attribution by root") {
  IntPoly c1 = IntPoly::from_si({-1, -1, 0, 1});  // plastic root ~1.3247
  IntPoly x2m2 = IntPoly::from_si({-2, 0, 1});
  IntPoly prod = c1 * x2m2;
  auto ivs = isolate_real_roots(prod);
  // the positive sqrt(2) root: bracket it and build a box
  for (const auto& iv : ivs) {
    if (iv.lo > mpq_class(13, 10) && !iv.exact()) {
      RealBall b = interval_to_ball(prod, iv, 128, -40);
      IntPoly mp = minimal_polynomial_of_root(prod, ComplexBall::from_real(b));
      double mid = b.mid_d();
      if (mid > 1.40 && mid < 1.43) CHECK(mp == x2m2);
      if (mid > 1.31 && mid < 1.34) CHECK(mp == c1);
    }
  }
}
