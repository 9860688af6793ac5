#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "betarep/ball.hpp"

namespace betarep {

// Integer polynomial, coefficients ascending (constant term first, matching
// the serialized form).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly from_si(std::initializer_list<long> coeffs);
  static IntPoly x_minus(const mpq_class& r);  // den*X - num, primitive

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& operator[](size_t i) const { return c_[i]; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& lead() const { return c_.back(); }

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly derivative() const;

  mpz_class content() const;
  IntPoly primitive() const;  // content removed, leading coefficient > 0
  IntPoly squarefree_part() const;
  bool is_squarefree() const;

  mpq_class eval(const mpq_class& x) const;
  mpz_class eval(const mpz_class& x) const;
  int sign_at(const mpq_class& x) const;
  RealBall eval(const RealBall& x) const;
  ComplexBall eval(const ComplexBall& x) const;
  RealBall eval_deriv(const RealBall& x) const;

  // Exact division: returns quotient iff o divides *this exactly over Z.
  std::optional<IntPoly> divide_exact(const IntPoly& o) const;

  // Cauchy bound: all complex roots have |z| < bound.
  mpq_class root_bound() const;

  // Number of distinct real roots in (a, b] (requires squarefree input).
  int sturm_count(const mpq_class& a, const mpq_class& b) const;
  int count_real_roots() const;

  std::string str() const;  // human-readable, for diagnostics

 private:
  void normalize();
  std::vector<mpz_class> c_;
};

// Isolating interval for one real root: exact iff lo == hi.
struct RealRootInterval {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
};

// Disjoint isolating intervals for all real roots of a squarefree
// polynomial, sorted increasing. Endpoints are never roots unless exact.
std::vector<RealRootInterval> isolate_real_roots(const IntPoly& p);

// Shrinks an isolating interval by bisection until hi - lo <= width.
RealRootInterval refine_interval(const IntPoly& p, RealRootInterval iv,
                                 const mpq_class& width);

// Converts an isolating interval to a ball at the given precision,
// refining (bisection + interval Newton) until radius <= 2^rad_exp2.
RealBall interval_to_ball(const IntPoly& p, const RealRootInterval& iv,
                          long prec, long rad_exp2);

// Certified enclosures of all deg(p) roots of a squarefree p: pairwise
// disjoint complex boxes, each containing exactly one root (Weierstrass
// inclusion disks from a Durand-Kerner run). Sorted by (Re, Im) midpoint.
std::vector<ComplexBall> isolate_all_roots(const IntPoly& p, long prec);

// Irreducible factors over Z (primitive, positive leading coefficient),
// sorted by degree then coefficients; multiplicities not returned (input is
// made squarefree first). Content is discarded.
std::vector<IntPoly> factor_squarefree(const IntPoly& p);

// The unique irreducible factor of p vanishing on an enclosure of a root.
// `root` must contain exactly one root of squarefree p.
IntPoly minimal_polynomial_of_root(const IntPoly& p, const ComplexBall& root);

}  // namespace betarep
