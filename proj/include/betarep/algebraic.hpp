#pragma once

#include <optional>
#include <vector>

#include "betarep/ball.hpp"
#include "betarep/field.hpp"
#include "betarep/intpoly.hpp"

namespace betarep {

// A real or complex algebraic number: irreducible primitive integer minimal
// polynomial (positive leading coefficient) plus an isolating box containing
// exactly that one root. Refining never changes which root is designated.
class AlgebraicNumber {
 public:
  // p need not be irreducible or squarefree; `box` must contain exactly one
  // root of its squarefree part.
  static AlgebraicNumber from_poly_root(const IntPoly& p,
                                        const ComplexBall& box);
  // index into the increasing list of real roots of p's squarefree part
  static AlgebraicNumber from_real_root(const IntPoly& p, int index);
  static AlgebraicNumber from_rational(const mpq_class& q);
  static AlgebraicNumber from_kelem(const KElem& x);

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const ComplexBall& isolator() const { return isolator_; }
  bool is_real() const { return real_; }
  bool is_rational() const { return minpoly_.degree() == 1; }
  mpq_class as_rational() const;

  // Shrinks the isolator until both coordinate radii are <= 2^rad_exp2.
  void refine(long rad_exp2);
  // Real part enclosure at the given tightness (requires is_real()).
  RealBall real_ball(long rad_exp2) const;

  // Exact comparison with a rational in the real embedding (requires
  // is_real()).
  int cmp(const mpq_class& q) const;

  // No when deg(minpoly) does not divide [K:Q]; Undetermined otherwise.
  enum class Membership { No, Undetermined };
  Membership member_of(const FieldDesc& K) const;

  // Exact membership decision for K of degree <= 2 (always conclusive).
  bool in_field(const FieldDesc& K) const;

 private:
  AlgebraicNumber(IntPoly mp, ComplexBall box, bool real,
                  std::optional<RealRootInterval> iv);
  IntPoly minpoly_;
  ComplexBall isolator_;
  bool real_ = false;
  std::optional<RealRootInterval> interval_;  // kept when the root is real
};

// Logarithmic Weil height h(x) = (1/deg)(log|lead| + sum log+ |root_i|)
// over all conjugates, enclosed to radius <= 2^tol_exp2.
RealBall weil_height(const AlgebraicNumber& x, long tol_exp2 = -40);

// Upper bound convenience for K-elements (degree <= 2, exact minpoly).
RealBall weil_height(const KElem& x, long tol_exp2 = -40);

// Exact dyadic value of an mpfr number.
mpq_class mpq_from_mpfr(mpfr_srcptr x);

// Number of real roots of squarefree p in the closed interval [lo, hi].
int count_real_roots_closed(const IntPoly& p, const mpq_class& lo,
                            const mpq_class& hi);

}  // namespace betarep
