#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "betarep/errors.hpp"

namespace betarep {

// Real ball: midpoint at a chosen precision, radius at a small fixed
// precision, always rounded up. Every operation returns a ball that
// contains the exact image of every member of its input balls.
class RealBall {
 public:
  static constexpr long kRadPrec = 64;

  RealBall() : RealBall(kStartPrec) {}
  explicit RealBall(long prec);
  RealBall(const RealBall& o);
  RealBall(RealBall&& o) noexcept;
  RealBall& operator=(const RealBall& o);
  RealBall& operator=(RealBall&& o) noexcept;
  ~RealBall();

  static RealBall exact_si(long v, long prec = kStartPrec);
  static RealBall exact_int(const mpz_class& v, long prec);
  static RealBall from_rational(const mpq_class& q, long prec);
  // Decimal strings, e.g. ("2.302585", "1e-20").
  static RealBall from_decimal(const std::string& mid, const std::string& rad,
                               long prec);
  static RealBall from_endpoints_mpfr(mpfr_srcptr lo, mpfr_srcptr hi,
                                      long prec);

  long prec() const { return prec_; }
  bool is_exact() const { return mpfr_zero_p(rad_); }

  // Certified endpoints (outward rounded).
  void lower(mpfr_ptr out) const;  // RNDD
  void upper(mpfr_ptr out) const;  // RNDU
  double lower_d() const;
  double upper_d() const;
  double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
  double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_srcptr rad() const { return rad_; }

  std::string mid_str(size_t digits = 20) const;
  std::string rad_str(size_t digits = 5) const;

  RealBall operator-() const;
  RealBall operator+(const RealBall& o) const;
  RealBall operator-(const RealBall& o) const;
  RealBall operator*(const RealBall& o) const;
  RealBall operator/(const RealBall& o) const;  // DomainError if o contains 0
  RealBall& operator+=(const RealBall& o) { return *this = *this + o; }
  RealBall& operator-=(const RealBall& o) { return *this = *this - o; }
  RealBall& operator*=(const RealBall& o) { return *this = *this * o; }
  RealBall& operator/=(const RealBall& o) { return *this = *this / o; }

  RealBall abs() const;
  RealBall inv() const;
  RealBall sqrt() const;  // DomainError if entirely negative; clamps at 0
  RealBall log() const;   // DomainError unless interval strictly positive
  RealBall pow_ui(unsigned long e) const;
  RealBall mul_2si(long e) const;  // exact scaling by 2^e

  static RealBall max(const RealBall& a, const RealBall& b);
  static RealBall min(const RealBall& a, const RealBall& b);
  // Hull of both intervals.
  static RealBall join(const RealBall& a, const RealBall& b);
  RealBall max0() const;  // max(x, 0) pointwise (for log+ style clamps)

  bool contains_zero() const;
  bool contains(const mpq_class& q) const;
  bool is_positive() const;  // entire interval > 0
  bool is_negative() const;
  // Certified strict comparison: every member of *this < every member of o.
  bool lt(const RealBall& o) const;
  bool le(const RealBall& o) const;
  bool overlaps(const RealBall& o) const;

  friend class ComplexBall;

 private:
  void bump_rounding(int ternary);
  static void rad_add(mpfr_ptr r, mpfr_srcptr a);  // r += a, RNDU

  mpfr_t mid_;
  mpfr_t rad_;
  long prec_;
};

RealBall ball_log(const RealBall& x);  // alias used by the bounds code

class ComplexBall {
 public:
  ComplexBall() = default;
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  static ComplexBall from_real(const RealBall& re);
  static ComplexBall exact_si(long re, long im, long prec);

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  long prec() const { return re_.prec(); }

  ComplexBall operator-() const;
  ComplexBall operator+(const ComplexBall& o) const;
  ComplexBall operator-(const ComplexBall& o) const;
  ComplexBall operator*(const ComplexBall& o) const;
  ComplexBall operator/(const ComplexBall& o) const;
  ComplexBall conj() const;
  ComplexBall pow_ui(unsigned long e) const;

  RealBall abs() const;
  RealBall abs_sq() const;
  bool contains_zero() const;
  bool overlaps(const ComplexBall& o) const;
  // true if the box of o is contained in the box of *this
  bool contains_box(const ComplexBall& o) const;

 private:
  RealBall re_, im_;
};

// Horner evaluation of a polynomial with ball coefficients (ascending).
RealBall eval_poly(const std::vector<RealBall>& coeffs, const RealBall& x);
ComplexBall eval_poly(const std::vector<ComplexBall>& coeffs,
                      const ComplexBall& x);

}  // namespace betarep
