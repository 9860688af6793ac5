#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "betarep/ball.hpp"
#include "betarep/intpoly.hpp"

namespace betarep {

// K = Q (d absent) or a real quadratic field Q(sqrt d), d squarefree > 1.
class FieldDesc {
 public:
  FieldDesc() = default;  // Q
  static FieldDesc rationals() { return FieldDesc(); }
  static FieldDesc quadratic(long d);  // validates d squarefree > 1

  bool is_rational() const { return !d_.has_value(); }
  long d() const { return *d_; }
  int degree() const { return d_ ? 2 : 1; }
  bool operator==(const FieldDesc& o) const { return d_ == o.d_; }
  std::string str() const;

 private:
  std::optional<long> d_;
};

// Element of K: (a + b sqrt(d)) / den in lowest terms, den > 0; b = 0 when
// K = Q. Immutable value type; all arithmetic is exact.
class KElem {
 public:
  KElem() : a_(0), b_(0), den_(1) {}
  KElem(FieldDesc K, mpz_class a, mpz_class b, mpz_class den);
  static KElem from_int(const FieldDesc& K, const mpz_class& v);
  static KElem from_rational(const FieldDesc& K, const mpq_class& v);
  static KElem sqrt_gen(const FieldDesc& K);  // sqrt(d); K must be quadratic

  const FieldDesc& field() const { return K_; }
  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == den_ && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  mpq_class as_rational() const;  // requires is_rational()

  KElem operator-() const;
  KElem operator+(const KElem& o) const;
  KElem operator-(const KElem& o) const;
  KElem operator*(const KElem& o) const;
  KElem operator/(const KElem& o) const;  // exact field division
  bool operator==(const KElem& o) const;

  KElem conj() const;       // a - b sqrt(d) (identity on Q)
  mpq_class norm() const;   // field norm; for K = Q this is the value itself
  mpq_class trace() const;  // a + conj(a); for K = Q the value itself
  KElem inv() const;
  KElem pow(long e) const;  // negative exponents allowed for nonzero values

  // Algebraic integer test via integrality of trace and norm.
  bool is_integral() const;
  // Divisibility in O_K: q | *this iff *this / q is an algebraic integer.
  bool divisible_by(const KElem& q) const;

  // Exact sign in the real embedding sqrt(d) > 0.
  int sign() const;
  // Exact comparison with a rational in the real embedding.
  int cmp(const mpq_class& q) const;
  bool operator<(const KElem& o) const { return (*this - o).sign() < 0; }

  // Monic rational minimal polynomial scaled to primitive integer form.
  IntPoly min_poly() const;

  RealBall to_ball(long prec) const;
  std::string str() const;

 private:
  void reduce();
  FieldDesc K_;
  mpz_class a_, b_, den_;
};

}  // namespace betarep
