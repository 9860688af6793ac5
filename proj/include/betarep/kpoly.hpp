#pragma once

#include <vector>

#include "betarep/algebraic.hpp"
#include "betarep/field.hpp"

namespace betarep {

// Polynomial over K, coefficients ascending.
class KPoly {
 public:
  KPoly() = default;
  KPoly(FieldDesc K, std::vector<KElem> coeffs);
  static KPoly from_int_poly(const FieldDesc& K, const IntPoly& p);
  static KPoly constant(const KElem& c);

  const FieldDesc& field() const { return K_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const KElem& operator[](size_t i) const { return c_[i]; }
  const std::vector<KElem>& coeffs() const { return c_; }
  const KElem& lead() const { return c_.back(); }

  KPoly operator+(const KPoly& o) const;
  KPoly operator-(const KPoly& o) const;
  KPoly operator*(const KPoly& o) const;
  KPoly operator*(const KElem& s) const;
  KPoly derivative() const;
  KPoly monic() const;

  // quotient and remainder by a nonzero divisor (field coefficients)
  std::pair<KPoly, KPoly> divmod(const KPoly& o) const;
  KElem eval(const KElem& x) const;
  RealBall eval_ball(const RealBall& x, long prec) const;
  ComplexBall eval_ball(const ComplexBall& x, long prec) const;

  // Norm to Q[X]: p * p^sigma with integer coefficients after clearing
  // denominators; equals p itself (cleared) when K = Q.
  IntPoly norm_poly() const;
  KPoly conj() const;  // coefficient-wise Galois conjugate

 private:
  void normalize();
  FieldDesc K_;
  std::vector<KElem> c_;
};

KPoly kpoly_gcd(const KPoly& a, const KPoly& b);  // monic gcd

// Arithmetic in K(theta) = K[X]/(modulus), modulus monic irreducible over K.
class NumberField {
 public:
  NumberField(FieldDesc K, KPoly modulus);

  const FieldDesc& base_field() const { return K_; }
  const KPoly& modulus() const { return mod_; }
  int extension_degree() const { return mod_.degree(); }
  int absolute_degree() const { return mod_.degree() * K_.degree(); }

  KPoly reduce(const KPoly& p) const;
  KPoly mul(const KPoly& a, const KPoly& b) const;
  KPoly inv(const KPoly& a) const;  // DomainError when not invertible
  KPoly div(const KPoly& a, const KPoly& b) const;

  // Evaluates a reduced element at a ball enclosure of theta.
  RealBall eval_ball(const KPoly& a, const RealBall& theta, long prec) const;

  // True iff the element is a constant (lies in K).
  bool is_constant(const KPoly& a) const;

 private:
  FieldDesc K_;
  KPoly mod_;
};

}  // namespace betarep
