#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "betarep/algebraic.hpp"
#include "betarep/field.hpp"
#include "betarep/kpoly.hpp"

namespace betarep {

// Order-3 recurrence a_{n+3} = a a_{n+2} + b a_{n+1} + c a_n over O_K with
// characteristic polynomial f(X) = X^3 - aX^2 - bX - c.
struct RecurrenceSpec {
  FieldDesc K;
  KElem a, b, c;
  KElem a0, a1, a2;
  std::string name;  // preset name when loaded from the catalog

  KElem discriminant() const;
  KPoly char_poly() const;
  void validate() const;  // InvalidInput unless coefficients/initials in O_K
};

// Exact n-th term; iterative for small n, companion-matrix powering beyond.
KElem term(const RecurrenceSpec& spec, unsigned long n);
// Test/oracle hook: same result via 3x3 binary powering for any n.
KElem term_matrix_pow(const RecurrenceSpec& spec, unsigned long n);

enum class Verdict { Pass, Fail, Undetermined };
std::string verdict_str(Verdict v);

struct HypothesisReport {
  Verdict z1_real_gt1 = Verdict::Undetermined;
  Verdict z2_le1 = Verdict::Undetermined;
  Verdict z3_le1 = Verdict::Undetermined;
  Verdict a1_nonzero = Verdict::Undetermined;
  Verdict z1_not_in_K = Verdict::Undetermined;
  Verdict effective_eligible = Verdict::Undetermined;
  std::string detail;  // human-readable notes (repeated roots etc.)

  bool all_pass() const {
    return z1_real_gt1 == Verdict::Pass && z2_le1 == Verdict::Pass &&
           z3_le1 == Verdict::Pass && a1_nonzero == Verdict::Pass &&
           z1_not_in_K == Verdict::Pass;
  }
};

// Certified characteristic data: roots ordered with z1 the real root of
// largest modulus (ties to the positive one), and Binet coefficients.
struct CharacteristicData {
  RecurrenceSpec spec;
  AlgebraicNumber z1, z2, z3;       // z1 real; z2/z3 real or conjugate pair
  ComplexBall z2_ball, z3_ball;     // working enclosures
  RealBall z1_ball;
  ComplexBall A1, A2, A3;           // Binet coefficients (enclosures)
  KPoly z1_minpoly_K;               // minimal polynomial of z1 over K (monic)
  NumberField tower;                // K(z1) = K[X]/(z1_minpoly_K)
  KPoly A1_exact;                   // A1 as element of K(z1), reduced
  bool a1_in_base_field = false;    // A1 in K (exactly)
  long prec = 0;

  int dominant_degree() const { return z1_minpoly_K.degree(); }
  int compositum_degree() const {
    return z1_minpoly_K.degree() * spec.K.degree();
  }
};

// RepeatedRoots if disc(f) = 0; PrecisionExhausted on cap.
CharacteristicData characteristic_data(const RecurrenceSpec& spec,
                                       long prec = 256);

HypothesisReport check_hypotheses(const CharacteristicData& cd);
HypothesisReport check_hypotheses(const RecurrenceSpec& spec, long prec = 256);

// a_n = A z^n + B_n with |B_n| <= R for all n >= 0.
struct DominantForm {
  ComplexBall A;
  AlgebraicNumber z;
  RealBall R;  // upper bound of |A2| + |A3|
};

// HypothesisViolation unless check_hypotheses passes.
DominantForm to_dominant_form(const CharacteristicData& cd);

// Preset catalog (JSON data file; see io.hpp for the loader).
struct Preset {
  std::string name;
  RecurrenceSpec spec;
  std::string provenance;
};

}  // namespace betarep
