#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betarep/field.hpp"

namespace betarep {

// Base beta with digit alphabet {0, ..., |N(beta)|-1}. Constructed through
// make_base, which certifies: beta an algebraic integer, real, > 1, non-unit
// (|N(beta)| > 1), and the digits pairwise incongruent mod beta O_K.
struct BaseSpec {
  FieldDesc K;
  KElem beta;
  mpz_class norm_abs;

  bool is_integer_base() const { return beta.is_rational(); }
  mpz_class integer_base() const { return beta.as_rational().get_num(); }
  RealBall beta_ball(long prec) const { return beta.to_ball(prec); }
};

// UnsupportedBase on any certification failure.
BaseSpec make_base(const FieldDesc& K, const KElem& beta);
BaseSpec make_base_integer(long b);  // K = Q, beta = b >= 2

// Digit sequence, most significant first; "0" is the single digit 0.
struct DigitString {
  std::vector<long> digits;

  bool operator==(const DigitString& o) const { return digits == o.digits; }
  size_t size() const { return digits.size(); }
  // decimal digits joined ("151"), dot-separated when the alphabet
  // needs digits above 9 ("12.0.7")
  std::string str(const BaseSpec& base) const;
};

// d1^l d2^m d1^l with d1 >= 1 and l, m >= 1.
struct PalindromicPattern {
  long d1 = 1, d2 = 0, l = 1, m = 1;

  bool operator==(const PalindromicPattern& o) const {
    return d1 == o.d1 && d2 == o.d2 && l == o.l && m == o.m;
  }
  long total_len() const { return 2 * l + m; }
  void validate(const BaseSpec& base) const;
};

// Greedy base-beta expansion; nullopt when alpha has no expansion within
// digit_cap steps. InvalidInput if alpha is not an algebraic integer.
std::optional<DigitString> expand(const KElem& alpha, const BaseSpec& base,
                                  long digit_cap);
std::optional<DigitString> expand(const KElem& alpha, const BaseSpec& base);
long default_digit_cap(const KElem& alpha);

// Exact Horner evaluation in O_K.
KElem evaluate(const DigitString& s, const BaseSpec& base);

// Digit string of the pattern.
DigitString render(const PalindromicPattern& p);

// Exact value of the palindromic concatenation via the closed form
// (d1 b^{2l+m} - (d1-d2) b^{l+m} + (d1-d2) b^l - d1) / (b - 1),
// self-checked against the digit sum.
KElem pattern_value(const PalindromicPattern& p, const BaseSpec& base);

// All decompositions of s as d1^l d2^m d1^l, increasing l.
std::vector<PalindromicPattern> match_pattern(const DigitString& s);

// Base-b digit string of a nonnegative integer (b >= 2).
DigitString digits_of_integer(const mpz_class& v, const mpz_class& b);

}  // namespace betarep
