#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "betarep/baseexp.hpp"
#include "betarep/recurrence.hpp"

namespace betarep {

// One audited constant in the derivation trace.
struct TraceEntry {
  std::string name;
  std::string formula;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string value;
};

struct MatveevInput {
  int t = 1;           // number of terms
  int D = 1;           // field degree
  mpz_class B = 1;     // max |b_j|
  std::vector<RealBall> hprimes;  // t upper bounds h'(x_j), each >= 0.16

  void validate() const;
};

// max(D h, |log x|, 0.16) as an upper-biased ball.
RealBall h_prime(const RealBall& h, const RealBall& logx, int D);

// Certified enclosure of the Matveev bound
//   -3 * 30^{t+4} (t+1)^{5.5} D^2 (1+log D)(1+log tB) prod h'(x_j);
// log|Lambda| > lower endpoint whenever Lambda != 0.
RealBall matveev_lower(const MatveevInput& inp, long prec = 256);

struct MagnitudeConstants {
  long n0 = 0;     // |A| z^n >= 2R from here on
  RealBall C0;     // |n log z1 - (2l+m) log beta| <= C0 for solutions, n >= n0
  std::vector<TraceEntry> trace;
};

MagnitudeConstants magnitude_constants(const DominantForm& df,
                                       const BaseSpec& base, long prec = 256);

// Explicit constants for the three Lambda lemmas:
//   |Lambda_1| <= C1 beta^-l          log|Lambda_1| > -K1 (1+log 3n)
//   |Lambda_2| <= C2 beta^-m          log|Lambda_2| > -(K2s l + K2i)(1+log 3n)
//   |Lambda_3| <= C3 z1^-n            log|Lambda_3| > -(K3s (l+2m) + K3i)(1+log 3n)
// valid for every solution of the pattern equation with n >= max(n0, 1).
struct EffectiveConstants {
  long n0 = 0;
  RealBall C0;
  RealBall C1, K1;
  RealBall C2, K2_slope, K2_icept;
  RealBall C3, K3_slope, K3_icept;
  RealBall cB;   // B = max(1, n, 2l+m) <= cB * n for n >= max(n0, 1)
  RealBall G;    // shared Matveev prefactor
  int D = 1;     // compositum degree used in Matveev
  int a1_sign = 1;
  bool certifying = true;  // false when the nonvanishing route is unavailable
  std::vector<TraceEntry> trace;
};

EffectiveConstants lambda_constants(const CharacteristicData& cd,
                                    const BaseSpec& base, long prec = 256);

// Certified enclosures of |Lambda_1|, |Lambda_2|, |Lambda_3| for a solution
// tuple (exactness of the tuple is the caller's contract).
std::array<RealBall, 3> lambda_residuals(unsigned long n, long l, long m,
                                         long d1, long d2,
                                         const CharacteristicData& cd,
                                         const BaseSpec& base, long prec = 256);

enum class Nonvanishing { AllN, AtMostOneN };
std::string nonvanishing_str(Nonvanishing nv);

// AllN when Lambda_i = 0 is impossible for every n >= 1: either A1 in K
// (Lemma on z1-powers applies directly) or A1 in K(z1) with R < |A1| z1
// (conjugating Lambda_i = 0 forces |A1| z1^n <= R).
Nonvanishing nonvanishing_certificate(const CharacteristicData& cd,
                                      const FieldDesc& K);

struct BoundResult {
  mpz_class n_max;
  bool effective = false;
  std::vector<TraceEntry> trace;
  std::vector<mpz_class> iterates;  // fixed-point path
};

// Composes the three lemma bounds into n <= Phi(n), Phi a nonnegative cubic
// in u = 1 + log 3n, and returns the least fixed point (>= 16) merged with
// the small-n thresholds. `effective` reflects the nonvanishing verdict.
BoundResult solve_bound_chain(const EffectiveConstants& ec,
                              const CharacteristicData& cd,
                              const BaseSpec& base);

// Least N >= 16 with c3 u^3 + c2 u^2 + c1 u + c0 <= N, u = 1 + log 3N;
// exposed for direct testing of the fixed-point iteration.
std::pair<mpz_class, std::vector<mpz_class>> fixed_point_polylog(
    const RealBall& c3, const RealBall& c2, const RealBall& c1,
    const RealBall& c0, int max_iters = 200);

}  // namespace betarep
