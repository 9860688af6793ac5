#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betarep/bounds.hpp"

namespace betarep {

struct Solution {
  unsigned long n = 0;
  long l = 1, m = 1, d1 = 1, d2 = 0;
  KElem value;
  std::optional<DigitString> digits;  // integer bases only

  PalindromicPattern pattern() const { return {d1, d2, l, m}; }
  bool operator==(const Solution& o) const {
    return n == o.n && l == o.l && m == o.m && d1 == o.d1 && d2 == o.d2;
  }
};

struct SearchOptions {
  bool distinct_digits = false;
  long precision = 256;
  int jobs = 1;
  bool force_generic_path = false;  // exercise the O_K equality path on
                                    // integer bases (dual-route testing)
};

enum class Completeness { Complete, PartialUpTo };

struct SearchReport {
  RecurrenceSpec spec;
  BaseSpec base;
  unsigned long n_lo = 0, n_hi = 0;
  SearchOptions options;
  std::vector<Solution> solutions;  // sorted by (n, l, m, d1, d2)
  HypothesisReport hypotheses;
  Completeness status = Completeness::PartialUpTo;
  bool n_max_known = false;
  mpz_class n_max;  // certified index bound when n_max_known
  bool effective = false;
  std::vector<TraceEntry> trace;  // derivation trace (certify runs)
  std::string failure;            // nonempty when certification failed
  double timing_ms = 0.0;
};

// Interval of admissible s = 2l + m for index n; empty when lo > hi.
struct SWindow {
  long lo = 3, hi = 2;
  bool empty() const { return lo > hi; }
};

SWindow window(unsigned long n, const CharacteristicData& cd,
               const BaseSpec& base, const MagnitudeConstants& mc,
               long prec = 256);

// Exhaustive exact enumeration over n in [n_lo, n_hi].
SearchReport enumerate_solutions(const RecurrenceSpec& spec,
                                 const BaseSpec& base, unsigned long n_lo,
                                 unsigned long n_hi,
                                 const SearchOptions& options = {});

// Full pipeline: hypotheses -> constants -> nonvanishing -> bound chain ->
// enumeration over [0, min(n_max, cap)].
SearchReport certify(const RecurrenceSpec& spec, const BaseSpec& base,
                     unsigned long cap, const SearchOptions& options = {});

// Re-verifies a reported solution by independent recomputation of both
// sides of the defining equation.
bool verify_solution(const Solution& sol, const RecurrenceSpec& spec,
                     const BaseSpec& base);

}  // namespace betarep
