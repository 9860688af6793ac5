#pragma once

#include <stdexcept>
#include <string>

namespace betarep {

// Precision policy: computations start here and double until the cap,
// then give up with PrecisionExhausted so nothing can loop forever.
inline constexpr long kStartPrec = 128;
inline constexpr long kMaxPrec = 8192;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RepeatedRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedBase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Runs f(prec) with doubling precision until it returns a value.
// f signals "not enough precision" by returning an empty optional.
template <typename F>
auto with_rising_prec(F&& f, long start = kStartPrec, long cap = kMaxPrec)
    -> typename std::invoke_result_t<F, long>::value_type {
  for (long prec = start; prec <= cap; prec *= 2) {
    if (auto r = f(prec)) return *r;
  }
  throw PrecisionExhausted("precision cap " + std::to_string(cap) +
                           " bits reached");
}

}  // namespace betarep
