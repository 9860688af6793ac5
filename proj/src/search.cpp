#include "betarep/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace betarep {

namespace {

struct TermIter {
  const RecurrenceSpec& spec;
  unsigned long n;
  KElem x0, x1, x2;  // a_n, a_{n+1}, a_{n+2}

  TermIter(const RecurrenceSpec& s, unsigned long start)
      : spec(s), n(start), x0(term(s, start)), x1(term(s, start + 1)),
        x2(term(s, start + 2)) {}
  const KElem& current() const { return x0; }
  void advance() {
    KElem x3 = spec.a * x2 + spec.b * x1 + spec.c * x0;
    x0 = std::move(x1);
    x1 = std::move(x2);
    x2 = std::move(x3);
    ++n;
  }
};

// Window machinery shared across worker threads: plain balls only.
struct WindowCtx {
  bool have_magnitude = false;
  long n0 = 0;
  RealBall C0, logz1, logbeta_lo, logbeta;
  long prec = 256;
};

SWindow window_impl(unsigned long n, const KElem& an, const BaseSpec& base,
                    const WindowCtx& wc) {
  SWindow w;
  w.lo = 3;
  if (wc.have_magnitude && static_cast<long>(n) >= wc.n0) {
    RealBall nn = RealBall::exact_int(mpz_class(n), wc.prec);
    RealBall lo = (nn * wc.logz1 - wc.C0) / wc.logbeta;
    RealBall hi = (nn * wc.logz1 + wc.C0) / wc.logbeta;
    mpfr_t t;
    mpfr_init2(t, wc.prec);
    lo.lower(t);
    mpfr_ceil(t, t);
    long slo = mpfr_get_si(t, MPFR_RNDN);
    hi.upper(t);
    mpfr_floor(t, t);
    long shi = mpfr_get_si(t, MPFR_RNDN);
    mpfr_clear(t);
    w.lo = std::max(3L, slo);
    w.hi = shi;
    return w;
  }
  // fallback: 3 <= s <= digit-length bound of |a_n| + 1
  if (an.sign() <= 0) {
    w.hi = 2;  // patterns are positive
    return w;
  }
  if (base.is_integer_base() && an.is_rational()) {
    DigitString ds = digits_of_integer(an.as_rational().get_num(),
                                       base.integer_base());
    w.hi = static_cast<long>(ds.size()) + 1;
    return w;
  }
  // s <= log(a_n)/log(beta) + 1 via balls (value >= beta^{s-1})
  for (long p = wc.prec;; p *= 2) {
    if (p > kMaxPrec) throw PrecisionExhausted("window length bound");
    RealBall v = an.to_ball(p);
    if (!v.is_positive()) continue;
    RealBall bound = v.log() / wc.logbeta;
    mpfr_t t;
    mpfr_init2(t, p);
    bound.upper(t);
    mpfr_floor(t, t);
    w.hi = mpfr_get_si(t, MPFR_RNDN) + 1;
    mpfr_clear(t);
    return w;
  }
}

// Powers of beta and the two pattern building blocks
//   P(l, m) = (b^{2l+m} - b^{l+m} + b^l - 1)/(b-1),  Q(l, m) = b^l (b^m-1)/(b-1)
// so that value(d1, d2, l, m) = d1 P + d2 Q.
struct PatternBlocks {
  const BaseSpec& base;
  KElem bm1;
  std::vector<KElem> pow;  // beta^i

  explicit PatternBlocks(const BaseSpec& b)
      : base(b), bm1(b.beta - KElem::from_int(b.K, 1)) {
    pow.push_back(KElem::from_int(b.K, 1));
  }
  const KElem& power(long i) {
    while (static_cast<long>(pow.size()) <= i) pow.push_back(pow.back() * base.beta);
    return pow[i];
  }
  KElem P(long l, long m) {
    KElem num = power(2 * l + m) - power(l + m) + power(l) -
                KElem::from_int(base.K, 1);
    return num / bm1;
  }
  KElem Q(long l, long m) {
    KElem num = power(l + m) - power(l);
    return num / bm1;
  }
};

void emit(std::vector<Solution>& out, unsigned long n, long l, long m, long d1,
          long d2, const KElem& value, const BaseSpec& base,
          const SearchOptions& opt, const std::optional<DigitString>& digits) {
  if (opt.distinct_digits && d1 == d2) return;
  (void)base;
  out.push_back(Solution{n, l, m, d1, d2, value, digits});
}

// integer fast path: expand and run the matcher
void scan_integer(const RecurrenceSpec& spec, const BaseSpec& base,
                  unsigned long lo, unsigned long hi,
                  const SearchOptions& opt, std::vector<Solution>& out) {
  mpz_class b = base.integer_base();
  TermIter it(spec, lo);
  for (unsigned long n = lo; n <= hi; ++n, it.advance()) {
    const KElem& v = it.current();
    if (v.sign() <= 0) continue;
    DigitString ds = digits_of_integer(v.as_rational().get_num(), b);
    for (const auto& p : match_pattern(ds))
      emit(out, n, p.l, p.m, p.d1, p.d2, v, base, opt, ds);
  }
}

// generic path: exact O_K equality over the windowed (s, l, m, d1) space
void scan_generic(const RecurrenceSpec& spec, const BaseSpec& base,
                  unsigned long lo, unsigned long hi, const SearchOptions& opt,
                  const WindowCtx& wc, std::vector<Solution>& out) {
  PatternBlocks blocks(base);
  long nd = base.norm_abs.get_si();
  TermIter it(spec, lo);
  for (unsigned long n = lo; n <= hi; ++n, it.advance()) {
    const KElem& an = it.current();
    SWindow w = window_impl(n, an, base, wc);
    for (long s = w.lo; s <= w.hi; ++s) {
      for (long l = 1; 2 * l + 1 <= s; ++l) {
        long m = s - 2 * l;
        KElem P = blocks.P(l, m), Q = blocks.Q(l, m);
        for (long d1 = 1; d1 < nd; ++d1) {
          KElem rest = an - KElem::from_int(base.K, d1) * P;
          KElem d2e = rest / Q;
          if (!d2e.is_rational()) continue;
          mpq_class q = d2e.as_rational();
          if (q.get_den() != 1) continue;
          if (q < 0 || q >= nd) continue;
          long d2 = q.get_num().get_si();
          std::optional<DigitString> ds;
          if (base.is_integer_base()) ds = render({d1, d2, l, m});
          emit(out, n, l, m, d1, d2, an, base, opt, ds);
        }
      }
    }
  }
}

void sort_solutions(std::vector<Solution>& sols) {
  std::sort(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.l != b.l) return a.l < b.l;
    if (a.m != b.m) return a.m < b.m;
    if (a.d1 != b.d1) return a.d1 < b.d1;
    return a.d2 < b.d2;
  });
}

}  // namespace

SWindow window(unsigned long n, const CharacteristicData& cd,
               const BaseSpec& base, const MagnitudeConstants& mc, long prec) {
  WindowCtx wc;
  wc.prec = prec;
  wc.have_magnitude = true;
  wc.n0 = mc.n0;
  wc.C0 = mc.C0;
  wc.logz1 = cd.z1.real_ball(-prec).log();
  RealBall lb = base.beta_ball(prec).log();
  wc.logbeta = lb;
  wc.logbeta_lo = lb;
  return window_impl(n, term(cd.spec, n), base, wc);
}

SearchReport enumerate_solutions(const RecurrenceSpec& spec,
                                 const BaseSpec& base, unsigned long n_lo,
                                 unsigned long n_hi,
                                 const SearchOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  spec.validate();
  SearchReport rep;
  rep.spec = spec;
  rep.base = base;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  rep.options = options;
  rep.status = Completeness::PartialUpTo;

  WindowCtx wc;
  wc.prec = options.precision;
  wc.logbeta = base.beta_ball(wc.prec).log();
  wc.logbeta_lo = wc.logbeta;
  try {
    CharacteristicData cd = characteristic_data(spec, options.precision);
    rep.hypotheses = check_hypotheses(cd);
    if (rep.hypotheses.all_pass()) {
      MagnitudeConstants mc =
          magnitude_constants(to_dominant_form(cd), base, options.precision);
      wc.have_magnitude = true;
      wc.n0 = mc.n0;
      wc.C0 = mc.C0;
      wc.logz1 = cd.z1.real_ball(-wc.prec).log();
    }
  } catch (const RepeatedRoots& e) {
    rep.hypotheses.detail = e.what();
  } catch (const HypothesisViolation& e) {
    rep.hypotheses.detail = e.what();
  } catch (const PrecisionExhausted& e) {
    rep.hypotheses.detail = e.what();
  }

  const bool fast = base.is_integer_base() && spec.K.is_rational() &&
                    !options.force_generic_path;
  int jobs = std::max(1, options.jobs);
  unsigned long span = n_hi >= n_lo ? n_hi - n_lo + 1 : 0;
  if (span == 0) return rep;
  jobs = static_cast<int>(
      std::min<unsigned long>(jobs, std::max<unsigned long>(1, span / 64)));

  std::vector<std::vector<Solution>> buckets(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto run_chunk = [&](int j, unsigned long lo, unsigned long hi) {
    try {
      if (fast)
        scan_integer(spec, base, lo, hi, options, buckets[j]);
      else
        scan_generic(spec, base, lo, hi, options, wc, buckets[j]);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (jobs == 1) {
    run_chunk(0, n_lo, n_hi);
  } else {
    std::vector<std::thread> threads;
    unsigned long chunk = span / jobs;
    for (int j = 0; j < jobs; ++j) {
      unsigned long lo = n_lo + chunk * j;
      unsigned long hi = j + 1 == jobs ? n_hi : lo + chunk - 1;
      threads.emplace_back(run_chunk, j, lo, hi);
    }
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& b : buckets)
    rep.solutions.insert(rep.solutions.end(), b.begin(), b.end());
  sort_solutions(rep.solutions);
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

SearchReport certify(const RecurrenceSpec& spec, const BaseSpec& base,
                     unsigned long cap, const SearchOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.spec = spec;
  rep.base = base;
  rep.options = options;
  rep.n_lo = 0;
  rep.n_hi = cap;
  try {
    CharacteristicData cd = characteristic_data(spec, options.precision);
    rep.hypotheses = check_hypotheses(cd);
    if (!rep.hypotheses.all_pass()) {
      auto name = [&]() {
        if (rep.hypotheses.z1_real_gt1 != Verdict::Pass) return "z1 > 1";
        if (rep.hypotheses.z2_le1 != Verdict::Pass) return "|z2| <= 1";
        if (rep.hypotheses.z3_le1 != Verdict::Pass) return "|z3| <= 1";
        if (rep.hypotheses.a1_nonzero != Verdict::Pass) return "A1 != 0";
        return "z1 not in K";
      };
      rep.failure = std::string("hypothesis failed: ") + name();
      rep.status = Completeness::PartialUpTo;
      rep.timing_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      return rep;
    }
    EffectiveConstants ec = lambda_constants(cd, base, options.precision);
    BoundResult br = solve_bound_chain(ec, cd, base);
    rep.trace = br.trace;
    rep.n_max = br.n_max;
    rep.n_max_known = true;
    rep.effective = br.effective;
    unsigned long hi = cap;
    if (br.n_max >= 0 && br.n_max <= mpz_class(cap))
      hi = br.n_max.get_ui();
    SearchReport inner = enumerate_solutions(spec, base, 0, hi, options);
    rep.solutions = std::move(inner.solutions);
    rep.n_hi = hi;
    rep.status = (rep.effective && br.n_max <= mpz_class(cap))
                     ? Completeness::Complete
                     : Completeness::PartialUpTo;
  } catch (const RepeatedRoots& e) {
    rep.failure = std::string("repeated roots: ") + e.what();
  } catch (const HypothesisViolation& e) {
    rep.failure = std::string("hypothesis violation: ") + e.what();
  }
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

bool verify_solution(const Solution& sol, const RecurrenceSpec& spec,
                     const BaseSpec& base) {
  KElem lhs = term_matrix_pow(spec, sol.n);
  PalindromicPattern p{sol.d1, sol.d2, sol.l, sol.m};
  KElem rhs = evaluate(render(p), base);
  return lhs == rhs;
}

}  // namespace betarep
