#include "betarep/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace betarep {

namespace {

// collapse a ball to a point at its upper endpoint (constants are stored
// upper-biased so later arithmetic keeps them valid bounds)
RealBall upper_point(const RealBall& x) {
  mpfr_t hi;
  mpfr_init2(hi, x.prec());
  x.upper(hi);
  RealBall r = RealBall::from_endpoints_mpfr(hi, hi, x.prec());
  mpfr_clear(hi);
  return r;
}

RealBall lower_point(const RealBall& x) {
  mpfr_t lo;
  mpfr_init2(lo, x.prec());
  x.lower(lo);
  RealBall r = RealBall::from_endpoints_mpfr(lo, lo, x.prec());
  mpfr_clear(lo);
  return r;
}

RealBall rb_016(long prec) {
  return RealBall::from_rational(mpq_class(4, 25), prec);
}

RealBall rb_log2(long prec) { return RealBall::exact_si(2, prec).log(); }

std::string ball_str(const RealBall& b) { return b.mid_str(17); }

void push_trace(std::vector<TraceEntry>& t, std::string name,
                std::string formula,
                std::vector<std::pair<std::string, std::string>> inputs,
                const RealBall& v) {
  t.push_back(TraceEntry{std::move(name), std::move(formula),
                         std::move(inputs), ball_str(v)});
}

// enclosure of |A1| at the requested tightness; certified away from zero
RealBall a1_abs_ball(const CharacteristicData& cd, long prec) {
  for (long p = prec; p <= kMaxPrec; p *= 2) {
    AlgebraicNumber z1 = cd.z1;
    z1.refine(-p);
    RealBall a1 = cd.A1_exact.eval_ball(z1.isolator().re(), p);
    if (!a1.contains_zero()) return a1.abs();
  }
  throw PrecisionExhausted("A1 enclosure not separated from zero");
}

}  // namespace

void MatveevInput::validate() const {
  if (t < 1 || static_cast<size_t>(t) != hprimes.size())
    throw InvalidInput("t must match the number of h' entries");
  if (D < 1) throw InvalidInput("degree must be >= 1");
  if (B < 1) throw InvalidInput("B must be >= 1");
  for (const auto& h : hprimes) {
    RealBall floor016 = rb_016(h.prec());
    if (h.lt(floor016)) throw InvalidInput("h' entries must be >= 0.16");
  }
}

RealBall h_prime(const RealBall& h, const RealBall& logx, int D) {
  RealBall dh = RealBall::exact_si(D, h.prec()) * h;
  return upper_point(RealBall::max(RealBall::max(dh, logx), rb_016(h.prec())));
}

RealBall matveev_lower(const MatveevInput& inp, long prec) {
  inp.validate();
  mpz_class p30;
  mpz_ui_pow_ui(p30.get_mpz_t(), 30, static_cast<unsigned long>(inp.t) + 4);
  RealBall m = RealBall::exact_int(3 * p30, prec);
  // (t+1)^{5.5} = sqrt((t+1)^11)
  mpz_class t1;
  mpz_ui_pow_ui(t1.get_mpz_t(), static_cast<unsigned long>(inp.t) + 1, 11);
  m = m * RealBall::exact_int(t1, prec).sqrt();
  RealBall d = RealBall::exact_si(inp.D, prec);
  m = m * d * d * (RealBall::exact_si(1, prec) + d.log());
  RealBall tb = RealBall::exact_int(mpz_class(inp.t) * inp.B, prec);
  m = m * (RealBall::exact_si(1, prec) + tb.log());
  for (const auto& h : inp.hprimes) m = m * h;
  return -m;
}

// ---------------------------------------------------------------------------
// magnitude lemma constants
// ---------------------------------------------------------------------------

MagnitudeConstants magnitude_constants(const DominantForm& df,
                                       const BaseSpec& base, long prec) {
  if (df.A.contains_zero())
    throw HypothesisViolation("dominant coefficient must be nonzero");
  MagnitudeConstants mc;
  RealBall A = df.A.abs();
  RealBall z = df.z.real_ball(-prec);
  if (!(RealBall::exact_si(1, prec)).lt(z))
    throw HypothesisViolation("dominant root must exceed 1");
  RealBall beta = base.beta_ball(prec);
  RealBall one = RealBall::exact_si(1, prec);
  RealBall betam1 = beta - one;
  RealBall Nm1 = RealBall::exact_int(base.norm_abs - 1, prec);

  // n0: first n with |A| z^n >= 2R (certified lower vs upper)
  long n0 = 0;
  {
    RealBall pow = one;
    RealBall twoR = df.R.mul_2si(1);
    for (;; ++n0) {
      RealBall lhs = lower_point(A * pow);
      if (!lhs.lt(upper_point(twoR))) break;
      pow = pow * z;
      if (n0 > 4 * kMaxPrec)
        throw PrecisionExhausted("n0 search did not terminate");
    }
  }

  RealBall threeA2 = A * RealBall::from_rational(mpq_class(3, 2), prec);
  RealBall arg1 = (betam1 * threeA2).log();
  RealBall arg2 = beta.log() + threeA2.log();
  RealBall arg3 = ((Nm1 / betam1).log() - (A.mul_2si(-1)).log()).abs();
  RealBall c0 =
      RealBall::max(RealBall::max(arg1, arg2), arg3) + one;
  mc.C0 = upper_point(c0);
  mc.n0 = n0;
  push_trace(mc.trace, "n0", "min n with |A| z^n >= 2R",
             {{"absA", ball_str(A)}, {"R", ball_str(df.R)}},
             RealBall::exact_si(n0, prec));
  push_trace(mc.trace, "C0",
             "max(log((b-1)3|A|/2), log b + log(3|A|/2), |log((N-1)/(b-1)) - "
             "log(|A|/2)|) + 1",
             {{"absA", ball_str(A)},
              {"beta", ball_str(beta)},
              {"N", (base.norm_abs).get_str()}},
             mc.C0);
  return mc;
}

// ---------------------------------------------------------------------------
// lambda lemma constants
// ---------------------------------------------------------------------------

EffectiveConstants lambda_constants(const CharacteristicData& cd,
                                    const BaseSpec& base, long prec) {
  DominantForm df = to_dominant_form(cd);  // HypothesisViolation unless Pass
  MagnitudeConstants mc = magnitude_constants(df, base, prec);

  EffectiveConstants ec;
  ec.trace = mc.trace;
  ec.n0 = mc.n0;
  ec.C0 = mc.C0;
  ec.D = cd.compositum_degree();

  const FieldDesc& K = cd.spec.K;
  RealBall one = RealBall::exact_si(1, prec);
  RealBall beta = base.beta_ball(prec);
  RealBall betam1 = beta - one;
  RealBall logbeta = beta.log();
  RealBall z1 = cd.z1.real_ball(-prec);
  RealBall logz1 = z1.log();
  RealBall R = df.R;
  RealBall Nm1 = RealBall::exact_int(base.norm_abs - 1, prec);
  RealBall logNm1 =
      base.norm_abs == 2 ? RealBall::exact_si(0, prec) : Nm1.log();
  RealBall log2b = rb_log2(prec);

  // w = (beta - 1) A1, certified sign and magnitude
  RealBall absA1 = a1_abs_ball(cd, prec);
  {
    AlgebraicNumber z1n = cd.z1;
    z1n.refine(-prec);
    RealBall a1raw = cd.A1_exact.eval_ball(z1n.isolator().re(), prec);
    ec.a1_sign = a1raw.is_positive() ? 1 : (a1raw.is_negative() ? -1 : 0);
    if (ec.a1_sign == 0) {
      absA1 = a1_abs_ball(cd, 4 * prec);
      ec.a1_sign = absA1.is_positive() ? 1 : -1;  // refined away from zero
    }
  }
  RealBall absW = betam1 * absA1;
  RealBall logAbsW = absW.log().abs();

  // heights: h(beta), h(z1), and an upper bound for h((beta-1) A1) from the
  // height calculus over the exact Binet expression
  RealBall h_beta = upper_point(weil_height(base.beta));
  RealBall h_z1 = upper_point(weil_height(cd.z1));
  auto h_k = [&](const KElem& x) {
    return x.is_zero() ? RealBall::exact_si(0, prec)
                       : upper_point(weil_height(x));
  };
  const RecurrenceSpec& s = cd.spec;
  KElem u2 = s.a0;
  KElem u1 = s.a1 - s.a0 * s.a;
  KElem u0 = s.a2 - s.a1 * s.a - s.a0 * s.b;
  RealBall h_num = h_k(u2) + h_z1.mul_2si(1) + h_k(u1) + h_z1 + h_k(u0) +
                   log2b.mul_2si(1);
  RealBall h_den = h_k(KElem::from_int(K, 3)) + h_z1.mul_2si(1) +
                   h_k(s.a * KElem::from_int(K, 2)) + h_z1 + h_k(s.b) +
                   log2b.mul_2si(1);
  RealBall h_A1 = h_num + h_den;
  RealBall h_w = h_beta + log2b + h_A1;

  push_trace(ec.trace, "h_beta", "weil height of beta", {}, h_beta);
  push_trace(ec.trace, "h_z1", "weil height of z1", {}, h_z1);
  push_trace(ec.trace, "h_w", "h((beta-1)A1) <= h(beta)+log2+h(A1)",
             {{"h_A1_bound", ball_str(h_A1)}}, h_w);

  // cB: B = max(1, n, 2l+m) <= cB n for solutions with n >= max(n0, 1)
  ec.cB = upper_point(
      RealBall::max(one, (logz1 + ec.C0) / lower_point(logbeta)));
  push_trace(ec.trace, "cB", "max(1, (log z1 + C0)/log beta)", {}, ec.cB);

  // shared Matveev prefactor with t = 3: 3 * 30^7 * 4^{5.5} = 3 * 30^7 * 2048
  RealBall D = RealBall::exact_si(ec.D, prec);
  RealBall hp_z1 = h_prime(h_z1, upper_point(logz1.abs()), ec.D);
  RealBall hp_beta = h_prime(h_beta, upper_point(logbeta.abs()), ec.D);
  mpz_class pre = 3;
  mpz_class p30;
  mpz_ui_pow_ui(p30.get_mpz_t(), 30, 7);
  pre *= p30 * 2048;
  ec.G = upper_point(RealBall::exact_int(pre, prec) * D * D *
                     (one + D.log()) * (one + ec.cB.log()) * hp_z1 * hp_beta);
  push_trace(ec.trace, "G",
             "3*30^7*4^5.5*D^2(1+log D)(1+log cB) h'(z1) h'(beta)",
             {{"D", std::to_string(ec.D)},
              {"h'_z1", ball_str(hp_z1)},
              {"h'_beta", ball_str(hp_beta)}},
             ec.G);

  // digit-pair case analysis: max over d1 >= d2 and d1 < d2 branches
  RealBall case_ge = -(one - beta.inv()).log();
  RealBall case_max = case_ge;
  if (base.norm_abs > 2) {
    RealBall case_lt =
        (one + RealBall::exact_int(base.norm_abs - 2, prec) / beta).log();
    case_max = RealBall::max(case_ge, case_lt);
  }
  case_max = upper_point(case_max);
  push_trace(ec.trace, "case_max",
             "max(-log(1-1/beta), log(1+(N-2)/beta))", {}, case_max);

  // Lambda_1: C1 = (beta-1)R + 3(N-1); h'(x1) from constant heights
  ec.C1 = upper_point(betam1 * R + RealBall::exact_si(3, prec) * Nm1);
  RealBall h1 = h_w + logNm1;
  RealBall l1 = logAbsW + logNm1;
  ec.K1 = upper_point(ec.G * h_prime(h1, l1, ec.D));
  push_trace(ec.trace, "C1", "(beta-1)R + 3(N-1)", {{"R", ball_str(R)}}, ec.C1);
  push_trace(ec.trace, "K1", "G * h'((beta-1)A1/d1)",
             {{"h1", ball_str(h1)}, {"log1", ball_str(l1)}}, ec.K1);

  // Lambda_2: C2 = R + 2(N-1)/(beta-1); h'(x1) <= K2s/G * l + K2i/G
  ec.C2 = upper_point(R + (Nm1 / betam1).mul_2si(1));
  RealBall slope = upper_point(RealBall::max(D * h_beta, logbeta));
  RealBall k2h = h_w + logNm1.mul_2si(1) + log2b;
  RealBall k2l = logAbsW + logNm1 + case_max;
  RealBall icept2 =
      upper_point(RealBall::max(RealBall::max(D * k2h, k2l), rb_016(prec)));
  ec.K2_slope = upper_point(ec.G * slope);
  ec.K2_icept = upper_point(ec.G * icept2);
  push_trace(ec.trace, "C2", "R + 2(N-1)/(beta-1)", {}, ec.C2);
  push_trace(ec.trace, "K2_slope", "G * max(D h(beta), log beta)", {},
             ec.K2_slope);
  push_trace(ec.trace, "K2_icept", "G * max(D(h_w+2log(N-1)+log2), "
             "|log w|+log(N-1)+case_max, 0.16)",
             {}, ec.K2_icept);

  // Lambda_3: C3 = ((beta-1)R + (N-1)) / ((beta-1)|A1|)
  ec.C3 = upper_point((betam1 * R + Nm1) / lower_point(betam1 * absA1));
  RealBall k3h = h_w + RealBall::exact_si(3, prec) * logNm1 + log2b.mul_2si(1);
  RealBall k3l = logAbsW + logNm1 + case_max;
  RealBall icept3 =
      upper_point(RealBall::max(RealBall::max(D * k3h, k3l), rb_016(prec)));
  ec.K3_slope = ec.K2_slope;
  ec.K3_icept = upper_point(ec.G * icept3);
  push_trace(ec.trace, "C3", "((beta-1)R + (N-1)) / ((beta-1)|A1|)",
             {{"absA1", ball_str(absA1)}}, ec.C3);
  push_trace(ec.trace, "K3_slope", "G * max(D h(beta), log beta)", {},
             ec.K3_slope);
  push_trace(ec.trace, "K3_icept", "G * max(D(h_w+3log(N-1)+2log2), "
             "|log w|+log(N-1)+case_max, 0.16)",
             {}, ec.K3_icept);

  ec.certifying =
      nonvanishing_certificate(cd, cd.spec.K) == Nonvanishing::AllN;
  return ec;
}

// ---------------------------------------------------------------------------
// residuals
// ---------------------------------------------------------------------------

std::array<RealBall, 3> lambda_residuals(unsigned long n, long l, long m,
                                         long d1, long d2,
                                         const CharacteristicData& cd,
                                         const BaseSpec& base, long prec) {
  // enough precision to resolve Lambda_3 ~ z1^-n
  double lz = std::log2(std::max(1.5, cd.z1.isolator().re().upper_d()));
  double lb = std::log2(std::max(1.5, base.beta_ball(64).upper_d()));
  long need = static_cast<long>(2.0 * (n * lz + (2 * l + m) * lb)) + 256;
  long p = std::max(prec, need);
  if (p > 4 * kMaxPrec)
    throw PrecisionExhausted("residual evaluation beyond precision budget");

  AlgebraicNumber z1a = cd.z1;
  z1a.refine(-p);
  RealBall z1 = z1a.isolator().re();
  RealBall beta = base.beta_ball(p);
  RealBall one = RealBall::exact_si(1, p);
  RealBall w = (beta - one) * cd.A1_exact.eval_ball(z1, p);
  RealBall z1n = z1.pow_ui(n);
  RealBall bl = beta.pow_ui(static_cast<unsigned long>(l));
  RealBall bm = beta.pow_ui(static_cast<unsigned long>(m));
  RealBall blm = bl * bm;
  RealBall b2lm = bl * blm;
  RealBall D1 = RealBall::exact_si(d1, p);
  RealBall diff = RealBall::exact_si(d1 - d2, p);

  RealBall lam1 = (w * z1n / (D1 * b2lm) - one).abs();
  RealBall lam2 = (w * z1n / ((D1 * bl - diff) * blm) - one).abs();
  RealBall num3 = D1 * blm - diff * bm + diff;
  RealBall lam3 = (num3 * bl / (w * z1n) - one).abs();
  return {lam1, lam2, lam3};
}

// ---------------------------------------------------------------------------
// nonvanishing
// ---------------------------------------------------------------------------

std::string nonvanishing_str(Nonvanishing nv) {
  return nv == Nonvanishing::AllN ? "all-n" : "at-most-one-n";
}

Nonvanishing nonvanishing_certificate(const CharacteristicData& cd,
                                      const FieldDesc& K) {
  (void)K;  // K is cd.spec.K by construction
  HypothesisReport rep = check_hypotheses(cd);
  if (rep.z1_not_in_K != Verdict::Pass || rep.a1_nonzero != Verdict::Pass)
    return Nonvanishing::AtMostOneN;
  if (cd.a1_in_base_field) return Nonvanishing::AllN;
  if (cd.A1_exact.is_zero()) return Nonvanishing::AtMostOneN;
  // A1 in K(z1): Lambda_i = 0 forces A1 z1^n = sigma(A1 z1^n) = A_j z_j^n,
  // impossible for n >= 1 once R < |A1| z1
  for (long p = std::max(cd.prec, 256L); p <= kMaxPrec; p *= 2) {
    try {
      RealBall absA1 = a1_abs_ball(cd, p);
      AlgebraicNumber z1 = cd.z1;
      z1.refine(-p);
      RealBall lhs = lower_point(absA1 * z1.isolator().re());
      RealBall R = upper_point(cd.A2.abs() + cd.A3.abs());
      if (R.lt(lhs)) return Nonvanishing::AllN;
      break;  // separated the other way or tie: no certificate
    } catch (const PrecisionExhausted&) {
      break;
    }
  }
  return Nonvanishing::AtMostOneN;
}

// ---------------------------------------------------------------------------
// bound chain
// ---------------------------------------------------------------------------

std::pair<mpz_class, std::vector<mpz_class>> fixed_point_polylog(
    const RealBall& c3, const RealBall& c2, const RealBall& c1,
    const RealBall& c0, int max_iters) {
  const long prec = std::max({c3.prec(), c2.prec(), c1.prec(), c0.prec()});
  std::vector<mpz_class> iterates;
  mpz_class N = 16;
  for (int it = 0; it < max_iters; ++it) {
    iterates.push_back(N);
    RealBall u = RealBall::exact_si(1, prec) +
                 RealBall::exact_int(3 * N, prec).log();
    RealBall phi = ((c3 * u + c2) * u + c1) * u + c0;
    mpfr_t hi;
    mpfr_init2(hi, prec);
    phi.upper(hi);
    mpz_class next;
    mpfr_get_z(next.get_mpz_t(), hi, MPFR_RNDU);
    mpfr_clear(hi);
    if (next <= N) return {N, iterates};
    N = next;
  }
  throw PrecisionExhausted("fixed point iteration exceeded " +
                           std::to_string(max_iters) + " steps");
}

BoundResult solve_bound_chain(const EffectiveConstants& ec,
                              const CharacteristicData& cd,
                              const BaseSpec& base) {
  (void)base;
  BoundResult br;
  br.trace = ec.trace;
  br.effective = ec.certifying;

  if (ec.a1_sign < 0) {
    // a_n eventually has A1's sign, patterns are positive: solutions need
    // n < n0, no Matveev machinery required
    br.n_max = std::max(ec.n0, 16L);
    br.trace.push_back(TraceEntry{
        "n_max", "A1 < 0: a_n < 0 for n >= n0, patterns positive", {},
        br.n_max.get_str()});
    br.effective = true;
    return br;
  }

  const long prec = std::max(256L, ec.G.prec());
  RealBall one = RealBall::exact_si(1, prec);
  RealBall logbeta_lo = lower_point(base.beta_ball(prec).log());
  RealBall logz1_lo = lower_point(cd.z1.real_ball(-prec).log());

  auto clamp_log = [&](const RealBall& c) {
    return upper_point(RealBall::max(c, one).log());
  };
  RealBall lc1 = clamp_log(ec.C1), lc2 = clamp_log(ec.C2), lc3 = clamp_log(ec.C3);

  // L(n) = a u + b
  RealBall La = upper_point(ec.K1 / logbeta_lo);
  RealBall Lb = upper_point(lc1 / logbeta_lo);
  // M(L(n), n) as a quadratic in u
  RealBall M2 = upper_point(ec.K2_slope * La / logbeta_lo);
  RealBall M1 = upper_point((ec.K2_slope * Lb + ec.K2_icept) / logbeta_lo);
  RealBall M0 = upper_point(lc2 / logbeta_lo);
  // S = L + 2M  (bound for l + 2m)
  RealBall S2 = M2.mul_2si(1);
  RealBall S1 = upper_point(La + M1.mul_2si(1));
  RealBall S0 = upper_point(Lb + M0.mul_2si(1));
  // n log z1 <= (K3s S + K3i) u + log C3  =>  Phi cubic in u
  RealBall c3 = upper_point(ec.K3_slope * S2 / logz1_lo);
  RealBall c2 = upper_point(ec.K3_slope * S1 / logz1_lo);
  RealBall c1 = upper_point((ec.K3_slope * S0 + ec.K3_icept) / logz1_lo);
  RealBall c0 = upper_point(lc3 / logz1_lo);

  auto [nfix, iterates] = fixed_point_polylog(c3, c2, c1, c0);
  br.iterates = std::move(iterates);
  mpz_class n_max = nfix;
  if (n_max < ec.n0) n_max = ec.n0;
  if (n_max < 16) n_max = 16;
  br.n_max = n_max;

  push_trace(br.trace, "phi_c3", "K3s K2s K1 / (log z1 (log beta)^2)", {}, c3);
  push_trace(br.trace, "phi_c2", "u^2 coefficient of Phi", {}, c2);
  push_trace(br.trace, "phi_c1", "u coefficient of Phi", {}, c1);
  push_trace(br.trace, "phi_c0", "log C3 / log z1", {}, c0);
  br.trace.push_back(TraceEntry{"n_max",
                                "max(least fixed point of Phi, n0, 16)",
                                {{"iterations",
                                  std::to_string(br.iterates.size())}},
                                br.n_max.get_str()});
  return br;
}

}  // namespace betarep
