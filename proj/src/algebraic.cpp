#include "betarep/algebraic.hpp"

#include <algorithm>

namespace betarep {

mpq_class mpq_from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return mpq_class(0);
  if (!mpfr_number_p(x)) throw DomainError("non-finite endpoint");
  mpz_class man;
  mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), x);
  mpq_class q(man);
  if (e >= 0) {
    mpz_class two = 1;
    two <<= static_cast<unsigned long>(e);
    q *= mpq_class(two);
  } else {
    mpz_class two = 1;
    two <<= static_cast<unsigned long>(-e);
    q /= mpq_class(two);
  }
  q.canonicalize();
  return q;
}

int count_real_roots_closed(const IntPoly& p, const mpq_class& lo,
                            const mpq_class& hi) {
  if (lo > hi) return 0;
  IntPoly q = p;
  int c = 0;
  if (q.sign_at(lo) == 0) {
    ++c;
    q = *q.divide_exact(IntPoly::x_minus(lo));
  }
  if (hi != lo && q.sign_at(hi) == 0) {
    ++c;
    q = *q.divide_exact(IntPoly::x_minus(hi));
  }
  if (lo == hi || q.degree() < 1) return c;
  return c + q.sturm_count(lo, hi);
}

AlgebraicNumber::AlgebraicNumber(IntPoly mp, ComplexBall box, bool real,
                                 std::optional<RealRootInterval> iv)
    : minpoly_(std::move(mp)),
      isolator_(std::move(box)),
      real_(real),
      interval_(std::move(iv)) {}

namespace {

// whether `box` (one root of p inside) designates a real root; if so, also
// return the exact isolating interval for it
std::pair<bool, std::optional<RealRootInterval>> classify_real(
    const IntPoly& minpoly, const ComplexBall& box) {
  if (!box.im().contains_zero()) return {false, std::nullopt};
  mpfr_t lo, hi;
  mpfr_init2(lo, box.re().prec());
  mpfr_init2(hi, box.re().prec());
  box.re().lower(lo);
  box.re().upper(hi);
  mpq_class qlo = mpq_from_mpfr(lo), qhi = mpq_from_mpfr(hi);
  mpfr_clear(lo);
  mpfr_clear(hi);
  if (count_real_roots_closed(minpoly, qlo, qhi) < 1) return {false, std::nullopt};
  // locate that real root's isolating interval
  for (const auto& iv : isolate_real_roots(minpoly)) {
    mpq_class l = std::max(iv.lo, qlo), h = std::min(iv.hi, qhi);
    if (iv.exact()) {
      if (iv.lo >= qlo && iv.lo <= qhi) return {true, iv};
      continue;
    }
    if (l <= h && count_real_roots_closed(minpoly, l, h) == 1)
      return {true, RealRootInterval{l, h}};
  }
  // the real root in the box straddles interval bookkeeping; refine lazily
  return {true, std::nullopt};
}

}  // namespace

AlgebraicNumber AlgebraicNumber::from_poly_root(const IntPoly& p,
                                                const ComplexBall& box) {
  if (p.degree() < 1) throw InvalidInput("constant polynomial");
  IntPoly sf = p.squarefree_part();
  IntPoly mp = minimal_polynomial_of_root(sf, box);
  // tighten the isolator onto mp's own root boxes
  for (long prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    std::vector<ComplexBall> boxes = isolate_all_roots(mp, prec);
    const ComplexBall* hit = nullptr;
    int n = 0;
    for (const auto& b : boxes) {
      if (b.overlaps(box)) {
        ++n;
        hit = &b;
      }
    }
    if (n == 1) {
      auto [real, iv] = classify_real(mp, *hit);
      return AlgebraicNumber(mp, *hit, real, iv);
    }
  }
  throw PrecisionExhausted("could not tighten isolator");
}

AlgebraicNumber AlgebraicNumber::from_real_root(const IntPoly& p, int index) {
  IntPoly sf = p.squarefree_part();
  auto roots = isolate_real_roots(sf);
  if (index < 0 || static_cast<size_t>(index) >= roots.size())
    throw InvalidInput("real root index out of range");
  RealRootInterval iv = roots[index];
  RealBall re = interval_to_ball(sf, iv, kStartPrec, -64);
  ComplexBall box = ComplexBall::from_real(re);
  IntPoly mp = minimal_polynomial_of_root(sf, box);
  // re-anchor the interval against the minimal polynomial
  auto [real, iv2] = classify_real(mp, box);
  (void)real;
  return AlgebraicNumber(mp, box, true, iv2 ? iv2 : std::optional<RealRootInterval>());
}

AlgebraicNumber AlgebraicNumber::from_rational(const mpq_class& q) {
  IntPoly mp = IntPoly::x_minus(q);
  ComplexBall box = ComplexBall::from_real(RealBall::from_rational(q, kStartPrec));
  return AlgebraicNumber(mp, box, true, RealRootInterval{q, q});
}

AlgebraicNumber AlgebraicNumber::from_kelem(const KElem& x) {
  if (x.is_rational()) return from_rational(x.as_rational());
  IntPoly mp = x.min_poly();
  if (mp.degree() == 1) return from_rational(x.as_rational());
  ComplexBall box = ComplexBall::from_real(x.to_ball(kStartPrec));
  // x is real (real quadratic field); locate its Sturm interval
  for (long prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    RealBall b = x.to_ball(prec);
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    b.lower(lo);
    b.upper(hi);
    mpq_class qlo = mpq_from_mpfr(lo), qhi = mpq_from_mpfr(hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    if (count_real_roots_closed(mp, qlo, qhi) == 1) {
      return AlgebraicNumber(mp, ComplexBall::from_real(b), true,
                             RealRootInterval{qlo, qhi});
    }
  }
  throw PrecisionExhausted("could not isolate quadratic element");
}

mpq_class AlgebraicNumber::as_rational() const {
  if (degree() != 1) throw InvalidInput("not rational");
  mpq_class q(-minpoly_[0], minpoly_[1]);
  q.canonicalize();
  return q;
}

void AlgebraicNumber::refine(long rad_exp2) {
  mpfr_t target;
  mpfr_init2(target, 64);
  mpfr_set_ui_2exp(target, 1, rad_exp2, MPFR_RNDU);
  bool done = mpfr_cmp(isolator_.re().rad(), target) <= 0 &&
              mpfr_cmp(isolator_.im().rad(), target) <= 0;
  mpfr_clear(target);
  if (done) return;
  long prec = std::max(kStartPrec, -rad_exp2 + 64);
  if (real_ && interval_) {
    RealBall re = interval_to_ball(minpoly_, *interval_, prec, rad_exp2);
    isolator_ = ComplexBall::from_real(re);
    return;
  }
  for (; prec <= kMaxPrec; prec *= 2) {
    const ComplexBall* hit = nullptr;
    int n = 0;
    std::vector<ComplexBall> boxes = isolate_all_roots(minpoly_, prec);
    for (const auto& b : boxes) {
      if (b.overlaps(isolator_)) {
        ++n;
        hit = &b;
      }
    }
    if (n == 1) {
      mpfr_t t2;
      mpfr_init2(t2, 64);
      mpfr_set_ui_2exp(t2, 1, rad_exp2, MPFR_RNDU);
      bool ok = mpfr_cmp(hit->re().rad(), t2) <= 0 &&
                mpfr_cmp(hit->im().rad(), t2) <= 0;
      mpfr_clear(t2);
      isolator_ = *hit;
      if (ok) return;
    }
  }
  throw PrecisionExhausted("refine hit the precision cap");
}

RealBall AlgebraicNumber::real_ball(long rad_exp2) const {
  if (!real_) throw DomainError("not a real algebraic number");
  AlgebraicNumber tmp(*this);
  tmp.refine(rad_exp2);
  return tmp.isolator_.re();
}

int AlgebraicNumber::cmp(const mpq_class& q) const {
  if (!real_) throw DomainError("ordering needs a real number");
  if (degree() == 1) {
    mpq_class v = as_rational();
    return v == q ? 0 : (v < q ? -1 : 1);
  }
  // irreducible of degree >= 2 has no rational root, so x != q
  for (long e = -64; e >= -kMaxPrec; e *= 2) {
    RealBall b = real_ball(e);
    if (!b.contains(q)) {
      mpfr_t lo;
      mpfr_init2(lo, 64);
      b.lower(lo);
      int r = mpfr_cmp_q(lo, q.get_mpq_t()) > 0 ? 1 : -1;
      mpfr_clear(lo);
      return r;
    }
  }
  throw PrecisionExhausted("cmp undecided at precision cap");
}

AlgebraicNumber::Membership AlgebraicNumber::member_of(
    const FieldDesc& K) const {
  return K.degree() % degree() == 0 ? Membership::Undetermined : Membership::No;
}

bool AlgebraicNumber::in_field(const FieldDesc& K) const {
  if (degree() == 1) return true;
  if (K.is_rational() || degree() > 2) return false;
  // degree-2 x lies in Q(sqrt d) iff disc(minpoly) = d * square
  const mpz_class &a = minpoly_[2], &b = minpoly_[1], &c = minpoly_[0];
  mpz_class disc = b * b - 4 * a * c;
  if (disc <= 0) return false;  // real quadratic field holds no complex roots
  mpz_class scaled = disc * mpz_class(K.d());
  return mpz_perfect_square_p(scaled.get_mpz_t()) != 0;
}

RealBall weil_height(const AlgebraicNumber& x, long tol_exp2) {
  const IntPoly& mp = x.minpoly();
  const int deg = mp.degree();
  for (long prec = std::max(kStartPrec, -2 * tol_exp2); prec <= kMaxPrec;
       prec *= 2) {
    RealBall sum = RealBall::exact_int(mp.lead(), prec).log();
    for (const auto& box : isolate_all_roots(mp, prec)) {
      RealBall mag = box.abs();
      sum = sum + RealBall::max(mag, RealBall::exact_si(1, prec)).log();
    }
    RealBall h = sum / RealBall::exact_si(deg, prec);
    mpfr_t tol;
    mpfr_init2(tol, 64);
    mpfr_set_ui_2exp(tol, 1, tol_exp2, MPFR_RNDU);
    bool ok = mpfr_cmp(h.rad(), tol) <= 0;
    mpfr_clear(tol);
    if (ok) return h;
  }
  throw PrecisionExhausted("height did not converge");
}

RealBall weil_height(const KElem& x, long tol_exp2) {
  return weil_height(AlgebraicNumber::from_kelem(x), tol_exp2);
}

}  // namespace betarep
