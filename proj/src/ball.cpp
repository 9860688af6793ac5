#include "betarep/ball.hpp"

#include <algorithm>
#include <cstdio>

namespace betarep {

RealBall::RealBall(long prec) : prec_(prec) {
  mpfr_init2(mid_, prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
  mpfr_init2(mid_, prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(mid_, 2);
  mpfr_init2(rad_, 2);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    mpfr_set_prec(mid_, o.prec_);
    prec_ = o.prec_;
  }
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  std::swap(prec_, o.prec_);
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void RealBall::rad_add(mpfr_ptr r, mpfr_srcptr a) {
  mpfr_add(r, r, a, MPFR_RNDU);
}

// After a midpoint operation that returned MPFR ternary value `t`,
// widen the radius by one ulp of the midpoint when rounding occurred.
void RealBall::bump_rounding(int ternary) {
  if (ternary == 0) return;
  mpfr_t ulp;
  mpfr_init2(ulp, kRadPrec);
  if (mpfr_zero_p(mid_)) {
    // RNDN never rounds a nonzero value to zero in MPFR's exponent range,
    // but stay safe if it did.
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - prec_, MPFR_RNDU);
  }
  rad_add(rad_, ulp);
  mpfr_clear(ulp);
}

RealBall RealBall::exact_si(long v, long prec) {
  RealBall r(prec);
  mpfr_set_si(r.mid_, v, MPFR_RNDN);
  return r;
}

RealBall RealBall::exact_int(const mpz_class& v, long prec) {
  RealBall r(prec);
  int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::from_rational(const mpq_class& q, long prec) {
  RealBall r(prec);
  int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::from_decimal(const std::string& mid, const std::string& rad,
                                long prec) {
  RealBall r(prec);
  int t = mpfr_set_str(r.mid_, mid.c_str(), 10, MPFR_RNDN);
  if (t == -1) throw InvalidInput("bad decimal midpoint: " + mid);
  mpfr_t rr;
  mpfr_init2(rr, kRadPrec);
  if (mpfr_set_str(rr, rad.c_str(), 10, MPFR_RNDU) == -1) {
    mpfr_clear(rr);
    throw InvalidInput("bad decimal radius: " + rad);
  }
  if (mpfr_sgn(rr) < 0) {
    mpfr_clear(rr);
    throw InvalidInput("negative radius");
  }
  mpfr_set(r.rad_, rr, MPFR_RNDU);
  mpfr_clear(rr);
  // The parsed midpoint may itself be rounded.
  r.bump_rounding(1);
  return r;
}

RealBall RealBall::from_endpoints_mpfr(mpfr_srcptr lo, mpfr_srcptr hi,
                                       long prec) {
  RealBall r(prec);
  int t = mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
  t |= mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
  // rad = max(hi - mid, mid - lo) rounded up, plus rounding slack.
  mpfr_t d1, d2;
  mpfr_init2(d1, kRadPrec);
  mpfr_init2(d2, kRadPrec);
  mpfr_sub(d1, hi, r.mid_, MPFR_RNDU);
  mpfr_sub(d2, r.mid_, lo, MPFR_RNDU);
  if (mpfr_cmp(d1, d2) < 0) mpfr_swap(d1, d2);
  if (mpfr_sgn(d1) < 0) mpfr_set_zero(d1, 1);
  mpfr_set(r.rad_, d1, MPFR_RNDU);
  mpfr_clear(d1);
  mpfr_clear(d2);
  r.bump_rounding(t);
  return r;
}

void RealBall::lower(mpfr_ptr out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }
void RealBall::upper(mpfr_ptr out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

double RealBall::lower_d() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  lower(t);
  double d = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return d;
}

double RealBall::upper_d() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  upper(t);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

std::string RealBall::mid_str(size_t digits) const {
  char* s = nullptr;
  int n = mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), mid_);
  std::string out = (n >= 0 && s) ? s : "nan";
  if (s) mpfr_free_str(s);
  return out;
}

std::string RealBall::rad_str(size_t digits) const {
  char* s = nullptr;
  int n = mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), rad_);
  std::string out = (n >= 0 && s) ? s : "nan";
  if (s) mpfr_free_str(s);
  return out;
}

RealBall RealBall::operator-() const {
  RealBall r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

RealBall RealBall::operator+(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  int t = mpfr_add(r.mid_, mid_, o.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, rad_, o.rad_, MPFR_RNDU);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::operator-(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  int t = mpfr_sub(r.mid_, mid_, o.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, rad_, o.rad_, MPFR_RNDU);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::operator*(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  int t = mpfr_mul(r.mid_, mid_, o.mid_, MPFR_RNDN);
  // |a| rb + |b| ra + ra rb, all rounded up
  mpfr_t am, bm, acc, term;
  mpfr_init2(am, kRadPrec);
  mpfr_init2(bm, kRadPrec);
  mpfr_init2(acc, kRadPrec);
  mpfr_init2(term, kRadPrec);
  mpfr_abs(am, mid_, MPFR_RNDU);
  mpfr_abs(bm, o.mid_, MPFR_RNDU);
  mpfr_mul(acc, am, o.rad_, MPFR_RNDU);
  mpfr_mul(term, bm, rad_, MPFR_RNDU);
  mpfr_add(acc, acc, term, MPFR_RNDU);
  mpfr_mul(term, rad_, o.rad_, MPFR_RNDU);
  mpfr_add(acc, acc, term, MPFR_RNDU);
  mpfr_set(r.rad_, acc, MPFR_RNDU);
  mpfr_clear(am);
  mpfr_clear(bm);
  mpfr_clear(acc);
  mpfr_clear(term);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::inv() const {
  if (contains_zero()) throw DomainError("inv of ball containing zero");
  RealBall r(prec_);
  int t = mpfr_ui_div(r.mid_, 1, mid_, MPFR_RNDN);
  // |1/y - 1/m| <= r / (|m| (|m| - r))  for |y - m| <= r < |m|
  mpfr_t am, den, rr;
  mpfr_init2(am, kRadPrec);
  mpfr_init2(den, kRadPrec);
  mpfr_init2(rr, kRadPrec);
  mpfr_abs(am, mid_, MPFR_RNDD);
  mpfr_sub(den, am, rad_, MPFR_RNDD);
  mpfr_mul(den, den, am, MPFR_RNDD);
  mpfr_div(rr, rad_, den, MPFR_RNDU);
  mpfr_set(r.rad_, rr, MPFR_RNDU);
  mpfr_clear(am);
  mpfr_clear(den);
  mpfr_clear(rr);
  r.bump_rounding(t);
  return r;
}

RealBall RealBall::operator/(const RealBall& o) const { return *this * o.inv(); }

RealBall RealBall::abs() const {
  if (!contains_zero()) {
    RealBall r(*this);
    if (is_negative()) mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
  }
  // interval straddles 0: |x| in [0, max(|lo|, |hi|)]
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_);
  mpfr_init2(hi, prec_);
  lower(lo);
  upper(hi);
  mpfr_abs(lo, lo, MPFR_RNDU);
  if (mpfr_cmp(lo, hi) > 0) mpfr_swap(lo, hi);
  mpfr_set_zero(lo, 1);
  RealBall r = from_endpoints_mpfr(lo, hi, prec_);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

RealBall RealBall::sqrt() const {
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_);
  mpfr_init2(hi, prec_);
  lower(lo);
  upper(hi);
  if (mpfr_sgn(hi) < 0) {
    mpfr_clear(lo);
    mpfr_clear(hi);
    throw DomainError("sqrt of negative ball");
  }
  if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
  mpfr_sqrt(lo, lo, MPFR_RNDD);
  mpfr_sqrt(hi, hi, MPFR_RNDU);
  RealBall r = from_endpoints_mpfr(lo, hi, prec_);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

RealBall RealBall::log() const {
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_);
  mpfr_init2(hi, prec_);
  lower(lo);
  upper(hi);
  if (mpfr_sgn(lo) <= 0) {
    mpfr_clear(lo);
    mpfr_clear(hi);
    throw DomainError("log of ball touching (-inf, 0]");
  }
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_log(hi, hi, MPFR_RNDU);
  RealBall r = from_endpoints_mpfr(lo, hi, prec_);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

RealBall ball_log(const RealBall& x) { return x.log(); }

RealBall RealBall::pow_ui(unsigned long e) const {
  RealBall acc = RealBall::exact_si(1, prec_);
  RealBall base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

RealBall RealBall::mul_2si(long e) const {
  RealBall r(*this);
  mpfr_mul_2si(r.mid_, r.mid_, e, MPFR_RNDN);
  mpfr_mul_2si(r.rad_, r.rad_, e, MPFR_RNDU);
  return r;
}

RealBall RealBall::max(const RealBall& a, const RealBall& b) {
  mpfr_t alo, ahi, blo, bhi;
  mpfr_init2(alo, a.prec_);
  mpfr_init2(ahi, a.prec_);
  mpfr_init2(blo, b.prec_);
  mpfr_init2(bhi, b.prec_);
  a.lower(alo);
  a.upper(ahi);
  b.lower(blo);
  b.upper(bhi);
  if (mpfr_cmp(blo, alo) > 0) mpfr_swap(alo, blo);
  if (mpfr_cmp(bhi, ahi) > 0) mpfr_swap(ahi, bhi);
  RealBall r = from_endpoints_mpfr(alo, ahi, std::max(a.prec_, b.prec_));
  mpfr_clear(alo);
  mpfr_clear(ahi);
  mpfr_clear(blo);
  mpfr_clear(bhi);
  return r;
}

RealBall RealBall::min(const RealBall& a, const RealBall& b) {
  return -max(-a, -b);
}

RealBall RealBall::join(const RealBall& a, const RealBall& b) {
  mpfr_t alo, ahi, t;
  mpfr_init2(alo, std::max(a.prec_, b.prec_));
  mpfr_init2(ahi, std::max(a.prec_, b.prec_));
  mpfr_init2(t, std::max(a.prec_, b.prec_));
  a.lower(alo);
  b.lower(t);
  if (mpfr_cmp(t, alo) < 0) mpfr_swap(alo, t);
  a.upper(ahi);
  b.upper(t);
  if (mpfr_cmp(t, ahi) > 0) mpfr_swap(ahi, t);
  RealBall r = from_endpoints_mpfr(alo, ahi, std::max(a.prec_, b.prec_));
  mpfr_clear(alo);
  mpfr_clear(ahi);
  mpfr_clear(t);
  return r;
}

RealBall RealBall::max0() const { return max(*this, exact_si(0, prec_)); }

bool RealBall::contains_zero() const {
  return mpfr_cmpabs(mid_, rad_) <= 0;
}

bool RealBall::contains(const mpq_class& q) const {
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_ + 64);
  mpfr_init2(hi, prec_ + 64);
  lower(lo);
  upper(hi);
  bool in = mpfr_cmp_q(lo, q.get_mpq_t()) <= 0 &&
            mpfr_cmp_q(hi, q.get_mpq_t()) >= 0;
  mpfr_clear(lo);
  mpfr_clear(hi);
  return in;
}

bool RealBall::is_positive() const {
  mpfr_t lo;
  mpfr_init2(lo, prec_);
  lower(lo);
  bool p = mpfr_sgn(lo) > 0;
  mpfr_clear(lo);
  return p;
}

bool RealBall::is_negative() const {
  mpfr_t hi;
  mpfr_init2(hi, prec_);
  upper(hi);
  bool n = mpfr_sgn(hi) < 0;
  mpfr_clear(hi);
  return n;
}

bool RealBall::lt(const RealBall& o) const {
  mpfr_t hi, lo;
  mpfr_init2(hi, prec_);
  mpfr_init2(lo, o.prec_);
  upper(hi);
  o.lower(lo);
  bool r = mpfr_cmp(hi, lo) < 0;
  mpfr_clear(hi);
  mpfr_clear(lo);
  return r;
}

bool RealBall::le(const RealBall& o) const {
  mpfr_t hi, lo;
  mpfr_init2(hi, prec_);
  mpfr_init2(lo, o.prec_);
  upper(hi);
  o.lower(lo);
  bool r = mpfr_cmp(hi, lo) <= 0;
  mpfr_clear(hi);
  mpfr_clear(lo);
  return r;
}

bool RealBall::overlaps(const RealBall& o) const {
  return !lt(o) && !o.lt(*this);
}

ComplexBall ComplexBall::from_real(const RealBall& re) {
  return ComplexBall(re, RealBall::exact_si(0, re.prec()));
}

ComplexBall ComplexBall::exact_si(long re, long im, long prec) {
  return ComplexBall(RealBall::exact_si(re, prec), RealBall::exact_si(im, prec));
}

ComplexBall ComplexBall::operator-() const { return ComplexBall(-re_, -im_); }

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
  return ComplexBall(re_ + o.re_, im_ + o.im_);
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
  return ComplexBall(re_ - o.re_, im_ - o.im_);
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
  return ComplexBall(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
  RealBall den = o.abs_sq();
  if (den.contains_zero()) throw DomainError("complex div by ball containing 0");
  ComplexBall num = *this * o.conj();
  return ComplexBall(num.re_ / den, num.im_ / den);
}

ComplexBall ComplexBall::conj() const { return ComplexBall(re_, -im_); }

ComplexBall ComplexBall::pow_ui(unsigned long e) const {
  ComplexBall acc = exact_si(1, 0, prec());
  ComplexBall base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

RealBall ComplexBall::abs_sq() const { return re_ * re_ + im_ * im_; }

RealBall ComplexBall::abs() const { return abs_sq().sqrt(); }

bool ComplexBall::contains_zero() const {
  return re_.contains_zero() && im_.contains_zero();
}

bool ComplexBall::overlaps(const ComplexBall& o) const {
  return re_.overlaps(o.re_) && im_.overlaps(o.im_);
}

bool ComplexBall::contains_box(const ComplexBall& o) const {
  mpfr_t alo, ahi, blo, bhi;
  mpfr_init2(alo, 64);
  mpfr_init2(ahi, 64);
  mpfr_init2(blo, 64);
  mpfr_init2(bhi, 64);
  bool ok = true;
  re_.lower(alo);
  re_.upper(ahi);
  o.re_.lower(blo);
  o.re_.upper(bhi);
  ok = ok && mpfr_cmp(alo, blo) <= 0 && mpfr_cmp(bhi, ahi) <= 0;
  im_.lower(alo);
  im_.upper(ahi);
  o.im_.lower(blo);
  o.im_.upper(bhi);
  ok = ok && mpfr_cmp(alo, blo) <= 0 && mpfr_cmp(bhi, ahi) <= 0;
  mpfr_clear(alo);
  mpfr_clear(ahi);
  mpfr_clear(blo);
  mpfr_clear(bhi);
  return ok;
}

RealBall eval_poly(const std::vector<RealBall>& coeffs, const RealBall& x) {
  if (coeffs.empty()) return RealBall::exact_si(0, x.prec());
  RealBall acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

ComplexBall eval_poly(const std::vector<ComplexBall>& coeffs,
                      const ComplexBall& x) {
  if (coeffs.empty()) return ComplexBall::exact_si(0, 0, x.prec());
  ComplexBall acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace betarep
