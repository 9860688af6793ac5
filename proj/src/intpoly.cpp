#include "betarep/intpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace betarep {

namespace {

using QPoly = std::vector<mpq_class>;  // ascending, may have junk leading zeros

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& p) {
  QPoly q;
  q.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) q.emplace_back(c);
  return q;
}

// remainder of a by b (b nonzero), standard long division over Q
QPoly qrem(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size()) {
    mpq_class f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

IntPoly q_to_primitive(const QPoly& q) {
  mpz_class den = 1;
  for (const auto& c : q) den = lcm(den, c.get_den());
  std::vector<mpz_class> z;
  z.reserve(q.size());
  for (const auto& c : q) {
    mpq_class v = c * den;
    z.push_back(v.get_num());
  }
  return IntPoly(std::move(z)).primitive();
}

IntPoly qpoly_gcd(const IntPoly& a, const IntPoly& b) {
  QPoly u = to_q(a), v = to_q(b);
  qtrim(u);
  qtrim(v);
  while (!v.empty()) {
    QPoly r = qrem(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  if (u.empty()) return IntPoly();
  return q_to_primitive(u);
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
  normalize();
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::from_si(std::initializer_list<long> coeffs) {
  std::vector<mpz_class> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::x_minus(const mpq_class& r) {
  return IntPoly({-r.get_num(), r.get_den()}).primitive();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<mpz_class> c(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<mpz_class> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * mpz_class(i);
  return IntPoly(std::move(c));
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : c_) g = gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return IntPoly();
  mpz_class g = content();
  if (lead() < 0) g = -g;
  std::vector<mpz_class> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x / g);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::squarefree_part() const {
  if (degree() <= 1) return primitive();
  IntPoly g = qpoly_gcd(*this, derivative());
  if (g.degree() == 0) return primitive();
  QPoly num = to_q(*this), den = to_q(g);
  // exact division
  QPoly quo(num.size() - den.size() + 1, mpq_class(0));
  while (num.size() >= den.size()) {
    mpq_class f = num.back() / den.back();
    size_t off = num.size() - den.size();
    quo[off] = f;
    for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
    num.pop_back();
    qtrim(num);
  }
  return q_to_primitive(quo);
}

bool IntPoly::is_squarefree() const {
  if (degree() <= 1) return true;
  return qpoly_gcd(*this, derivative()).degree() == 0;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

int IntPoly::sign_at(const mpq_class& x) const { return sgn(eval(x)); }

RealBall IntPoly::eval(const RealBall& x) const {
  std::vector<RealBall> cb;
  cb.reserve(c_.size());
  for (const auto& c : c_) cb.push_back(RealBall::exact_int(c, x.prec()));
  return eval_poly(cb, x);
}

ComplexBall IntPoly::eval(const ComplexBall& x) const {
  std::vector<ComplexBall> cb;
  cb.reserve(c_.size());
  for (const auto& c : c_)
    cb.push_back(ComplexBall::from_real(RealBall::exact_int(c, x.prec())));
  return eval_poly(cb, x);
}

RealBall IntPoly::eval_deriv(const RealBall& x) const {
  return derivative().eval(x);
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& o) const {
  if (o.is_zero()) return std::nullopt;
  QPoly num = to_q(*this);
  QPoly den = to_q(o);
  if (num.size() < den.size()) return std::nullopt;
  QPoly quo(num.size() - den.size() + 1, mpq_class(0));
  while (num.size() >= den.size()) {
    mpq_class f = num.back() / den.back();
    size_t off = num.size() - den.size();
    quo[off] = f;
    for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
    num.pop_back();
    qtrim(num);
  }
  if (!num.empty()) return std::nullopt;
  std::vector<mpz_class> z;
  z.reserve(quo.size());
  for (const auto& c : quo) {
    if (c.get_den() != 1) return std::nullopt;
    z.push_back(c.get_num());
  }
  return IntPoly(std::move(z));
}

mpq_class IntPoly::root_bound() const {
  assert(!is_zero());
  mpq_class m = 0;
  for (size_t i = 0; i + 1 < c_.size(); ++i) {
    mpq_class r = mpq_class(abs(c_[i]), abs(lead()));
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

int IntPoly::sturm_count(const mpq_class& a, const mpq_class& b) const {
  assert(sign_at(a) != 0 && sign_at(b) != 0);
  std::vector<QPoly> chain;
  chain.push_back(to_q(*this));
  chain.push_back(to_q(derivative()));
  qtrim(chain[0]);
  qtrim(chain[1]);
  while (!chain.back().empty() && chain.back().size() > 1) {
    QPoly r = qrem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    qtrim(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  auto variations = [&chain](const mpq_class& x) {
    int v = 0, prev = 0;
    for (const auto& poly : chain) {
      mpq_class acc = 0;
      for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
      int s = sgn(acc);
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  };
  return variations(a) - variations(b);
}

int IntPoly::count_real_roots() const {
  if (degree() <= 0) return 0;
  mpq_class b = root_bound();
  return sturm_count(-b, b);
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    mpz_class a = abs(c_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "X";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

namespace {

void isolate_rec(const IntPoly& p, const mpq_class& a, const mpq_class& b,
                 std::vector<RealRootInterval>& out) {
  int n = p.sturm_count(a, b);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  mpq_class m = (a + b) / 2;
  if (p.sign_at(m) != 0) {
    isolate_rec(p, a, m, out);
    isolate_rec(p, m, b, out);
    return;
  }
  // midpoint is an exact rational root: carve out a window around it
  mpq_class delta = (b - a) / 4;
  while (p.sign_at(m - delta) == 0 || p.sign_at(m + delta) == 0 ||
         p.sturm_count(m - delta, m + delta) != 1) {
    delta /= 2;
  }
  isolate_rec(p, a, m - delta, out);
  out.push_back({m, m});
  isolate_rec(p, m + delta, b, out);
}

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const IntPoly& p) {
  std::vector<RealRootInterval> out;
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    mpq_class r(-p[0], p[1]);
    r.canonicalize();
    out.push_back({r, r});
    return out;
  }
  assert(p.is_squarefree());
  mpq_class bound = p.root_bound();
  isolate_rec(p, -bound, bound, out);
  std::sort(out.begin(), out.end(),
            [](const RealRootInterval& x, const RealRootInterval& y) {
              return x.lo < y.lo;
            });
  return out;
}

RealRootInterval refine_interval(const IntPoly& p, RealRootInterval iv,
                                 const mpq_class& width) {
  if (iv.exact()) return iv;
  int slo = p.sign_at(iv.lo);
  assert(slo != 0 && p.sign_at(iv.hi) == -slo);
  while (iv.hi - iv.lo > width) {
    mpq_class m = (iv.lo + iv.hi) / 2;
    int sm = p.sign_at(m);
    if (sm == 0) return {m, m};
    if (sm == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

RealBall interval_to_ball(const IntPoly& p, const RealRootInterval& iv,
                          long prec, long rad_exp2) {
  if (rad_exp2 > -32) rad_exp2 = -32;
  if (prec < -rad_exp2 + 32) prec = -rad_exp2 + 32;
  if (iv.exact()) return RealBall::from_rational(iv.lo, prec);
  // coarse bisection start, then interval Newton
  RealRootInterval cur = refine_interval(p, iv, mpq_class(1, 1024));
  auto to_ball = [&](const RealRootInterval& v) {
    RealBall lo = RealBall::from_rational(v.lo, prec);
    RealBall hi = RealBall::from_rational(v.hi, prec);
    return RealBall::join(lo, hi);
  };
  RealBall B = to_ball(cur);
  mpfr_t target;
  mpfr_init2(target, 64);
  mpfr_set_ui_2exp(target, 1, rad_exp2, MPFR_RNDU);
  int stall = 0;
  while (mpfr_cmp(B.rad(), target) > 0 && stall < 128) {
    RealBall dp = p.eval_deriv(B);
    if (dp.contains_zero()) {
      // derivative not yet resolved: fall back to exact bisection
      cur = refine_interval(p, cur, (cur.hi - cur.lo) / 16);
      B = to_ball(cur);
      ++stall;
      continue;
    }
    RealBall m(prec);
    {
      // point ball at the midpoint of B
      RealBall tmp = B;
      m = RealBall::from_endpoints_mpfr(tmp.mid(), tmp.mid(), prec);
    }
    RealBall N = m - p.eval(m) / dp;
    // root is in N whenever it is in B; keep the tighter enclosure
    mpfr_t nl, nh, bl, bh;
    mpfr_init2(nl, prec);
    mpfr_init2(nh, prec);
    mpfr_init2(bl, prec);
    mpfr_init2(bh, prec);
    N.lower(nl);
    N.upper(nh);
    B.lower(bl);
    B.upper(bh);
    if (mpfr_cmp(bl, nl) > 0) mpfr_set(nl, bl, MPFR_RNDN);
    if (mpfr_cmp(bh, nh) < 0) mpfr_set(nh, bh, MPFR_RNDN);
    bool progress = mpfr_cmp(nl, nh) <= 0;
    RealBall next = progress ? RealBall::from_endpoints_mpfr(nl, nh, prec) : B;
    mpfr_clear(nl);
    mpfr_clear(nh);
    mpfr_clear(bl);
    mpfr_clear(bh);
    if (!progress || mpfr_cmp(next.rad(), B.rad()) >= 0) {
      cur = refine_interval(p, cur, (cur.hi - cur.lo) / 16);
      B = to_ball(cur);
      ++stall;
    } else {
      B = next;
    }
  }
  mpfr_clear(target);
  if (mpfr_cmp(B.rad(), target) > 0)
    throw PrecisionExhausted("real root refinement stalled");
  return B;
}

// ---------------------------------------------------------------------------
// Durand-Kerner approximation + Weierstrass inclusion disks
// ---------------------------------------------------------------------------

namespace {

struct MpfrComplexVec {
  std::vector<mpfr_t> re, im;
  long prec;
  explicit MpfrComplexVec(size_t n, long p) : re(n), im(n), prec(p) {
    for (size_t i = 0; i < n; ++i) {
      mpfr_init2(re[i], p);
      mpfr_init2(im[i], p);
    }
  }
  ~MpfrComplexVec() {
    for (auto& x : re) mpfr_clear(x);
    for (auto& x : im) mpfr_clear(x);
  }
};

// non-rigorous Durand-Kerner sweep; returns max |correction| as double exp
long dk_sweep(const IntPoly& p, MpfrComplexVec& w) {
  const int k = p.degree();
  const long prec = w.prec;
  mpfr_t pr, pi, nr, ni, dr, di, t1, t2, den;
  mpfr_inits2(prec, pr, pi, nr, ni, dr, di, t1, t2, den, (mpfr_ptr) nullptr);
  long max_corr_exp = mpfr_get_emin();
  for (int i = 0; i < k; ++i) {
    // pr+pi*I = p(w_i) by Horner
    mpfr_set_z(pr, p.lead().get_mpz_t(), MPFR_RNDN);
    mpfr_set_zero(pi, 1);
    for (int d = k - 1; d >= 0; --d) {
      // (pr,pi) *= w_i ; += c_d
      mpfr_mul(t1, pr, w.re[i], MPFR_RNDN);
      mpfr_mul(t2, pi, w.im[i], MPFR_RNDN);
      mpfr_sub(nr, t1, t2, MPFR_RNDN);
      mpfr_mul(t1, pr, w.im[i], MPFR_RNDN);
      mpfr_mul(t2, pi, w.re[i], MPFR_RNDN);
      mpfr_add(pi, t1, t2, MPFR_RNDN);
      mpfr_add_z(pr, nr, p[d].get_mpz_t(), MPFR_RNDN);
    }
    // (dr,di) = lead * prod_{j!=i} (w_i - w_j)
    mpfr_set_z(dr, p.lead().get_mpz_t(), MPFR_RNDN);
    mpfr_set_zero(di, 1);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      mpfr_sub(t1, w.re[i], w.re[j], MPFR_RNDN);
      mpfr_sub(t2, w.im[i], w.im[j], MPFR_RNDN);
      mpfr_mul(nr, dr, t1, MPFR_RNDN);
      mpfr_mul(ni, di, t2, MPFR_RNDN);
      mpfr_sub(nr, nr, ni, MPFR_RNDN);
      mpfr_mul(ni, dr, t2, MPFR_RNDN);
      mpfr_mul(den, di, t1, MPFR_RNDN);
      mpfr_add(di, ni, den, MPFR_RNDN);
      mpfr_set(dr, nr, MPFR_RNDN);
    }
    // correction W = p(w_i)/d ; w_i -= W
    mpfr_mul(t1, dr, dr, MPFR_RNDN);
    mpfr_mul(t2, di, di, MPFR_RNDN);
    mpfr_add(den, t1, t2, MPFR_RNDN);
    if (mpfr_zero_p(den)) continue;  // coincident guesses; caller restarts
    mpfr_mul(t1, pr, dr, MPFR_RNDN);
    mpfr_mul(t2, pi, di, MPFR_RNDN);
    mpfr_add(nr, t1, t2, MPFR_RNDN);
    mpfr_div(nr, nr, den, MPFR_RNDN);
    mpfr_mul(t1, pi, dr, MPFR_RNDN);
    mpfr_mul(t2, pr, di, MPFR_RNDN);
    mpfr_sub(ni, t1, t2, MPFR_RNDN);
    mpfr_div(ni, ni, den, MPFR_RNDN);
    mpfr_sub(w.re[i], w.re[i], nr, MPFR_RNDN);
    mpfr_sub(w.im[i], w.im[i], ni, MPFR_RNDN);
    long ce = mpfr_get_emin();
    if (!mpfr_zero_p(nr)) ce = mpfr_get_exp(nr);
    if (!mpfr_zero_p(ni)) ce = std::max(ce, mpfr_get_exp(ni));
    max_corr_exp = std::max(max_corr_exp, ce);
  }
  mpfr_clears(pr, pi, nr, ni, dr, di, t1, t2, den, (mpfr_ptr) nullptr);
  return max_corr_exp;
}

std::optional<std::vector<ComplexBall>> try_isolate(const IntPoly& p,
                                                    long prec, int attempt) {
  const int k = p.degree();
  MpfrComplexVec w(k, prec);
  // initial guesses on a circle, angle offset avoids real-axis symmetry traps
  double radius = mpq_class(p.root_bound()).get_d() * (0.6 + 0.13 * attempt);
  for (int i = 0; i < k; ++i) {
    double ang = 2.0 * 3.14159265358979 * (i + 0.3257 + 0.11 * attempt) / k;
    mpfr_set_d(w.re[i], radius * std::cos(ang), MPFR_RNDN);
    mpfr_set_d(w.im[i], radius * std::sin(ang), MPFR_RNDN);
  }
  long scale_exp = 8;  // stop once corrections fall well below 2^-prec/2
  for (int it = 0; it < 60 + 8 * static_cast<int>(prec / 64); ++it) {
    long ce = dk_sweep(p, w);
    if (ce < scale_exp - prec * 3 / 4) break;
  }
  // rigorous Weierstrass disks via ball arithmetic
  RealBall lead = RealBall::exact_int(p.lead(), prec);
  std::vector<ComplexBall> pts;
  pts.reserve(k);
  for (int i = 0; i < k; ++i) {
    RealBall re = RealBall::from_endpoints_mpfr(w.re[i], w.re[i], prec);
    RealBall im = RealBall::from_endpoints_mpfr(w.im[i], w.im[i], prec);
    pts.emplace_back(re, im);
  }
  std::vector<ComplexBall> boxes;
  boxes.reserve(k);
  for (int i = 0; i < k; ++i) {
    ComplexBall val = p.eval(pts[i]);
    ComplexBall den = ComplexBall::from_real(lead);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      den = den * (pts[i] - pts[j]);
    }
    if (den.contains_zero()) return std::nullopt;
    RealBall wmag = (val / den).abs();
    mpfr_t r;
    mpfr_init2(r, 64);
    wmag.upper(r);
    mpfr_mul_ui(r, r, static_cast<unsigned long>(k), MPFR_RNDU);
    // box = center +- r in both coordinates
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_sub(lo, w.re[i], r, MPFR_RNDD);
    mpfr_add(hi, w.re[i], r, MPFR_RNDU);
    RealBall bre = RealBall::from_endpoints_mpfr(lo, hi, prec);
    mpfr_sub(lo, w.im[i], r, MPFR_RNDD);
    mpfr_add(hi, w.im[i], r, MPFR_RNDU);
    RealBall bim = RealBall::from_endpoints_mpfr(lo, hi, prec);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(r);
    boxes.emplace_back(bre, bim);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (boxes[i].overlaps(boxes[j])) return std::nullopt;
  std::sort(boxes.begin(), boxes.end(),
            [](const ComplexBall& a, const ComplexBall& b) {
              int c = mpfr_cmp(a.re().mid(), b.re().mid());
              if (c != 0) return c < 0;
              return mpfr_cmp(a.im().mid(), b.im().mid()) < 0;
            });
  return boxes;
}

}  // namespace

std::vector<ComplexBall> isolate_all_roots(const IntPoly& p, long prec) {
  if (p.degree() <= 0) return {};
  if (p.degree() == 1) {
    mpq_class r(-p[0], p[1]);
    r.canonicalize();
    return {ComplexBall::from_real(RealBall::from_rational(r, prec))};
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (auto boxes = try_isolate(p, prec + 32 * attempt, attempt))
      return *boxes;
  }
  throw PrecisionExhausted("complex root isolation failed at prec " +
                           std::to_string(prec));
}

// ---------------------------------------------------------------------------
// Factorization over Z by root-cluster reconstruction
// ---------------------------------------------------------------------------

namespace {

// Tries to reconstruct an integer factor from the root subset `mask`.
// Returns the factor iff the rounded candidate divides p exactly.
// Sets `ambiguous` when coefficient enclosures were too wide to decide.
std::optional<IntPoly> try_subset(const IntPoly& p,
                                  const std::vector<ComplexBall>& roots,
                                  unsigned mask, bool& ambiguous) {
  const long prec = roots[0].prec();
  std::vector<ComplexBall> cf;  // lead * prod (X - r_i), ascending
  cf.push_back(ComplexBall::from_real(RealBall::exact_int(p.lead(), prec)));
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    cf.insert(cf.begin(), ComplexBall::exact_si(0, 0, prec));
    for (size_t j = 0; j + 1 < cf.size(); ++j)
      cf[j] = cf[j] - roots[i] * cf[j + 1];
  }
  std::vector<mpz_class> cand(cf.size());
  for (size_t j = 0; j < cf.size(); ++j) {
    if (!cf[j].im().contains_zero()) return std::nullopt;  // not conj-closed
    const RealBall& re = cf[j].re();
    mpfr_t half;
    mpfr_init2(half, 32);
    mpfr_set_d(half, 0.25, MPFR_RNDN);
    bool wide = mpfr_cmp(re.rad(), half) > 0;
    mpfr_clear(half);
    if (wide) {
      ambiguous = true;
      return std::nullopt;
    }
    mpfr_t rounded;
    mpfr_init2(rounded, prec);
    mpfr_round(rounded, re.mid());
    mpz_class n;
    mpfr_get_z(n.get_mpz_t(), rounded, MPFR_RNDN);
    mpfr_clear(rounded);
    if (!re.contains(mpq_class(n))) return std::nullopt;  // no integer inside
    cand[j] = n;
  }
  IntPoly candidate = IntPoly(std::move(cand)).primitive();
  if (candidate.degree() < 1) return std::nullopt;
  if (!p.divide_exact(candidate)) return std::nullopt;
  return candidate;
}

void factor_rec(const IntPoly& p, std::vector<IntPoly>& out) {
  if (p.degree() <= 1) {
    if (p.degree() == 1) out.push_back(p.primitive());
    return;
  }
  const int k = p.degree();
  if (k > 16) throw InvalidInput("factorization supports degree <= 16");
  for (long prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    std::vector<ComplexBall> roots = isolate_all_roots(p, prec);
    bool ambiguous = false;
    for (int size = 1; size <= k / 2; ++size) {
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        if (auto f = try_subset(p, roots, mask, ambiguous)) {
          IntPoly quo = p.divide_exact(*f)->primitive();
          factor_rec(*f, out);
          factor_rec(quo, out);
          return;
        }
      }
    }
    if (!ambiguous) {
      out.push_back(p.primitive());
      return;
    }
  }
  throw PrecisionExhausted("factorization ran out of precision");
}

}  // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& p) {
  std::vector<IntPoly> out;
  if (p.degree() < 1) return out;
  IntPoly sf = p.squarefree_part();
  factor_rec(sf, out);
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return out;
}

IntPoly minimal_polynomial_of_root(const IntPoly& p, const ComplexBall& root) {
  std::vector<IntPoly> factors = factor_squarefree(p);
  if (factors.size() == 1) return factors[0];
  for (long prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    const IntPoly* owner = nullptr;
    int hits = 0;
    for (const auto& f : factors) {
      for (const auto& box : isolate_all_roots(f, prec)) {
        if (box.overlaps(root)) {
          ++hits;
          owner = &f;
        }
      }
    }
    if (hits == 1) return *owner;
  }
  throw PrecisionExhausted("could not attribute root to a factor");
}

}  // namespace betarep
