#include "betarep/kpoly.hpp"

namespace betarep {

KPoly::KPoly(FieldDesc K, std::vector<KElem> coeffs)
    : K_(K), c_(std::move(coeffs)) {
  normalize();
}

void KPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly KPoly::from_int_poly(const FieldDesc& K, const IntPoly& p) {
  std::vector<KElem> c;
  c.reserve(p.coeffs().size());
  for (const auto& z : p.coeffs()) c.push_back(KElem::from_int(K, z));
  return KPoly(K, std::move(c));
}

KPoly KPoly::constant(const KElem& c) {
  return KPoly(c.field(), {c});
}

KPoly KPoly::operator+(const KPoly& o) const {
  std::vector<KElem> c(std::max(c_.size(), o.c_.size()), KElem::from_int(K_, 0));
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
  return KPoly(K_, std::move(c));
}

KPoly KPoly::operator-(const KPoly& o) const {
  std::vector<KElem> c(std::max(c_.size(), o.c_.size()), KElem::from_int(K_, 0));
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] - o.c_[i];
  return KPoly(K_, std::move(c));
}

KPoly KPoly::operator*(const KPoly& o) const {
  if (is_zero() || o.is_zero()) return KPoly(K_, {});
  std::vector<KElem> c(c_.size() + o.c_.size() - 1, KElem::from_int(K_, 0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = c[i + j] + c_[i] * o.c_[j];
  return KPoly(K_, std::move(c));
}

KPoly KPoly::operator*(const KElem& s) const {
  std::vector<KElem> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x * s);
  return KPoly(K_, std::move(c));
}

KPoly KPoly::derivative() const {
  if (c_.size() <= 1) return KPoly(K_, {});
  std::vector<KElem> c;
  c.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    c.push_back(c_[i] * KElem::from_int(K_, mpz_class(i)));
  return KPoly(K_, std::move(c));
}

KPoly KPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

std::pair<KPoly, KPoly> KPoly::divmod(const KPoly& o) const {
  if (o.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<KElem> rem = c_;
  auto deg = [](const std::vector<KElem>& v) {
    return static_cast<int>(v.size()) - 1;
  };
  while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
  if (deg(rem) < o.degree()) return {KPoly(K_, {}), KPoly(K_, rem)};
  std::vector<KElem> quo(rem.size() - o.c_.size() + 1, KElem::from_int(K_, 0));
  KElem linv = o.lead().inv();
  while (deg(rem) >= o.degree()) {
    KElem f = rem.back() * linv;
    size_t off = rem.size() - o.c_.size();
    quo[off] = f;
    for (size_t i = 0; i < o.c_.size(); ++i)
      rem[off + i] = rem[off + i] - f * o.c_[i];
    while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
    if (rem.empty()) break;
  }
  return {KPoly(K_, std::move(quo)), KPoly(K_, std::move(rem))};
}

KElem KPoly::eval(const KElem& x) const {
  KElem acc = KElem::from_int(K_, 0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RealBall KPoly::eval_ball(const RealBall& x, long prec) const {
  std::vector<RealBall> cb;
  cb.reserve(c_.size());
  for (const auto& c : c_) cb.push_back(c.to_ball(prec));
  return eval_poly(cb, x);
}

ComplexBall KPoly::eval_ball(const ComplexBall& x, long prec) const {
  std::vector<ComplexBall> cb;
  cb.reserve(c_.size());
  for (const auto& c : c_) cb.push_back(ComplexBall::from_real(c.to_ball(prec)));
  return eval_poly(cb, x);
}

KPoly KPoly::conj() const {
  std::vector<KElem> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.conj());
  return KPoly(K_, std::move(c));
}

IntPoly KPoly::norm_poly() const {
  KPoly prod = K_.is_rational() ? *this : *this * conj();
  // all coefficients are rational; clear denominators
  mpz_class den = 1;
  for (const auto& c : prod.coeffs()) {
    if (!c.is_rational()) throw InternalError("norm poly not rational");
    den = lcm(den, c.as_rational().get_den());
  }
  std::vector<mpz_class> z;
  z.reserve(prod.coeffs().size());
  for (const auto& c : prod.coeffs()) {
    mpq_class v = c.as_rational() * den;
    z.push_back(v.get_num());
  }
  return IntPoly(std::move(z)).primitive();
}

KPoly kpoly_gcd(const KPoly& a, const KPoly& b) {
  KPoly u = a, v = b;
  while (!v.is_zero()) {
    KPoly r = u.divmod(v).second;
    u = v;
    v = r;
  }
  if (u.is_zero()) return u;
  return u.monic();
}

NumberField::NumberField(FieldDesc K, KPoly modulus)
    : K_(K), mod_(modulus.monic()) {
  if (mod_.degree() < 1) throw InvalidInput("modulus must be nonconstant");
}

KPoly NumberField::reduce(const KPoly& p) const { return p.divmod(mod_).second; }

KPoly NumberField::mul(const KPoly& a, const KPoly& b) const {
  return reduce(a * b);
}

KPoly NumberField::inv(const KPoly& a) const {
  // extended Euclid: s*a + t*mod = g
  KPoly r0 = mod_, r1 = reduce(a);
  if (r1.is_zero()) throw DomainError("inverse of zero in number field");
  KPoly s0 = KPoly(K_, {}), s1 = KPoly::constant(KElem::from_int(K_, 1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    KPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0.degree() != 0)
    throw DomainError("element not invertible modulo modulus");
  return reduce(s0 * r0.lead().inv());
}

KPoly NumberField::div(const KPoly& a, const KPoly& b) const {
  return mul(a, inv(b));
}

RealBall NumberField::eval_ball(const KPoly& a, const RealBall& theta,
                                long prec) const {
  return a.eval_ball(theta, prec);
}

bool NumberField::is_constant(const KPoly& a) const {
  return reduce(a).degree() <= 0;
}

}  // namespace betarep
