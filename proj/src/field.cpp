#include "betarep/field.hpp"

#include <sstream>

namespace betarep {

FieldDesc FieldDesc::quadratic(long d) {
  if (d <= 1) throw InvalidInput("quadratic field needs d > 1");
  // squarefree check by trial division (desk-scale d)
  long n = d;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) throw InvalidInput("d must be squarefree");
    while (n % p == 0) n /= p;
  }
  FieldDesc f;
  f.d_ = d;
  return f;
}

std::string FieldDesc::str() const {
  return is_rational() ? "Q" : "Q(sqrt " + std::to_string(*d_) + ")";
}

KElem::KElem(FieldDesc K, mpz_class a, mpz_class b, mpz_class den)
    : K_(K), a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
  if (den_ == 0) throw InvalidInput("zero denominator");
  if (K_.is_rational() && b_ != 0)
    throw InvalidInput("nonzero sqrt coordinate in Q");
  reduce();
}

void KElem::reduce() {
  if (den_ < 0) {
    den_ = -den_;
    a_ = -a_;
    b_ = -b_;
  }
  mpz_class g = gcd(gcd(a_, b_), den_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    den_ /= g;
  }
}

KElem KElem::from_int(const FieldDesc& K, const mpz_class& v) {
  return KElem(K, v, 0, 1);
}

KElem KElem::from_rational(const FieldDesc& K, const mpq_class& v) {
  return KElem(K, v.get_num(), 0, v.get_den());
}

KElem KElem::sqrt_gen(const FieldDesc& K) {
  if (K.is_rational()) throw InvalidInput("sqrt generator needs quadratic K");
  return KElem(K, 0, 1, 1);
}

mpq_class KElem::as_rational() const {
  if (b_ != 0) throw InvalidInput("not a rational element");
  mpq_class q(a_, den_);
  q.canonicalize();
  return q;
}

KElem KElem::operator-() const { return KElem(K_, -a_, -b_, den_); }

KElem KElem::operator+(const KElem& o) const {
  return KElem(K_, a_ * o.den_ + o.a_ * den_, b_ * o.den_ + o.b_ * den_,
               den_ * o.den_);
}

KElem KElem::operator-(const KElem& o) const { return *this + (-o); }

KElem KElem::operator*(const KElem& o) const {
  mpz_class d = K_.is_rational() ? mpz_class(0) : mpz_class(K_.d());
  return KElem(K_, a_ * o.a_ + d * b_ * o.b_, a_ * o.b_ + b_ * o.a_,
               den_ * o.den_);
}

KElem KElem::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (K_.is_rational()) return KElem(K_, den_, 0, a_);
  // 1/x = conj(x) / N(x); N((a + b sqrt d)/den) = (a^2 - d b^2)/den^2
  mpz_class n = a_ * a_ - mpz_class(K_.d()) * b_ * b_;
  // (den * (a - b sqrt d)) / n
  return KElem(K_, den_ * a_, -den_ * b_, n);
}

KElem KElem::operator/(const KElem& o) const { return *this * o.inv(); }

bool KElem::operator==(const KElem& o) const {
  return a_ == o.a_ && b_ == o.b_ && den_ == o.den_;
}

KElem KElem::conj() const { return KElem(K_, a_, -b_, den_); }

mpq_class KElem::norm() const {
  mpq_class r;
  if (K_.is_rational()) {
    r = mpq_class(a_, den_);
  } else {
    r = mpq_class(a_ * a_ - mpz_class(K_.d()) * b_ * b_, den_ * den_);
  }
  r.canonicalize();
  return r;
}

mpq_class KElem::trace() const {
  mpq_class r = K_.is_rational() ? mpq_class(a_, den_) : mpq_class(2 * a_, den_);
  r.canonicalize();
  return r;
}

KElem KElem::pow(long e) const {
  KElem base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
  KElem acc = from_int(K_, 1);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

bool KElem::is_integral() const {
  if (is_rational()) return den_ == 1;
  return trace().get_den() == 1 && norm().get_den() == 1;
}

bool KElem::divisible_by(const KElem& q) const {
  if (q.is_zero()) return is_zero();
  return (*this / q).is_integral();
}

int KElem::sign() const {
  // sign of a + b sqrt(d) (den > 0), exactly
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with d b^2
  mpz_class lhs = a_ * a_, rhs = mpz_class(K_.d()) * b_ * b_;
  if (lhs == rhs) return 0;  // cannot happen for squarefree d with b != 0
  return lhs > rhs ? sa : sb;
}

int KElem::cmp(const mpq_class& q) const {
  return (*this - from_rational(K_, q)).sign();
}

IntPoly KElem::min_poly() const {
  if (is_rational()) {
    // den X - a
    return IntPoly({-a_, den_}).primitive();
  }
  // X^2 - tr X + N, cleared to integers
  mpq_class tr = trace(), nm = norm();
  mpz_class l = lcm(tr.get_den(), nm.get_den());
  mpz_class c2 = l;
  mpq_class c1 = -tr * l, c0 = nm * l;
  return IntPoly({c0.get_num(), c1.get_num(), c2}).primitive();
}

RealBall KElem::to_ball(long prec) const {
  RealBall num = RealBall::exact_int(a_, prec);
  if (b_ != 0) {
    RealBall sq = RealBall::exact_si(K_.d(), prec).sqrt();
    num = num + RealBall::exact_int(b_, prec) * sq;
  }
  return num / RealBall::exact_int(den_, prec);
}

std::string KElem::str() const {
  std::ostringstream os;
  if (is_rational()) {
    os << a_.get_str();
    if (den_ != 1) os << "/" << den_.get_str();
    return os.str();
  }
  os << "(" << a_.get_str();
  if (b_ >= 0) os << "+";
  os << b_.get_str() << "*sqrt" << K_.d() << ")";
  if (den_ != 1) os << "/" << den_.get_str();
  return os.str();
}

}  // namespace betarep
