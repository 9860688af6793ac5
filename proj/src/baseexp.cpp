#include "betarep/baseexp.hpp"

#include <algorithm>
#include <sstream>

namespace betarep {

BaseSpec make_base(const FieldDesc& K, const KElem& beta) {
  if (!(beta.field() == K)) throw UnsupportedBase("base field mismatch");
  if (!beta.is_integral())
    throw UnsupportedBase("beta must be an algebraic integer");
  if (beta.cmp(mpq_class(1)) <= 0)
    throw UnsupportedBase("beta must be greater than one");
  mpq_class n = beta.norm();
  mpz_class norm_abs = abs(n.get_num());
  if (norm_abs <= 1)
    throw UnsupportedBase("beta is a unit: |N(beta)| = " + norm_abs.get_str());
  if (norm_abs > (1 << 20))
    throw UnsupportedBase("digit alphabet too large for this toolkit");
  // digits are pairwise incongruent mod beta iff no proper divisor g of
  // |N(beta)| is divisible by beta (g and 0 would share a residue)
  if (!beta.is_rational()) {
    mpz_class g = 1;
    for (mpz_class p = 1; p * p <= norm_abs; ++p) {
      if (norm_abs % p != 0) continue;
      for (const mpz_class& dvs : {p, mpz_class(norm_abs / p)}) {
        if (dvs == norm_abs) continue;
        KElem gk = KElem::from_int(K, dvs);
        if (gk.divisible_by(beta))
          throw UnsupportedBase(
              "digit set is not a complete residue system mod beta");
      }
    }
    (void)g;
  }
  return BaseSpec{K, beta, norm_abs};
}

BaseSpec make_base_integer(long b) {
  if (b < 2) throw UnsupportedBase("integer base must be >= 2");
  FieldDesc K;
  return make_base(K, KElem::from_int(K, b));
}

std::string DigitString::str(const BaseSpec& base) const {
  std::ostringstream os;
  bool dotted = base.norm_abs > 10;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (dotted && i) os << ".";
    os << digits[i];
  }
  return os.str();
}

void PalindromicPattern::validate(const BaseSpec& base) const {
  if (l < 1 || m < 1) throw InvalidInput("pattern needs l, m >= 1");
  if (d1 < 1 || mpz_class(d1) >= base.norm_abs)
    throw InvalidInput("d1 out of digit range");
  if (d2 < 0 || mpz_class(d2) >= base.norm_abs)
    throw InvalidInput("d2 out of digit range");
}

long default_digit_cap(const KElem& alpha) {
  mpq_class n = alpha.norm();
  mpz_class mag = abs(n.get_num()) + abs(n.get_den());
  return 4 * static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2)) + 64;
}

std::optional<DigitString> expand(const KElem& alpha, const BaseSpec& base,
                                  long digit_cap) {
  if (!alpha.is_integral())
    throw InvalidInput("expansion needs an algebraic integer");
  if (alpha.is_zero()) return DigitString{{0}};
  if (base.is_integer_base() && alpha.is_rational()) {
    mpq_class v = alpha.as_rational();
    if (v < 0) return std::nullopt;  // greedy never terminates below zero
    DigitString s = digits_of_integer(v.get_num(), base.integer_base());
    if (static_cast<long>(s.size()) > digit_cap) return std::nullopt;
    return s;
  }
  std::vector<long> lsb;
  KElem cur = alpha;
  long n = base.norm_abs.get_si();
  for (long step = 0; step < digit_cap; ++step) {
    if (cur.is_zero()) {
      std::reverse(lsb.begin(), lsb.end());
      return DigitString{std::move(lsb)};
    }
    bool found = false;
    for (long d = 0; d < n; ++d) {
      KElem shifted = cur - KElem::from_int(base.K, d);
      if (shifted.divisible_by(base.beta)) {
        lsb.push_back(d);
        cur = shifted / base.beta;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;  // unreachable after the residue check
  }
  return std::nullopt;  // cap reached
}

std::optional<DigitString> expand(const KElem& alpha, const BaseSpec& base) {
  return expand(alpha, base, default_digit_cap(alpha));
}

KElem evaluate(const DigitString& s, const BaseSpec& base) {
  KElem acc = KElem::from_int(base.K, 0);
  for (long d : s.digits) {
    if (d < 0 || mpz_class(d) >= base.norm_abs)
      throw InvalidInput("digit out of range");
    acc = acc * base.beta + KElem::from_int(base.K, d);
  }
  return acc;
}

DigitString render(const PalindromicPattern& p) {
  std::vector<long> d;
  d.reserve(p.total_len());
  for (long i = 0; i < p.l; ++i) d.push_back(p.d1);
  for (long i = 0; i < p.m; ++i) d.push_back(p.d2);
  for (long i = 0; i < p.l; ++i) d.push_back(p.d1);
  return DigitString{std::move(d)};
}

KElem pattern_value(const PalindromicPattern& p, const BaseSpec& base) {
  p.validate(base);
  const FieldDesc& K = base.K;
  KElem d1 = KElem::from_int(K, p.d1);
  KElem diff = KElem::from_int(K, p.d1 - p.d2);
  KElem b = base.beta;
  KElem num = d1 * b.pow(2 * p.l + p.m) - diff * b.pow(p.l + p.m) +
              diff * b.pow(p.l) - d1;
  KElem val = num / (b - KElem::from_int(K, 1));
  if (!val.is_integral())
    throw InternalError("pattern value escaped O_K");
  if (!(val == evaluate(render(p), base)))
    throw InternalError("pattern closed form disagrees with digit sum");
  return val;
}

std::vector<PalindromicPattern> match_pattern(const DigitString& s) {
  std::vector<PalindromicPattern> out;
  const auto& d = s.digits;
  const long len = static_cast<long>(d.size());
  if (len < 3 || d.empty() || d[0] == 0) return out;
  if (d[0] != d[len - 1]) return out;
  // run_end[i]: last index of the constant run starting at i
  std::vector<long> run_end(len);
  run_end[len - 1] = len - 1;
  for (long i = len - 2; i >= 0; --i)
    run_end[i] = d[i] == d[i + 1] ? run_end[i + 1] : i;
  const long head_run = run_end[0] - 0 + 1;
  long tail_run = 1;
  while (tail_run < len && d[len - 1 - tail_run] == d[len - 1]) ++tail_run;
  const long lmax = std::min({head_run, tail_run, (len - 1) / 2});
  for (long l = 1; l <= lmax; ++l) {
    long m = len - 2 * l;
    if (run_end[l] >= l + m - 1) {
      out.push_back(PalindromicPattern{d[0], d[l], l, m});
    }
  }
  return out;
}

DigitString digits_of_integer(const mpz_class& v, const mpz_class& b) {
  if (b < 2) throw InvalidInput("base must be >= 2");
  if (v < 0) throw InvalidInput("negative value");
  if (v == 0) return DigitString{{0}};
  std::vector<long> msb;
  if (b <= 36) {
    std::string s = v.get_str(b.get_si());
    msb.reserve(s.size());
    for (char ch : s) {
      long dig = (ch >= '0' && ch <= '9') ? ch - '0' : ch - 'a' + 10;
      msb.push_back(dig);
    }
    return DigitString{std::move(msb)};
  }
  mpz_class cur = v, q, r;
  while (cur > 0) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.get_mpz_t(), b.get_mpz_t());
    msb.push_back(r.get_si());
    cur = q;
  }
  std::reverse(msb.begin(), msb.end());
  return DigitString{std::move(msb)};
}

}  // namespace betarep
