#include "ncmf/exactfield.hpp"


namespace ncmf {

FieldElement::FieldElement(Rational a, Rational b)
    : tag_(FieldTag::QZeta3), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

FieldElement FieldElement::with_tag(FieldTag tag) const {
  if (tag == FieldTag::Q && !is_rational()) {
    throw ExactFieldError("cannot view " + to_string(*this) + " as a rational");
  }
  FieldElement r = *this;
  r.tag_ = tag;
  return r;
}

FieldElement FieldElement::conjugate() const {
  if (tag_ == FieldTag::Q) return *this;
  // a + b*zeta^2 = (a - b) - b*zeta
  return FieldElement(a_ - b_, -b_);
}

Rational FieldElement::norm() const {
  // N(a + b zeta) = a^2 - a b + b^2
  Rational n = a_ * a_ - a_ * b_ + b_ * b_;
  return n;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZeroError();
  if (tag_ == FieldTag::Q) {
    Rational inv = 1 / a_;
    return FieldElement(inv);
  }
  Rational n = norm();
  FieldElement c = conjugate();
  return FieldElement(Rational(c.a_ / n), Rational(c.b_ / n));
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  a_ += rhs.a_;
  b_ += rhs.b_;
  promote_to(rhs.tag_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  promote_to(rhs.tag_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  if (tag_ == FieldTag::Q && rhs.tag_ == FieldTag::Q) {
    a_ *= rhs.a_;
    return *this;
  }
  // (a + b z)(c + d z) = (ac - bd) + (ad + bc - bd) z
  Rational bd = b_ * rhs.b_;
  Rational na = a_ * rhs.a_ - bd;
  Rational nb = a_ * rhs.b_ + b_ * rhs.a_ - bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  tag_ = FieldTag::QZeta3;
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  return *this *= rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw ExactFieldError("unknown arithmetic operation");
}

namespace {

std::string rational_text(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ExactFieldError("empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw ExactFieldError("malformed rational '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace

std::string to_string(const FieldElement& x) {
  std::string out = rational_text(x.rational_part());
  if (x.tag() == FieldTag::QZeta3) {
    const Rational& b = x.zeta_part();
    out += sgn(b) < 0 ? "-" : "+";
    out += rational_text(abs(b));
    out += "*z3";
  }
  return out;
}

FieldElement parse_field_element(std::string_view text) {
  constexpr std::string_view kZeta = "*z3";
  if (text.size() < kZeta.size() || text.substr(text.size() - kZeta.size()) != kZeta) {
    return FieldElement(parse_rational(text));
  }
  std::string_view body = text.substr(0, text.size() - kZeta.size());
  // split at the last sign that is not the leading one
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    return FieldElement(Rational(0), parse_rational(body));
  }
  return FieldElement(parse_rational(body.substr(0, split)), parse_rational(body.substr(split)));
}

long valuation(const Integer& a, unsigned long p) {
  if (sgn(a) == 0) return kInfiniteValuation;
  Integer v = abs(a);
  long k = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++k;
  }
  return k;
}

long valuation7(const Rational& a) {
  if (sgn(a) == 0) return kInfiniteValuation;
  return valuation(a.get_num(), 7) - valuation(a.get_den(), 7);
}

PrimeReduction PrimeReduction::zeta3(int residue) {
  if (residue != 2 && residue != 4) {
    throw ExactFieldError("zeta3 must reduce to 2 or 4 modulo a prime above 7");
  }
  return PrimeReduction(FieldTag::QZeta3, residue);
}

PrimeReduction PrimeReduction::conjugate() const {
  if (tag_ == FieldTag::Q) return *this;
  return PrimeReduction(FieldTag::QZeta3, residue_ == 2 ? 4 : 2);
}

FieldElement PrimeReduction::uniformizer() const {
  if (tag_ == FieldTag::Q) return FieldElement(7);
  if (residue_ == 2) return FieldElement(Rational(-2), Rational(1));
  return FieldElement(Rational(-3), Rational(-1));
}

namespace {

int mod7(const Integer& v) {
  long r = mpz_fdiv_ui(v.get_mpz_t(), 7);
  return static_cast<int>(r);
}

int inverse_mod7(int v) {
  static constexpr int kInv[7] = {0, 1, 4, 5, 2, 3, 6};
  return kInv[v];
}

// Element A + B*zeta of Z[zeta3] together with a positive denominator.
struct ScaledInteger {
  Integer a, b, den;
};

ScaledInteger clear_denominator(const FieldElement& x) {
  ScaledInteger s;
  mpz_lcm(s.den.get_mpz_t(), x.rational_part().get_den_mpz_t(), x.zeta_part().get_den_mpz_t());
  s.a = x.rational_part().get_num() * (s.den / x.rational_part().get_den());
  s.b = x.zeta_part().get_num() * (s.den / x.zeta_part().get_den());
  return s;
}

// Divides A + B*zeta by the uniformizer of the prime with zeta -> r.  The
// caller guarantees divisibility, i.e. A + B r == 0 mod 7.
void divide_by_uniformizer(Integer& a, Integer& b, int r) {
  // pi = zeta - 2 (r = 2) or -3 - zeta (r = 4); x / pi = x * conj(pi) / 7.
  // conj(zeta - 2) = -3 - zeta, conj(-3 - zeta) = zeta - 2.
  Integer ca = r == 2 ? Integer(-3) : Integer(-2);
  Integer cb = r == 2 ? Integer(-1) : Integer(1);
  Integer bd = b * cb;
  Integer na = a * ca - bd;
  Integer nb = a * cb + b * ca - bd;
  mpz_divexact_ui(a.get_mpz_t(), na.get_mpz_t(), 7);
  mpz_divexact_ui(b.get_mpz_t(), nb.get_mpz_t(), 7);
}

}  // namespace

long valuation_at(const FieldElement& x, const PrimeReduction& pr) {
  if (x.is_zero()) return kInfiniteValuation;
  if (pr.tag() == FieldTag::Q || x.is_rational()) {
    if (!x.is_rational()) throw ExactFieldError("rational prime applied to a Q(zeta3) element");
    return valuation7(x.rational_part());
  }
  ScaledInteger s = clear_denominator(x);
  const int r = pr.residue();
  long v = -valuation(s.den, 7);
  while (mod7(s.a + s.b * r) == 0) {
    divide_by_uniformizer(s.a, s.b, r);
    ++v;
  }
  return v;
}

int reduce_mod_prime7(const FieldElement& x, const PrimeReduction& pr) {
  if (x.is_zero()) return 0;
  if (pr.tag() == FieldTag::Q) {
    if (!x.is_rational()) throw ExactFieldError("rational prime applied to a Q(zeta3) element");
    const Rational& q = x.rational_part();
    if (mpz_divisible_ui_p(q.get_den_mpz_t(), 7)) {
      throw NotIntegralError("7 divides the denominator of " + to_string(x));
    }
    return mod7(q.get_num()) * inverse_mod7(mod7(q.get_den())) % 7;
  }
  ScaledInteger s = clear_denominator(x);
  const int r = pr.residue();
  long m = valuation(s.den, 7);
  Integer den = s.den;
  for (long i = 0; i < m; ++i) {
    if (mod7(s.a + s.b * r) != 0) {
      throw NotIntegralError(to_string(x) + " has a denominator at the prime zeta3 -> " +
                             std::to_string(r));
    }
    divide_by_uniformizer(s.a, s.b, r);
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 7);
  }
  // x = (a + b zeta) / (conj(pi)^m * den); conj(pi) reduces to 2 at either prime
  const int conj_pi = 2;
  int value = (mod7(s.a) + mod7(s.b) * r) % 7;
  int scale = inverse_mod7(mod7(den));
  for (long i = 0; i < m; ++i) scale = scale * inverse_mod7(conj_pi) % 7;
  return value * scale % 7;
}

}  // namespace ncmf
