#include "ncmf/complex_hp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncmf {

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 15) throw std::invalid_argument("precision must be at least 15 digits");
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {

mpfr_prec_t joint(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

ComplexHP::ComplexHP(int digits)
    : digits_(digits), re_(bits_for_digits(digits)), im_(bits_for_digits(digits)) {}

ComplexHP::ComplexHP(Real re, Real im, int digits) : digits_(digits), re_(std::move(re)), im_(std::move(im)) {}

ComplexHP::ComplexHP(std::complex<long double> z, int digits) : ComplexHP(digits) {
  mpfr_set_ld(re_.get(), z.real(), MPFR_RNDN);
  mpfr_set_ld(im_.get(), z.imag(), MPFR_RNDN);
}

ComplexHP::ComplexHP(const FieldElement& x, int digits) : ComplexHP(digits) {
  // a + b zeta3 = (a - b/2) + i b sqrt(3)/2
  const mpfr_prec_t bits = bits_for_digits(digits);
  Real a(x.rational_part(), bits);
  Real b(x.zeta_part(), bits);
  Real half(0.5, bits);
  Real s3(bits);
  mpfr_sqrt_ui(s3.get(), 3, MPFR_RNDN);
  re_ = a - b * half;
  im_ = b * s3 * half;
}

ComplexHP ComplexHP::root_of_unity(long p, long q, int digits) {
  const mpfr_prec_t bits = bits_for_digits(digits);
  long r = p % q;
  if (r < 0) r += q;
  Real angle = Real::pi(bits) * Real(Rational(2 * r, q), bits);
  ComplexHP z(digits);
  mpfr_sin_cos(z.im_.get(), z.re_.get(), angle.get(), MPFR_RNDN);
  return z;
}

ComplexHP ComplexHP::from_polar(const Real& modulus, const Real& argument, int digits) {
  ComplexHP z(digits);
  mpfr_sin_cos(z.im_.get(), z.re_.get(), argument.get(), MPFR_RNDN);
  z.re_ = z.re_ * modulus;
  z.im_ = z.im_ * modulus;
  return z;
}

ComplexHP operator+(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re_ + b.re_, a.im_ + b.im_, std::max(a.digits_, b.digits_));
}

ComplexHP operator-(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re_ - b.re_, a.im_ - b.im_, std::max(a.digits_, b.digits_));
}

ComplexHP operator*(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_,
                   std::max(a.digits_, b.digits_));
}

ComplexHP operator/(const ComplexHP& a, const ComplexHP& b) {
  Real n = b.re_ * b.re_ + b.im_ * b.im_;
  ComplexHP num = a * b.conj();
  return ComplexHP(num.re_ / n, num.im_ / n, std::max(a.digits_, b.digits_));
}

ComplexHP ComplexHP::conj() const { return ComplexHP(re_, -im_, digits_); }

ComplexHP ComplexHP::scaled(const Real& k) const { return ComplexHP(re_ * k, im_ * k, digits_); }

ComplexHP ComplexHP::pow(long n) const {
  ComplexHP base = n < 0 ? ComplexHP(Real(1.0, re_.precision()), Real(re_.precision()), digits_) / *this : *this;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  ComplexHP r(Real(1.0, re_.precision()), Real(re_.precision()), digits_);
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

Real ComplexHP::abs() const {
  Real r(re_.precision());
  mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
  return r;
}

Real ComplexHP::arg() const {
  Real r(re_.precision());
  mpfr_atan2(r.get(), im_.get(), re_.get(), MPFR_RNDN);
  return r;
}

ComplexHP ComplexHP::root(long n) const {
  Real modulus = abs();
  Real m(modulus.precision());
  mpfr_rootn_ui(m.get(), modulus.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  Real a = arg() / Real(static_cast<double>(n), modulus.precision());
  return from_polar(m, a, digits_);
}

}  // namespace ncmf
