#pragma once

// MPFR-backed real and complex numbers at a decimal precision P >= 15.

#include <complex>
#include <string>

#include <mpfr.h>

#include "ncmf/exactfield.hpp"

namespace ncmf {

/// Binary precision used for P decimal digits, including guard bits.
mpfr_prec_t bits_for_digits(int digits);

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 53);
  Real(double v, mpfr_prec_t bits);
  Real(const Rational& q, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;

  static Real pi(mpfr_prec_t bits);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& b) { return *this = *this + b; }

 private:
  mpfr_t v_;
};

class ComplexHP {
 public:
  explicit ComplexHP(int digits = 30);
  ComplexHP(Real re, Real im, int digits);
  ComplexHP(std::complex<long double> z, int digits);
  ComplexHP(const FieldElement& x, int digits);

  /// exp(2 pi i p / q).
  static ComplexHP root_of_unity(long p, long q, int digits);
  static ComplexHP from_polar(const Real& modulus, const Real& argument, int digits);

  int digits() const { return digits_; }
  const Real& re() const { return re_; }
  const Real& im() const { return im_; }

  friend ComplexHP operator+(const ComplexHP& a, const ComplexHP& b);
  friend ComplexHP operator-(const ComplexHP& a, const ComplexHP& b);
  friend ComplexHP operator*(const ComplexHP& a, const ComplexHP& b);
  friend ComplexHP operator/(const ComplexHP& a, const ComplexHP& b);
  ComplexHP& operator+=(const ComplexHP& b) { return *this = *this + b; }
  ComplexHP conj() const;
  ComplexHP scaled(const Real& k) const;
  ComplexHP pow(long n) const;
  Real abs() const;
  Real arg() const;
  /// Principal n-th root.
  ComplexHP root(long n) const;

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::complex<long double> to_complex_ld() const { return {re_.to_long_double(), im_.to_long_double()}; }

 private:
  int digits_;
  Real re_, im_;
};

}  // namespace ncmf
