#pragma once

// Exact arithmetic in Q and Q(zeta_3), valuations at 7 and reduction modulo a
// prime above 7.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncmf {

using Integer = mpz_class;
using Rational = mpq_class;

class ExactFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroError : public ExactFieldError {
 public:
  DivisionByZeroError() : ExactFieldError("division by zero") {}
};

/// Raised when an element has a denominator at the prime used for reduction.
class NotIntegralError : public ExactFieldError {
 public:
  using ExactFieldError::ExactFieldError;
};

enum class FieldTag : std::uint8_t { Q = 0, QZeta3 = 1 };

/// An element a + b*zeta3 of Q(zeta3), or a rational when tagged Q.
///
/// zeta3 satisfies zeta3^2 + zeta3 + 1 = 0.  Mixed-tag arithmetic promotes the
/// rational operand, so the result is tagged with the larger field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  FieldElement(int value) : a_(value) {}   // NOLINT(google-explicit-constructor)
  FieldElement(const Integer& value) : a_(value) {}  // NOLINT
  FieldElement(Rational value) : a_(std::move(value)) { a_.canonicalize(); }  // NOLINT
  FieldElement(Rational a, Rational b);

  static FieldElement zeta3() { return FieldElement(Rational(0), Rational(1)); }

  FieldTag tag() const { return tag_; }
  const Rational& rational_part() const { return a_; }
  const Rational& zeta_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Re-tags the element; demoting to Q requires a zero zeta3 part.
  FieldElement with_tag(FieldTag tag) const;

  /// Image under the nontrivial automorphism zeta3 -> zeta3^2 = -1 - zeta3.
  FieldElement conjugate() const;
  Rational norm() const;
  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
  friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
  friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
  friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }
  FieldElement operator-() const;

  /// Equality of values; the tag does not take part.
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  void promote_to(FieldTag tag) {
    if (tag == FieldTag::QZeta3) tag_ = FieldTag::QZeta3;
  }

  FieldTag tag_ = FieldTag::Q;
  Rational a_{0};
  Rational b_{0};
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Canonical text: "a/b" for Q, "a/b+c/d*z3" (or "a/b-c/d*z3") for Q(zeta3); "/1" is omitted.
std::string to_string(const FieldElement& x);
FieldElement parse_field_element(std::string_view text);

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// Exponent of 7 in a; kInfiniteValuation for 0.
long valuation7(const Rational& a);
long valuation(const Integer& a, unsigned long p);

/// A prime above 7: for Q this is 7 itself, for Q(zeta3) the prime on which
/// zeta3 reduces to `residue` (2 or 4).
class PrimeReduction {
 public:
  static PrimeReduction rational() { return PrimeReduction(FieldTag::Q, 0); }
  static PrimeReduction zeta3(int residue);

  FieldTag tag() const { return tag_; }
  int residue() const { return residue_; }
  /// The other prime above 7 (same prime for Q).
  PrimeReduction conjugate() const;
  /// Generator of the prime ideal: 7, zeta3 - 2, or -3 - zeta3.
  FieldElement uniformizer() const;

  friend bool operator==(const PrimeReduction&, const PrimeReduction&) = default;

 private:
  PrimeReduction(FieldTag tag, int residue) : tag_(tag), residue_(residue) {}
  FieldTag tag_;
  int residue_;
};

/// Valuation of x at the prime; kInfiniteValuation for 0.
long valuation_at(const FieldElement& x, const PrimeReduction& pr);

/// Image of x in F_7.  Throws NotIntegralError when x has a denominator at pr.
int reduce_mod_prime7(const FieldElement& x, const PrimeReduction& pr);

}  // namespace ncmf
