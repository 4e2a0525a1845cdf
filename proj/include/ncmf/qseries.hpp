#pragma once

// Truncated Laurent series and the level-one q-expansions E4, E6, Delta, j.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncmf/exactfield.hpp"

namespace ncmf {

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of the prime field F_7.
struct F7 {
  std::uint8_t v = 0;

  F7() = default;
  F7(int x) : v(static_cast<std::uint8_t>(((x % 7) + 7) % 7)) {}  // NOLINT

  F7& operator+=(F7 o) { v = static_cast<std::uint8_t>((v + o.v) % 7); return *this; }
  F7& operator-=(F7 o) { v = static_cast<std::uint8_t>((v + 7 - o.v) % 7); return *this; }
  F7& operator*=(F7 o) { v = static_cast<std::uint8_t>((v * o.v) % 7); return *this; }
  F7& operator/=(F7 o) { return *this *= o.inverse(); }
  friend F7 operator+(F7 a, F7 b) { return a += b; }
  friend F7 operator-(F7 a, F7 b) { return a -= b; }
  friend F7 operator*(F7 a, F7 b) { return a *= b; }
  friend F7 operator/(F7 a, F7 b) { return a /= b; }
  F7 operator-() const { return F7(7 - v); }
  friend bool operator==(F7 a, F7 b) { return a.v == b.v; }

  bool is_zero() const { return v == 0; }
  F7 inverse() const {
    static constexpr std::uint8_t kInv[7] = {0, 1, 4, 5, 2, 3, 6};
    if (v == 0) throw DivisionByZeroError();
    F7 r;
    r.v = kInv[v];
    return r;
  }
};

inline bool is_zero_scalar(const FieldElement& x) { return x.is_zero(); }
inline bool is_zero_scalar(F7 x) { return x.is_zero(); }

/// First n coefficients of the product of two coefficient vectors.
std::vector<FieldElement> multiply_truncated(const std::vector<FieldElement>& a,
                                             const std::vector<FieldElement>& b, std::size_t n);
std::vector<F7> multiply_truncated(const std::vector<F7>& a, const std::vector<F7>& b,
                                   std::size_t n);

/// Sum_{e >= start} c_e x^e with coefficients known for start <= e < trunc_order.
template <class Scalar>
class LaurentSeries {
 public:
  LaurentSeries() : start_(0), coeffs_(1) {}

  /// Zero series known on [start, trunc).
  LaurentSeries(long start, long trunc) : start_(start) {
    if (trunc <= start) throw SeriesError("truncation order must exceed the start exponent");
    coeffs_.assign(static_cast<std::size_t>(trunc - start), Scalar(0));
  }

  LaurentSeries(long start, std::vector<Scalar> coeffs) : start_(start), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw SeriesError("series needs at least one known coefficient");
  }

  static LaurentSeries monomial(const Scalar& c, long e, long trunc) {
    LaurentSeries s(e, trunc);
    s.coeffs_[0] = c;
    return s;
  }

  long start() const { return start_; }
  long trunc_order() const { return start_ + static_cast<long>(coeffs_.size()); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar coeff(long e) const {
    if (e < start_) return Scalar(0);
    if (e >= trunc_order()) {
      throw SeriesError("coefficient " + std::to_string(e) + " is beyond the truncation order " +
                        std::to_string(trunc_order()));
    }
    return coeffs_[static_cast<std::size_t>(e - start_)];
  }
  void set_coeff(long e, Scalar c) {
    if (e < start_ || e >= trunc_order()) throw SeriesError("coefficient index out of range");
    coeffs_[static_cast<std::size_t>(e - start_)] = std::move(c);
  }

  /// Exponent of the first nonzero coefficient, or trunc_order() if none is known.
  long valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!is_zero_scalar(coeffs_[i])) return start_ + static_cast<long>(i);
    }
    return trunc_order();
  }

  /// Same series known on [start, min(trunc, trunc_order())).
  LaurentSeries truncated(long trunc) const {
    trunc = std::min(trunc, trunc_order());
    if (trunc <= start_) throw SeriesError("truncation below the start exponent");
    return LaurentSeries(start_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + (trunc - start_)));
  }

  /// Drops known leading zeros so that start() is the valuation.
  LaurentSeries normalized() const {
    long v = valuation();
    if (v == trunc_order()) throw SeriesError("series is zero to its truncation order");
    return LaurentSeries(v, std::vector<Scalar>(coeffs_.begin() + (v - start_), coeffs_.end()));
  }

  /// x^k times the series.
  LaurentSeries shifted(long k) const { return LaurentSeries(start_ + k, coeffs_); }

  template <class F>
  auto map(F&& f) const {
    using R = decltype(f(coeffs_[0]));
    std::vector<R> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return LaurentSeries<R>(start_, std::move(out));
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = combine(*this, o, 1); }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = combine(*this, o, -1); }
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, 1); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, -1); }
  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    long trunc = std::min(a.trunc_order() + b.start_, b.trunc_order() + a.start_);
    long start = a.start_ + b.start_;
    auto n = static_cast<std::size_t>(trunc - start);
    return LaurentSeries(start, multiply_truncated(a.coeffs_, b.coeffs_, n));
  }
  friend LaurentSeries operator*(Scalar k, LaurentSeries a) {
    for (auto& c : a.coeffs_) c *= k;
    return a;
  }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  /// Reciprocal; known to relative precision trunc_order() - valuation().
  LaurentSeries inverse() const {
    LaurentSeries u = normalized();
    const std::size_t n = u.coeffs_.size();
    std::vector<Scalar> x{Scalar(1) / u.coeffs_[0]};
    std::size_t p = 1;
    // x <- x + x(1 - u x), doubling the number of correct terms
    while (p < n) {
      std::size_t q = std::min(2 * p, n);
      std::vector<Scalar> ux =
          multiply_truncated(std::vector<Scalar>(u.coeffs_.begin(), u.coeffs_.begin() + q), x, q);
      for (auto& c : ux) c = -c;
      ux[0] += Scalar(1);
      std::vector<Scalar> corr = multiply_truncated(x, ux, q);
      x.resize(q, Scalar(0));
      for (std::size_t i = p; i < q; ++i) x[i] += corr[i];
      p = q;
    }
    return LaurentSeries(-u.start_, std::move(x));
  }

  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

  /// k-th power, k >= 1.
  LaurentSeries pow(unsigned k) const {
    if (k == 0) throw SeriesError("pow needs a positive exponent");
    LaurentSeries base = *this;
    std::optional<LaurentSeries> r;
    for (;;) {
      if (k & 1u) r = r ? *r * base : base;
      k >>= 1u;
      if (k == 0) break;
      base = base * base;
    }
    return *r;
  }

  /// Evaluates the polynomial with coefficients p (constant term first) at s.
  static LaurentSeries polynomial_at(const std::vector<Scalar>& p, const LaurentSeries& s) {
    if (p.size() < 2) throw SeriesError("polynomial must have positive degree");
    LaurentSeries r = p.back() * s;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
      r = r.plus_constant(p[i]);
      if (i > 0) r = r * s;
    }
    return r;
  }

  LaurentSeries plus_constant(const Scalar& c) const {
    if (trunc_order() <= 0) return *this;
    LaurentSeries r = *this;
    if (start_ > 0) {
      std::vector<Scalar> v(static_cast<std::size_t>(start_), Scalar(0));
      v.insert(v.end(), coeffs_.begin(), coeffs_.end());
      r = LaurentSeries(0, std::move(v));
    }
    r.coeffs_[static_cast<std::size_t>(-r.start_)] += c;
    return r;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.start_ == b.start_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, int sign) {
    long start = std::min(a.start_, b.start_);
    long trunc = std::min(a.trunc_order(), b.trunc_order());
    if (trunc <= start) throw SeriesError("sum has no known coefficients");
    LaurentSeries r(start, trunc);
    for (long e = start; e < trunc; ++e) {
      Scalar c = a.coeff(e);
      if (sign > 0) {
        c += b.coeff(e);
      } else {
        c -= b.coeff(e);
      }
      r.coeffs_[static_cast<std::size_t>(e - start)] = std::move(c);
    }
    return r;
  }

  long start_;
  std::vector<Scalar> coeffs_;
};

using Series = LaurentSeries<FieldElement>;
using SeriesF7 = LaurentSeries<F7>;

enum class LevelOneForm { E4, E6, Delta, J };

/// q-expansion of a level-one form known through q^N (trunc_order N + 1).
Series level_one_series(LevelOneForm which, long N);

/// Substitutes q = lambda * x^w; the result is known below min(N, w * trunc_order()).
Series substitute_scaled_power(const Series& a, const FieldElement& lambda, long w, long N);

/// Reduces every coefficient modulo the prime; throws NotIntegralError on a denominator.
SeriesF7 reduce_series(const Series& a, const PrimeReduction& pr);

std::string series_to_json(const Series& s);

}  // namespace ncmf
