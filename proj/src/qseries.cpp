#include "ncmf/qseries.hpp"

#include <json.hpp>

namespace ncmf {

namespace {

constexpr std::size_t kSchoolbookCutoff = 12;

std::vector<Integer> schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                std::size_t n) {
  std::vector<Integer> r(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t m = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return m;
}

// sum_{lo <= i < hi} v[i] 2^{slot (i - lo)}
Integer pack(const std::vector<Integer>& v, std::size_t lo, std::size_t hi, std::size_t slot) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  Integer high = pack(v, mid, hi, slot);
  mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), slot * (mid - lo));
  return high + pack(v, lo, mid, slot);
}

// Inverse of pack for signed digits with |digit| < 2^(slot-1).
void unpack(const Integer& x, std::size_t count, std::size_t slot, Integer* out) {
  if (count == 1) {
    *out = x;
    return;
  }
  std::size_t mid = count / 2;
  mp_bitcnt_t bits = slot * mid;
  Integer low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), x.get_mpz_t(), bits);
  if (mpz_tstbit(low.get_mpz_t(), bits - 1)) {
    Integer span;
    mpz_setbit(span.get_mpz_t(), bits);
    low -= span;
  }
  Integer high = x - low;
  mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), bits);
  unpack(low, mid, slot, out);
  unpack(high, count - mid, slot, out + mid);
}

// First n coefficients of a*b by Kronecker substitution.
std::vector<Integer> integer_product(std::vector<Integer> a, std::vector<Integer> b, std::size_t n) {
  if (a.size() > n) a.resize(n);
  if (b.size() > n) b.resize(n);
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  while (!b.empty() && sgn(b.back()) == 0) b.pop_back();
  if (a.empty() || b.empty()) return std::vector<Integer>(n);
  if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) return schoolbook(a, b, n);

  std::size_t terms = std::min(a.size(), b.size());
  std::size_t slot = max_bits(a) + max_bits(b) + mpz_sizeinbase(Integer(terms).get_mpz_t(), 2) + 2;
  Integer product = pack(a, 0, a.size(), slot) * pack(b, 0, b.size(), slot);

  std::size_t len = std::min(n, a.size() + b.size() - 1);
  Integer low;
  mp_bitcnt_t bits = slot * len;
  mpz_fdiv_r_2exp(low.get_mpz_t(), product.get_mpz_t(), bits);
  if (mpz_tstbit(low.get_mpz_t(), bits - 1)) {
    Integer span;
    mpz_setbit(span.get_mpz_t(), bits);
    low -= span;
  }
  std::vector<Integer> r(n);
  unpack(low, len, slot, r.data());
  return r;
}

// Coefficient vector written as (A0 + A1 zeta) / den with integer vectors.
struct ScaledVector {
  std::vector<Integer> a0, a1;
  Integer den{1};
  bool zeta = false;
};

ScaledVector scale(const std::vector<FieldElement>& v, std::size_t n) {
  ScaledVector s;
  std::size_t len = std::min(v.size(), n);
  for (std::size_t i = 0; i < len; ++i) {
    const FieldElement& x = v[i];
    if (x.tag() == FieldTag::QZeta3) s.zeta = true;
    mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), x.rational_part().get_den_mpz_t());
    mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), x.zeta_part().get_den_mpz_t());
  }
  s.a0.resize(len);
  s.a1.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const Rational& p = v[i].rational_part();
    const Rational& q = v[i].zeta_part();
    s.a0[i] = p.get_num() * (s.den / p.get_den());
    if (sgn(q) != 0) s.a1[i] = q.get_num() * (s.den / q.get_den());
  }
  return s;
}

bool all_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

}  // namespace

std::vector<FieldElement> multiply_truncated(const std::vector<FieldElement>& a,
                                             const std::vector<FieldElement>& b, std::size_t n) {
  ScaledVector sa = scale(a, n);
  ScaledVector sb = scale(b, n);
  const bool zeta = sa.zeta || sb.zeta;
  Integer den = sa.den * sb.den;
  std::vector<FieldElement> out(n);

  if (all_zero(sa.a1) && all_zero(sb.a1)) {
    std::vector<Integer> c = integer_product(std::move(sa.a0), std::move(sb.a0), n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational r(c[i], den);
      r.canonicalize();
      out[i] = zeta ? FieldElement(std::move(r), Rational(0)) : FieldElement(std::move(r));
    }
    return out;
  }
  // (A0 + A1 z)(B0 + B1 z) = (P - Q) + (R - P - 2Q) z with P = A0 B0, Q = A1 B1,
  // R = (A0 + A1)(B0 + B1)
  std::vector<Integer> sumA(sa.a0.size()), sumB(sb.a0.size());
  for (std::size_t i = 0; i < sumA.size(); ++i) sumA[i] = sa.a0[i] + sa.a1[i];
  for (std::size_t i = 0; i < sumB.size(); ++i) sumB[i] = sb.a0[i] + sb.a1[i];
  std::vector<Integer> P = integer_product(std::move(sa.a0), std::move(sb.a0), n);
  std::vector<Integer> Q = integer_product(std::move(sa.a1), std::move(sb.a1), n);
  std::vector<Integer> R = integer_product(std::move(sumA), std::move(sumB), n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational c0(P[i] - Q[i], den);
    Rational c1(R[i] - P[i] - 2 * Q[i], den);
    c0.canonicalize();
    c1.canonicalize();
    out[i] = FieldElement(std::move(c0), std::move(c1));
  }
  return out;
}

std::vector<F7> multiply_truncated(const std::vector<F7>& a, const std::vector<F7>& b,
                                   std::size_t n) {
  std::vector<unsigned> acc(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      acc[i + j] += static_cast<unsigned>(a[i].v) * b[j].v;
      if (acc[i + j] >= (1u << 30)) acc[i + j] %= 7;
    }
  }
  std::vector<F7> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F7(static_cast<int>(acc[i] % 7));
  return r;
}

namespace {

std::vector<Integer> divisor_power_sums(long n_max, unsigned k) {
  std::vector<Integer> sigma(static_cast<std::size_t>(n_max + 1));
  for (long d = 1; d <= n_max; ++d) {
    Integer dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
    for (long m = d; m <= n_max; m += d) sigma[static_cast<std::size_t>(m)] += dk;
  }
  return sigma;
}

Series eisenstein_level_one(long M, unsigned k, long scale) {
  std::vector<Integer> sigma = divisor_power_sums(M, k - 1);
  std::vector<FieldElement> c(static_cast<std::size_t>(M + 1));
  c[0] = FieldElement(1);
  for (long n = 1; n <= M; ++n) c[static_cast<std::size_t>(n)] = FieldElement(Integer(scale * sigma[static_cast<std::size_t>(n)]));
  return Series(0, std::move(c));
}

}  // namespace

Series level_one_series(LevelOneForm which, long N) {
  if (N < 1) throw SeriesError("level_one_series needs N >= 1");
  switch (which) {
    case LevelOneForm::E4: return eisenstein_level_one(N, 4, 240);
    case LevelOneForm::E6: return eisenstein_level_one(N, 6, -504);
    default: break;
  }
  // j = E4^3 / Delta needs Delta through q^(N+2)
  const long M = N + 2;
  Series e4 = eisenstein_level_one(M, 4, 240);
  Series e6 = eisenstein_level_one(M, 6, -504);
  Series e4cube = e4 * e4 * e4;
  Series diff = e4cube - e6 * e6;
  std::vector<FieldElement> delta(static_cast<std::size_t>(M + 1));
  for (long n = 0; n <= M; ++n) {
    delta[static_cast<std::size_t>(n)] = diff.coeff(n) / FieldElement(1728);
  }
  Series d(0, std::move(delta));
  if (which == LevelOneForm::Delta) return d.truncated(N + 1);
  Series j = e4cube / d;
  return j.truncated(N + 1);
}

Series substitute_scaled_power(const Series& a, const FieldElement& lambda, long w, long N) {
  if (w < 1) throw SeriesError("substitution exponent must be positive");
  if (lambda.is_zero()) throw SeriesError("substitution scale must be nonzero");
  const long start = w * a.start();
  const long trunc = std::min(N, w * a.trunc_order());
  if (trunc <= start) throw SeriesError("substitution leaves no known coefficients");
  Series r(start, trunc);
  FieldElement step = lambda;
  FieldElement power = FieldElement(1).with_tag(lambda.tag());
  if (a.start() < 0) {
    FieldElement inv = lambda.inverse();
    for (long m = 0; m > a.start(); --m) power *= inv;
  } else {
    for (long m = 0; m < a.start(); ++m) power *= step;
  }
  for (long m = a.start(); w * m < trunc; ++m) {
    const FieldElement& c = a.coeff(m);
    if (!c.is_zero()) r.set_coeff(w * m, c * power);
    power *= step;
  }
  return r;
}

SeriesF7 reduce_series(const Series& a, const PrimeReduction& pr) {
  return a.map([&](const FieldElement& c) { return F7(reduce_mod_prime7(c, pr)); });
}

std::string series_to_json(const Series& s) {
  nlohmann::ordered_json j;
  j["startExponent"] = s.start();
  j["truncOrder"] = s.trunc_order();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

}  // namespace ncmf
