#include "ncmf/hauptmodul.hpp"

#include <sstream>

namespace ncmf {

namespace {

using Poly = std::vector<FieldElement>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_pow(const Poly& a, int k) {
  Poly r{FieldElement(1)};
  for (int i = 0; i < k; ++i) r = poly_mul(r, a);
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), FieldElement(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

Poly poly_scale(Poly a, const FieldElement& k) {
  for (auto& c : a) c *= k;
  return a;
}

FieldElement poly_eval(const Poly& p, const FieldElement& x) {
  FieldElement r(0);
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// Index of the first nonzero coefficient, or -1.
long first_nonzero(const Poly& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) return static_cast<long>(i);
  }
  return -1;
}

CheckResult nonzero_check(const std::string& name, const FieldElement& v) {
  return {name, !v.is_zero(), "value " + to_string(v)};
}

FieldElement lambda_of(const GroupConstants& k) { return k.u.u_power.inverse(); }

// f3(z)^3 e3(z), jhat a1(z)^e and related series at a given zhat.
struct Evaluation {
  Series a1, f3, e3;
};

Evaluation evaluate_polys(const JEquationData& eq, const Series& z) {
  return {Series::polynomial_at(eq.a1(), z), Series::polynomial_at(eq.f3(), z),
          Series::polynomial_at(eq.e3(), z)};
}

Series a1_power(const Series& a1, int e) { return a1.pow(static_cast<unsigned>(e)); }

// F(z) = f3^3 e3 - jhat a1^e
Series newton_function(const JEquationData& eq, const Series& jhat, const Evaluation& ev) {
  Series f3sq = ev.f3 * ev.f3;
  return f3sq * ev.f3 * ev.e3 - jhat * a1_power(ev.a1, eq.exponent);
}

// F'(z) = 3 f3^2 f3' e3 + f3^3 - e jhat a1^(e-1)
Series newton_derivative(const JEquationData& eq, const Series& jhat, const Evaluation& ev,
                         const Series& z) {
  Series f3sq = ev.f3 * ev.f3;
  Series df3 = Series::polynomial_at({eq.c[1], FieldElement(2)}, z);
  Series lhs = FieldElement(3) * (f3sq * df3 * ev.e3) + f3sq * ev.f3;
  Series rhs = eq.exponent == 1 ? jhat : jhat * a1_power(ev.a1, eq.exponent - 1);
  return lhs - FieldElement(eq.exponent) * rhs;
}

Series padded(const Series& z, long trunc) {
  std::vector<FieldElement> c = z.coeffs();
  c.resize(static_cast<std::size_t>(trunc - z.start()), FieldElement(0));
  return Series(z.start(), std::move(c));
}

Series initial_zhat(FieldTag tag) {
  FieldElement zero = FieldElement(0).with_tag(tag);
  FieldElement one = FieldElement(1).with_tag(tag);
  return Series(-1, std::vector<FieldElement>{one, zero});
}

void require_consistent(const Series& F, long below, const GroupId& id) {
  for (long e = F.start(); e < std::min(below, F.trunc_order()); ++e) {
    if (!F.coeff(e).is_zero()) {
      throw SeriesError("hauptmodul solve for " + id.name() + ": the j-equation residual has " +
                        to_string(F.coeff(e)) + " at qhat^" + std::to_string(e) +
                        "; the constants admit no normalized solution");
    }
  }
}

}  // namespace

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << subject << ": " << (ok() ? "ok" : "FAILED") << '\n';
  for (const auto& c : checks) {
    out << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

Report verify_constants(const GroupConstants& k) {
  const JEquationData& eq = k.eq;
  const auto& c = eq.c;
  Report rep;
  rep.subject = "constants " + eq.group.name();
  const FieldElement lambda = lambda_of(k);

  // eliminated identity f3^3 e3 - f2^2 e2 = 1728 u^-w a1^e
  Poly lhs = poly_sub(poly_mul(poly_pow(eq.f3(), 3), eq.e3()), poly_mul(poly_pow(eq.f2(), 2), eq.e2()));
  Poly diff = poly_sub(lhs, poly_scale(poly_pow(eq.a1(), eq.exponent), FieldElement(1728) * lambda));
  long bad = first_nonzero(diff);
  rep.checks.push_back({"eliminated identity f3^3 e3 - f2^2 e2 = 1728 u^-w a1^e", bad < 0,
                        bad < 0 ? "" : "coefficient of z^" + std::to_string(bad) + " is " +
                                           to_string(diff[static_cast<std::size_t>(bad)])});

  const std::array<std::size_t, 3> linear{0, 3, 7};
  rep.checks.push_back(nonzero_check("(c1 - c4)(c1 - c8)(c4 - c8) != 0",
                                     (c[0] - c[3]) * (c[0] - c[7]) * (c[3] - c[7])));
  for (std::size_t j : linear) {
    const std::string idx = std::to_string(j + 1);
    rep.checks.push_back(nonzero_check("f3(-c" + idx + ") != 0", poly_eval(eq.f3(), -c[j])));
    rep.checks.push_back(nonzero_check("f2(-c" + idx + ") != 0", poly_eval(eq.f2(), -c[j])));
    rep.checks.push_back(nonzero_check("c" + idx + "^2 + c2 c" + idx + " + c3 != 0", poly_eval(eq.f3(), c[j])));
    rep.checks.push_back(
        nonzero_check("c" + idx + "^3 + c5 c" + idx + "^2 + c6 c" + idx + " + c7 != 0", poly_eval(eq.f2(), c[j])));
  }
  rep.checks.push_back(nonzero_check("disc(f3) = c2^2 - 4 c3 != 0", c[1] * c[1] - FieldElement(4) * c[2]));
  const FieldElement &c5 = c[4], &c6 = c[5], &c7 = c[6];
  FieldElement disc2 = c5 * c5 * c6 * c6 - FieldElement(4) * c6 * c6 * c6 - FieldElement(4) * c5 * c5 * c5 * c7 -
                       FieldElement(27) * c7 * c7 + FieldElement(18) * c5 * c6 * c7;
  rep.checks.push_back(nonzero_check("disc(f2) != 0", disc2));

  if (eq.group == GroupId{'G', 1}) {
    FieldElement linear_rel = FieldElement(3) * c[0] - FieldElement(3) * c[1] - c[3];
    rep.checks.push_back({"3 c1 - 3 c2 - c4 = 0", linear_rel.is_zero(), "value " + to_string(linear_rel)});
    const FieldElement &c1 = c[0], &c2 = c[1], &c3 = c[2], &c4 = c[3], &c8 = c[7];
    const FieldElement k1728 = FieldElement(1728) * lambda;
    const FieldElement k5184 = FieldElement(5184) * lambda;
    const FieldElement three(3), two(2), six(6);
    std::array<FieldElement, 7> system{
        -(c3 * c3 * c3 * c4) + k1728 * c1 * c1 * c1 + c7 * c7 * c8,
        -three * c2 * c3 * c3 * c4 - c3 * c3 * c3 + two * c6 * c7 * c8 + k5184 * c1 * c1 + c7 * c7,
        -three * c2 * c2 * c3 * c4 - three * c2 * c3 * c3 - three * c3 * c3 * c4 + c6 * c6 * c8 +
            two * c5 * c7 * c8 + two * c6 * c7 + k5184 * c1,
        -(c2 * c2 * c2 * c4) - three * c2 * c2 * c3 - six * c2 * c3 * c4 + two * c5 * c6 * c8 -
            three * c3 * c3 + c6 * c6 + two * c5 * c7 + two * c7 * c8 + k1728,
        -(c2 * c2 * c2) - three * c2 * c2 * c4 + c5 * c5 * c8 - six * c2 * c3 - three * c3 * c4 +
            two * c5 * c6 + two * c6 * c8 + two * c7,
        -three * c2 * c2 - three * c2 * c4 + c5 * c5 + two * c5 * c8 - three * c3 + two * c6,
        -three * c2 - c4 + two * c5 + c8,
    };
    for (std::size_t i = 0; i < system.size(); ++i) {
      rep.checks.push_back({"eliminated system equation " + std::to_string(i + 1), system[i].is_zero(),
                            "value " + to_string(system[i])});
    }
  }
  return rep;
}

Series jhat_series(const GroupConstants& k, long N) {
  const long w = k.u.width;
  const long M = std::max<long>(1, (N + w - 1) / w);
  const FieldElement lambda = lambda_of(k);
  Series j = level_one_series(LevelOneForm::J, M);
  return lambda * substitute_scaled_power(j, lambda, w, N);
}

HauptmodulSeries solve_hauptmodul(const GroupConstants& k, long N) {
  if (N < 1) throw SeriesError("hauptmodul order must be at least 1");
  const JEquationData& eq = k.eq;
  Series jhat = jhat_series(k, N + 1);
  Series z = initial_zhat(k.field());
  long p = 1;
  while (p < N) {
    const long T = std::min(2 * p + 1, N);
    Series zp = padded(z, T);
    Evaluation ev = evaluate_polys(eq, zp);
    Series F = newton_function(eq, jhat, ev);
    require_consistent(F, p - 6, eq.group);
    long v = F.valuation();
    if (v < F.trunc_order()) {
      Series dF = newton_derivative(eq, jhat, ev, zp);
      if (dF.valuation() != -6) {
        throw SeriesError("hauptmodul solve for " + eq.group.name() + ": derivative is not invertible");
      }
      Series corr = F.normalized() / dF;
      if (corr.trunc_order() < T) {
        throw SeriesError("hauptmodul solve for " + eq.group.name() + ": Newton step lost precision");
      }
      zp = zp - corr.truncated(T);
      zp = zp.truncated(T);
    }
    z = zp;
    p = T;
  }
  if (z.trunc_order() > N) z = z.truncated(N);
  return {eq.group, z};
}

HauptmodulSeries solve_hauptmodul_recursive(const GroupConstants& k, long N) {
  const JEquationData& eq = k.eq;
  Series jhat = jhat_series(k, N + 1);
  Series z = initial_zhat(k.field());
  {
    Series F = newton_function(eq, jhat, evaluate_polys(eq, padded(z, 1)));
    require_consistent(F, -5, eq.group);
  }
  const FieldElement w(static_cast<long>(k.u.width));
  for (long n = 1; n < N; ++n) {
    Series zp = padded(z, n + 1);
    Series F = newton_function(eq, jhat, evaluate_polys(eq, zp));
    // the qhat^(n-6) coefficient of F is w a_n plus terms in lower coefficients
    zp.set_coeff(n, -(F.coeff(n - 6) / w));
    z = zp;
  }
  if (z.trunc_order() > N) z = z.truncated(N);
  return {eq.group, z};
}

Report verify_j_equations_series(const GroupConstants& k, const HauptmodulSeries& h) {
  const JEquationData& eq = k.eq;
  const long N = h.z.trunc_order();
  Report rep;
  rep.subject = "j-equations " + eq.group.name() + " to qhat^" + std::to_string(N);
  Series jhat = jhat_series(k, N + 1);
  Evaluation ev = evaluate_polys(eq, h.z);
  Series a1e = a1_power(ev.a1, eq.exponent);
  Series f3e3 = ev.f3 * ev.f3 * ev.f3 * ev.e3;
  Series f2 = Series::polynomial_at(eq.f2(), h.z);
  Series f2e2 = f2 * f2 * Series::polynomial_at(eq.e2(), h.z);
  const FieldElement shift = FieldElement(1728) * lambda_of(k);

  auto residual_check = [&](const std::string& name, const Series& r) {
    long v = r.valuation();
    bool ok = v >= r.trunc_order();
    std::string detail = "checked below qhat^" + std::to_string(r.trunc_order());
    if (!ok) detail = "first nonzero residual at qhat^" + std::to_string(v) + ": " + to_string(r.coeff(v));
    rep.checks.push_back({name, ok, detail});
  };
  residual_check("jhat a1^e = f3^3 e3", jhat * a1e - f3e3);
  residual_check("(jhat - 1728 u^-w) a1^e = f2^2 e2", (jhat - Series::monomial(shift, 0, N + 1)) * a1e - f2e2);
  residual_check("f3^3 e3 - f2^2 e2 = 1728 u^-w a1^e", f3e3 - f2e2 - shift * a1e);
  return rep;
}

namespace {

PolyF7 reduce_poly(const Poly& p, const PrimeReduction& pr) {
  PolyF7 r;
  for (const auto& c : p) r.push_back(reduce_mod_prime7(c, pr));
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

std::string prime_name(const PrimeReduction& pr) {
  return pr.tag() == FieldTag::Q ? "7" : "zeta3->" + std::to_string(pr.residue());
}

PrimeAttempt attempt_prime(const GroupConstants& k, const HauptmodulSeries& h, const Series& jhat,
                           const PrimeReduction& pr) {
  const JEquationData& eq = k.eq;
  const long N = h.z.trunc_order();
  PrimeAttempt a;
  a.prime = prime_name(pr);
  a.u_valuation = valuation_at(k.u.u_power, pr);

  a.integral = true;
  for (long n = h.z.start(); n < N; ++n) {
    long v = valuation_at(h.z.coeff(n), pr);
    if (v < 0) {
      a.integral = false;
      a.integrality_detail = "ahat_" + std::to_string(n) + " has valuation " + std::to_string(v);
      break;
    }
  }
  if (!a.integral) return a;
  a.integrality_detail = "all ahat_n with n < " + std::to_string(N) + " are integral";

  SeriesF7 zr, jr;
  std::array<F7, 8> cr;
  try {
    zr = reduce_series(h.z, pr);
    jr = reduce_series(jhat, pr);
    for (std::size_t i = 0; i < 8; ++i) cr[i] = F7(reduce_mod_prime7(eq.c[i], pr));
  } catch (const NotIntegralError& e) {
    a.integral = false;
    a.integrality_detail = e.what();
    return a;
  }

  a.reduced_f3e3 = reduce_poly(poly_mul(poly_pow(eq.f3(), 3), eq.e3()), pr);
  a.reduced_a1e = reduce_poly(poly_pow(eq.a1(), eq.exponent), pr);

  SeriesF7 a1 = SeriesF7::polynomial_at({cr[0], F7(1)}, zr);
  SeriesF7 f3 = SeriesF7::polynomial_at({cr[2], cr[1], F7(1)}, zr);
  SeriesF7 e3 = SeriesF7::polynomial_at({cr[3], F7(1)}, zr);
  SeriesF7 residual = f3 * f3 * f3 * e3 - jr * a1.pow(static_cast<unsigned>(eq.exponent));
  a.equation_holds = residual.valuation() >= residual.trunc_order();

  const long w = k.u.width;
  a.jhat_reduces_to_leading_term = true;
  for (long e = jr.start(); e < jr.trunc_order(); ++e) {
    F7 expect = e == -w ? F7(1) : F7(0);
    if (!(jr.coeff(e) == expect)) {
      a.jhat_reduces_to_leading_term = false;
      break;
    }
  }

  for (long n = 1; n < N; ++n) {
    if (!zr.coeff(n).is_zero()) a.nonzero_indices.push_back(n);
  }
  a.tail_nonzero = !a.nonzero_indices.empty() && a.nonzero_indices.back() >= N - 50;

  // With jhat = qhat^-w mod the prime, a finite reduced series would have no positive
  // powers (degree 7 on the left against e < 7 on the right), hence would equal qhat^-1.
  PolyF7 lhs = a.reduced_f3e3;
  PolyF7 rhs(static_cast<std::size_t>(w), 0);
  rhs.insert(rhs.end(), a.reduced_a1e.begin(), a.reduced_a1e.end());
  lhs.resize(std::max(lhs.size(), rhs.size()), 0);
  rhs.resize(lhs.size(), 0);
  bool monic7 = a.reduced_f3e3.size() == 8 && a.reduced_f3e3[7] == 1;
  a.infinitely_many_nonzero = a.jhat_reduces_to_leading_term && monic7 && lhs != rhs;

  a.certified = a.integral && a.equation_holds && a.infinitely_many_nonzero && a.u_valuation < 0;
  return a;
}

}  // namespace

UbdCertificate ubd_certificate(const GroupConstants& k, const HauptmodulSeries& h, int residue) {
  UbdCertificate cert;
  cert.group = k.eq.group;
  cert.order = h.z.trunc_order();
  Series jhat = jhat_series(k, cert.order);

  std::vector<PrimeReduction> primes;
  if (k.field() == FieldTag::Q) {
    primes.push_back(PrimeReduction::rational());
  } else if (residue == 0) {
    primes = {PrimeReduction::zeta3(2), PrimeReduction::zeta3(4)};
  } else {
    primes.push_back(PrimeReduction::zeta3(residue));
  }
  for (const auto& pr : primes) {
    cert.attempts.push_back(attempt_prime(k, h, jhat, pr));
    if (cert.attempts.back().certified && !cert.certified_attempt) {
      cert.certified_attempt = cert.attempts.size() - 1;
    }
  }
  if (cert.certified_attempt) {
    const PrimeAttempt& a = cert.attempts[*cert.certified_attempt];
    // reduced equation x^7 + k - jhat x^3, i.e. x^7 + s jhat x^3 + k with s = -1
    PolyF7 x3{0, 0, 0, 1};
    bool shape = a.reduced_a1e == x3 && a.reduced_f3e3.size() == 8 && a.reduced_f3e3[7] == 1;
    for (std::size_t i = 1; shape && i < 7; ++i) shape = a.reduced_f3e3[i] == 0;
    if (shape) {
      cert.shape_sign = -1;
      cert.shape_constant = a.reduced_f3e3[0];
    }
  }
  return cert;
}

std::vector<TableRow> export_normalized_table(const HauptmodulSeries& h) {
  std::vector<TableRow> rows;
  for (long n = h.z.start(); n < h.z.trunc_order(); ++n) rows.push_back({n, to_string(h.z.coeff(n))});
  return rows;
}

std::string poly_f7_to_string(const PolyF7& p) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    if (p[i] != 1 || i == 0) out += std::to_string(p[i]);
    out += mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace ncmf
