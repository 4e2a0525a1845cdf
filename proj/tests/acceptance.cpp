// Acceptance gate: one PASS/FAIL line per criterion on stdout, details on stderr.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "ncmf/eisenstein.hpp"
#include "published_tables.hpp"

using namespace ncmf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

// Agreement to `sig` significant digits: |x - ref| <= 0.5 * 10^(e - sig + 1), e = floor(log10 |ref|).
bool agrees(double x, double ref, int sig) {
  const double e = std::floor(std::log10(std::fabs(ref)));
  return std::fabs(x - ref) <= 0.5 * std::pow(10.0, e - sig + 1);
}

std::string fmt(double x, int p = 12) {
  std::ostringstream s;
  s.precision(p);
  s << x;
  return s.str();
}

void criterion1() {
  auto t0 = Clock::now();
  bool ok = true;
  for (const auto& id : canonical_groups()) {
    Report r = verify_constants(load_constants(id));
    if (!r.ok()) {
      ok = false;
      std::cerr << r.to_text();
    }
  }
  const double t = seconds_since(t0);
  report(1, ok && t < 1.0, "verify_constants on all eight groups, " + fmt(t, 3) + " s (limit 1 s)");
}

void criterion2() {
  auto t0 = Clock::now();
  long checked = 0, bad = 0;
  for (const auto& table : published::hauptmodul_tables()) {
    HauptmodulSeries h = solve_hauptmodul(load_constants(GroupId::parse(table.group)), 12);
    for (const auto& row : table.rows) {
      ++checked;
      if (!(h.z.coeff(row.n) == parse_field_element(row.value))) {
        ++bad;
        std::cerr << "  " << table.group << " n=" << row.n << ": computed " << to_string(h.z.coeff(row.n))
                  << ", table " << row.value << "\n";
      }
    }
  }
  // the printed G1 row 6 factorization has an empty slot; its product with the slot dropped
  const bool row6 = Integer(-1) * 8192 * 3 * 5273 * 47339 == Integer("-6134625411072");
  std::cerr << "  G1 row 6 printed as -1*2^13*3* *5273*47339 (empty factor slot); computed -6134625411072 = "
               "-2^13*3*5273*47339, no missing factor\n";
  report(2, bad == 0 && row6,
         std::to_string(checked - bad) + "/" + std::to_string(checked) +
             " rows of the six hauptmodul tables exact; G1 row 6 typo logged; " + fmt(seconds_since(t0), 3) + " s");
}

void criterion3() {
  bool ok = true;
  std::ostringstream detail;
  double worst = 0;

  {
    auto t0 = Clock::now();
    GroupConstants g1 = load_constants(GroupId::parse("G1"));
    HauptmodulSeries h = solve_hauptmodul(g1, 501);
    UbdCertificate c = ubd_certificate(g1, h, 0);
    bool late = false;
    if (c.ok()) {
      for (long n : c.attempts[*c.certified_attempt].nonzero_indices) late |= n >= 450 && n <= 500;
    }
    const bool shape = c.shape_sign.has_value() && c.shape_constant == 2;
    ok &= c.ok() && late && shape;
    worst = std::max(worst, seconds_since(t0));
    detail << "G1 integral at 7, reduced x^7 " << (c.shape_sign.value_or(0) < 0 ? "- " : "+ ") << "jhat x^3 + "
           << c.shape_constant.value_or(-1) << " (published +jhat; sign conflict logged), nonzero in 450..500: "
           << (late ? "yes" : "no");
  }
  for (const char* name : {"G3", "H1", "H3"}) {
    auto t0 = Clock::now();
    GroupConstants k = load_constants(GroupId::parse(name));
    UbdCertificate c = ubd_certificate(k, solve_hauptmodul(k, 500), 0);
    const bool good = c.ok() && c.attempts[*c.certified_attempt].prime == "7";
    ok &= good;
    worst = std::max(worst, seconds_since(t0));
    detail << "; " << name << (good ? " ok" : " FAILED");
  }
  for (const char* name : {"U1", "U6"}) {
    auto t0 = Clock::now();
    GroupConstants k = load_constants(GroupId::parse(name));
    HauptmodulSeries h = solve_hauptmodul(k, 500);
    const bool at2 = ubd_certificate(k, h, 2).ok(), at4 = ubd_certificate(k, h, 4).ok();
    ok &= at2 != at4;
    worst = std::max(worst, seconds_since(t0));
    detail << "; " << name << " certifies at " << (at2 && !at4 ? "zeta3->2 only" : !at2 && at4 ? "zeta3->4 only" : "both/neither");
  }
  ok &= worst < 60;
  detail << "; slowest " << fmt(worst, 3) << " s (limit 60 s)";
  report(3, ok, detail.str());
}

void criterion4() {
  long checked = 0, bad = 0;
  for (const auto& table : published::g2_tables()) {
    Series s = g2_exact(load_constants(GroupId::parse(table.group)), 10);
    for (const auto& row : table.rows) {
      ++checked;
      if (!(s.coeff(row.n) == parse_field_element(row.value))) {
        ++bad;
        std::cerr << "  g2 " << table.group << " n=" << row.n << ": computed " << to_string(s.coeff(row.n)) << "\n";
      }
    }
  }
  report(4, bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " weight-2 rows exact");
}

// criteria 5 and 6 share the N = 10^5 sum
std::optional<EisensteinCoefficient> a1_at_1e5;

void criterion5() {
  auto t0 = Clock::now();
  const GroupConstants g1 = load_constants(GroupId::parse("G1"));
  const ComplexHP u = u_numeric(g1, 30);
  PartialSum d1 = D_partial(group("G1"), 1, 4, 100000, 30);
  a1_at_1e5 = eisenstein_coefficient(d1);
  NormalizedCoefficient z1 = normalize(*a1_at_1e5, u);
  const double v1 = z1.value.re().to_double();
  const bool ok1 = agrees(v1, 40.7303189636318364926, 8) && d1.error_bound <= 2e-10 * (1 + 1e-12);

  PartialSum d2 = D_partial(group("G1"), 2, 4, 50000, 30);
  NormalizedCoefficient z2 = normalize(eisenstein_coefficient(d2), u);
  const double v2 = z2.value.re().to_double();
  const bool ok2 = agrees(v2, 303.7319312003984, 5);
  const double t = seconds_since(t0);
  std::cerr << "  a1/u = " << z1.value.re().to_string(20) << " +- " << z1.error_bound << ", imag "
            << z1.value.im().to_double() << "\n  a2/u^2 = " << z2.value.re().to_string(20) << " +- "
            << z2.error_bound << "\n";
  report(5, ok1 && ok2 && t <= 1800,
         "a1/u = " + fmt(v1, 13) + " (8 digits of 40.7303189636), D(1,4) bound " + fmt(d1.error_bound, 3) +
             "; a2/u^2 = " + fmt(v2, 10) + " (5 digits of 303.73193); " + fmt(t, 4) + " s");
}

void criterion6() {
  if (!a1_at_1e5) {
    report(6, false, "no a1 available");
    return;
  }
  G4FitReport fit = g4_fit_from(*a1_at_1e5, 30);
  bool ok = true;
  std::ostringstream detail;
  detail << "C = " << fmt(std::stod(fit.C), 14) << " +- " << fmt(fit.C_bound, 2) << ";";
  for (const auto& p : fit.predictions) {
    if (p.n < 3 || p.n > 6) continue;
    ok &= p.within;
    detail << " a" << p.n << (p.within ? " ok" : " OUT") << " (dev " << fmt(p.deviation, 3) << " <= " << fmt(p.bound + p.published_unit, 3) << ")";
  }

  // re-derive the corrected row 6 directly from D(6, 4)
  const GroupConstants g1 = load_constants(GroupId::parse("G1"));
  PartialSum d6 = D_partial(group("G1"), 6, 4, 5000, 30);
  NormalizedCoefficient z6 = normalize(eisenstein_coefficient(d6), u_numeric(g1, 30));
  const double direct = z6.value.re().to_double();
  const bool corrected_fits = std::fabs(direct - 10516113983.5601513) <= z6.error_bound;
  const bool printed_excluded = std::fabs(direct - 110516113983.5601513) > z6.error_bound;
  ok &= corrected_fits && printed_excluded;
  detail << "; row 6 printed 110516113983.56 excluded by direct D(6,4), N=5000: " << fmt(direct, 14) << " +- "
         << fmt(z6.error_bound, 3) << ", compared against 10516113983.56";
  report(6, ok, detail.str());
}

void criterion7() {
  auto t0 = Clock::now();
  const GroupDescriptor& g1 = group("G1");
  ChiEvaluator x(g1);
  std::ostringstream detail;

  // indicator identities
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<long> r(-10000, 10000);
  long pairs = 0, broken = 0;
  while (pairs < 10000) {
    long c = r(rng), d = r(rng);
    if (std::gcd(c, d) != 1) continue;
    ++pairs;
    int v = x(c, d);
    bool same = v == chi(c, d, g1) && v == x(c, d + 4 * c) && v == x(c + 4 * d, d) && v == x(-c, -d) &&
                v == x(d, d - c) && v == x(3 * c + 2 * d, -5 * c - 3 * d) && v == x(-c, d - c) && v == x(d, c);
    broken += !same;
  }
  detail << "identities " << pairs - broken << "/" << pairs;

  // phase law
  std::vector<std::uint8_t> masks;
  double worst = 0;
  for (long n = 1; n <= 11; ++n) {
    const std::complex<long double> rot = std::polar(1.0L, -static_cast<long double>(M_PI) * (n % 8) / 4.0L);
    for (long c = 1; c <= 5000; ++c) worst = std::max(worst, static_cast<double>(std::fabs((X_sum_fast(n, c, x, masks) * rot).imag())));
  }
  const bool phase = worst < 1e-12;
  detail << "; phase max |Im| " << fmt(worst, 2) << " (tol 1e-12)";

  // conjugation
  std::uniform_int_distribution<long> rn(1, 40), rc(1, 20000);
  static const std::complex<long double> mi[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  double conj_worst = 0;
  for (int i = 0; i < 100; ++i) {
    long n = rn(rng), c = rc(rng);
    std::complex<long double> v = X_sum_fast(n, c, x, masks);
    conj_worst = std::max(conj_worst, static_cast<double>(std::abs(std::conj(v) - mi[n % 4] * v)));
  }
  const bool conj = conj_worst < 1e-11;
  detail << "; conjugation max " << fmt(conj_worst, 2);

  // outer automorphism
  long outer_bad = 0;
  for (const auto& [from, to] : published::outer_table()) outer_bad += outer_automorphism_image(group(from)).name() != to;
  detail << "; outer table " << published::outer_table().size() - static_cast<std::size_t>(outer_bad) << "/"
         << published::outer_table().size();

  // determinism
  PartialSum ref = D_partial(g1, 2, 4, 20000, 30, SumOptions{2048, 1024, 1});
  bool det = true;
  for (unsigned w : {2u, 4u, 7u}) {
    PartialSum o = D_partial(g1, 2, 4, 20000, 30, SumOptions{2048, 1024, w});
    det &= mpfr_equal_p(ref.value.re().get(), o.value.re().get()) && mpfr_equal_p(ref.value.im().get(), o.value.im().get());
  }
  detail << "; D_partial bit-identical for 1/2/4/7 workers: " << (det ? "yes" : "no") << "; " << fmt(seconds_since(t0), 3)
         << " s";
  report(7, broken == 0 && phase && conj && outer_bad == 0 && det, detail.str());
}

void criterion8() {
  auto t0 = Clock::now();
  StatsDataset s = stats_scan(group("G1"), 1, 200000, 0, false);
  long last = s.exceptions.empty() ? 0 : s.exceptions.back();
  const bool ok = last < 32769 && s.exceptions.size() <= 15;
  std::ostringstream list;
  for (long c : s.exceptions) list << ' ' << c;
  std::cerr << "  exceptions:" << list.str() << "\n";
  const double t = seconds_since(t0);
  report(8, ok && t <= 1200,
         std::to_string(s.exceptions.size()) + " exceptions with |X(1,c)| >= c^(5/7) for c <= 200000, largest " +
             std::to_string(last) + " (< 32769, count <= 15); " + fmt(t, 4) + " s");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
