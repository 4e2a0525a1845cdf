#include "ncmf/eisenstein.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace ncmf {

namespace {

constexpr long kResync = 64;
constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

long mulmod(long a, long b, long m) {
  return static_cast<long>(static_cast<__int128>(a) * b % m);
}

void check_nc(long n, long c) {
  if (n < 1) throw EisensteinError("X(n, c) needs n >= 1");
  if (c < 1) throw EisensteinError("X(n, c) needs c >= 1");
}

// A(mask) = sum_k bit_k zeta_w^(n k)
std::vector<std::complex<long double>> mask_weights(long n, int w) {
  std::vector<std::complex<long double>> A(1u << w);
  for (unsigned m = 0; m < A.size(); ++m) {
    std::complex<long double> s = 0;
    for (int k = 0; k < w; ++k) {
      if (m & (1u << k)) {
        long double ang = kTwoPi * static_cast<long double>((n % w) * k % w) / w;
        s += std::complex<long double>(cosl(ang), sinl(ang));
      }
    }
    A[m] = s;
  }
  return A;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Runs body(i) for i in [0, count) on a pool; rethrows the first failure.
template <class Body>
void parallel_for(long count, unsigned workers, Body body) {
  workers = static_cast<unsigned>(std::min<long>(std::max<long>(count, 1), workers));
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

Real parse_real(const std::string& s, mpfr_prec_t bits) {
  Real r(bits);
  if (mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN) != 0) throw EisensteinError("bad decimal " + s);
  return r;
}

double last_digit_unit(const std::string& s) {
  auto dot = s.find('.');
  long decimals = dot == std::string::npos ? 0 : static_cast<long>(s.size() - dot - 1);
  return std::pow(10.0, -static_cast<double>(decimals));
}

Real abs_real(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

// E(lambda qhat^w) for a level-one form, known through qhat^N.
Series pulled_back(LevelOneForm f, const GroupConstants& k, long N) {
  const long w = k.u.width;
  Series e = level_one_series(f, N / w + 2);
  return substitute_scaled_power(e, k.u.u_power.inverse(), w, N + 1);
}

Series through(const Series& s, long N, const char* what) {
  if (s.trunc_order() < N + 1) throw EisensteinError(std::string(what) + ": series lost precision");
  return s.truncated(N + 1);
}

}  // namespace

ComplexHP X_sum(long n, long c, const ChiEvaluator& chi, int digits) {
  check_nc(n, c);
  const int w = chi.width();
  const long wc = w * c;
  const long nn = n % wc;
  std::vector<std::uint8_t> masks(static_cast<std::size_t>(c));
  chi.row_masks(c, masks.data());

  std::vector<ComplexHP> B(1u << w, ComplexHP(digits));
  std::vector<bool> used(B.size(), false);
  const ComplexHP step = ComplexHP::root_of_unity(nn, wc, digits);
  ComplexHP z(digits);
  for (long d0 = 0; d0 < c; ++d0) {
    if (d0 % kResync == 0) {
      z = ComplexHP::root_of_unity(mulmod(nn, d0, wc), wc, digits);
    } else {
      z = z * step;
    }
    std::uint8_t m = masks[static_cast<std::size_t>(d0)];
    if (m != 0) {
      B[m] += z;
      used[m] = true;
    }
  }
  ComplexHP X(digits);
  for (unsigned m = 1; m < B.size(); ++m) {
    if (!used[m]) continue;
    ComplexHP A(digits);
    for (int k = 0; k < w; ++k) {
      if (m & (1u << k)) A += ComplexHP::root_of_unity(nn * k, w, digits);
    }
    X += A * B[m];
  }
  return X;
}

std::complex<long double> X_sum_fast(long n, long c, const ChiEvaluator& chi, std::vector<std::uint8_t>& masks,
                                     long double* rounding) {
  check_nc(n, c);
  const int w = chi.width();
  const long wc = w * c;
  const long nn = n % wc;
  if (masks.size() < static_cast<std::size_t>(c)) masks.resize(static_cast<std::size_t>(c));
  chi.row_masks(c, masks.data());

  long double br[64] = {}, bi[64] = {};
  const long double a = kTwoPi * static_cast<long double>(nn) / static_cast<long double>(wc);
  const long double sr = cosl(a), si = sinl(a);
  long double zr = 1, zi = 0;
  for (long d0 = 0; d0 < c; ++d0) {
    if (d0 % kResync == 0) {
      long double t = kTwoPi * static_cast<long double>(mulmod(nn, d0, wc)) / static_cast<long double>(wc);
      zr = cosl(t);
      zi = sinl(t);
    }
    std::uint8_t m = masks[static_cast<std::size_t>(d0)];
    br[m] += zr;
    bi[m] += zi;
    long double tr = zr * sr - zi * si;
    zi = zr * si + zi * sr;
    zr = tr;
  }
  auto A = mask_weights(n, w);
  std::complex<long double> X = 0;
  for (unsigned m = 1; m < A.size(); ++m) X += A[m] * std::complex<long double>(br[m], bi[m]);
  if (rounding) {
    const long double cc = static_cast<long double>(c);
    *rounding = 2 * LDBL_EPSILON * w * (cc * cc + 512 * cc);
  }
  return X;
}

double tail_bound(int width, int k, long N) {
  if (N <= 0 || k <= 2) return kInfiniteBound;
  return static_cast<double>(width) / ((k - 2) * std::pow(static_cast<double>(N), k - 2));
}

PartialSum D_partial(const GroupDescriptor& g, long n, int k, long N, int digits, const SumOptions& opt) {
  if (n < 1) throw EisensteinError("D(n, k) needs n >= 1");
  if (k < 2) throw EisensteinError("D(n, k) needs k >= 2");
  if (N < 0) throw EisensteinError("cutoff N must be nonnegative");
  if (opt.chunk_size < 1) throw EisensteinError("chunk size must be positive");
  const mpfr_prec_t bits = bits_for_digits(digits);

  PartialSum out;
  out.group = g.id;
  out.n = n;
  out.k = k;
  out.N = N;
  out.digits = digits;
  out.value = ComplexHP(digits);
  out.chunk_size = opt.chunk_size;
  out.hp_cutoff = opt.hp_cutoff;
  out.heuristic = k == 2;
  out.error_bound = tail_bound(g.cusp_width, k, N);
  if (N == 0) return out;

  ChiEvaluator chi(g);
  const long chunks = (N + opt.chunk_size - 1) / opt.chunk_size;
  struct ChunkResult {
    ComplexHP value;
    long double rounding = 0;
  };
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));

  parallel_for(chunks, resolve_workers(opt.workers), [&](long i) {
    const long lo = 1 + i * opt.chunk_size;
    const long hi = std::min(N, (i + 1) * opt.chunk_size);
    ComplexHP hp(digits);
    std::vector<std::uint8_t> masks;
    // Neumaier compensated sums for the long double terms
    long double sr = 0, cr = 0, si = 0, ci = 0, total_abs = 0, rounding = 0;
    auto add = [](long double& s, long double& comp, long double t) {
      long double u = s + t;
      if (fabsl(s) >= fabsl(t)) {
        comp += (s - u) + t;
      } else {
        comp += (t - u) + s;
      }
      s = u;
    };
    for (long c = lo; c <= hi; ++c) {
      if (c <= opt.hp_cutoff) {
        ComplexHP x = X_sum(n, c, chi, digits);
        Real ck(bits);
        mpfr_ui_pow_ui(ck.get(), static_cast<unsigned long>(c), static_cast<unsigned long>(k), MPFR_RNDN);
        hp += ComplexHP(x.re() / ck, x.im() / ck, digits);
        continue;
      }
      long double err = 0;
      std::complex<long double> x = X_sum_fast(n, c, chi, masks, &err);
      long double ck = powl(static_cast<long double>(c), k);
      long double tr = x.real() / ck, ti = x.imag() / ck;
      add(sr, cr, tr);
      add(si, ci, ti);
      total_abs += fabsl(tr) + fabsl(ti);
      rounding += err / ck + 4 * LDBL_EPSILON * (fabsl(tr) + fabsl(ti));
    }
    rounding += 4 * LDBL_EPSILON * total_abs;
    ComplexHP fast(std::complex<long double>(sr, si), digits);
    ComplexHP comp(std::complex<long double>(cr, ci), digits);
    results[static_cast<std::size_t>(i)] = {hp + fast + comp, rounding};
  });

  long double rounding = 0;
  for (auto& r : results) {
    out.value += r.value;
    rounding += r.rounding;
  }
  // MPFR additions: one half-ulp per operation, generously counted
  const double mp_unit = std::ldexp(1.0, -static_cast<int>(bits) + 8);
  out.rounding_bound = static_cast<double>(rounding) + mp_unit * static_cast<double>(N + chunks);
  return out;
}

EisensteinCoefficient eisenstein_coefficient(const PartialSum& d) {
  if (d.k < 4 || d.k % 2 != 0) throw EisensteinError("Fourier coefficients need even k >= 4");
  const mpfr_prec_t bits = bits_for_digits(d.digits);
  const int w = group(d.group).cusp_width;
  // (2 pi i n / w)^k / (n (k-1)!) is real for even k
  Real base = Real::pi(bits) * Real(Rational(2 * d.n, w), bits);
  Real f(1.0, bits);
  for (int i = 0; i < d.k; ++i) f = f * base;
  Integer fact = 1;
  for (int i = 2; i < d.k; ++i) fact *= i;
  f = f / Real(Rational(Integer(d.n) * fact), bits);
  if ((d.k / 2) % 2 == 1) f = -f;

  EisensteinCoefficient a;
  a.n = d.n;
  a.k = d.k;
  a.value = d.value.scaled(f);
  const double af = std::fabs(f.to_double());
  a.error_bound = d.N == 0 ? kInfiniteBound : af * d.error_bound;
  a.rounding_bound = af * d.rounding_bound;
  a.derived_from = d;
  return a;
}

ComplexHP u_numeric(const GroupConstants& k, int digits) {
  return ComplexHP(k.u.u_power, digits).root(k.u.width);
}

NormalizedCoefficient normalize(const EisensteinCoefficient& a, const ComplexHP& u) {
  ComplexHP un = u.pow(a.n);
  double scale = un.abs().to_double();
  return {a.value / un, (a.error_bound + a.rounding_bound) / scale};
}

Series g2_exact(const GroupConstants& k, long N) {
  if (N < 0) throw EisensteinError("g2 order must be nonnegative");
  HauptmodulSeries h = solve_hauptmodul(k, N + 5);
  const JEquationData& eq = k.eq;
  Series ratio = Series::polynomial_at(eq.e3(), h.z) * Series::polynomial_at(eq.f3(), h.z) /
                 Series::polynomial_at(eq.f2(), h.z);
  Series e6 = pulled_back(LevelOneForm::E6, k, N);
  Series e4 = pulled_back(LevelOneForm::E4, k, N);
  return through(e6 / e4 * ratio, N, "g2");
}

G4Ansatz g4_ansatz_series(const GroupConstants& k, long N) {
  if (N < 0) throw EisensteinError("g4 order must be nonnegative");
  HauptmodulSeries h = solve_hauptmodul(k, N + 5);
  const JEquationData& eq = k.eq;
  Series e4 = pulled_back(LevelOneForm::E4, k, N);
  Series q = e4 * Series::polynomial_at(eq.a1(), h.z) / Series::polynomial_at(eq.f3(), h.z);
  Series p = q * h.z;
  return {through(p, N, "g4 ansatz"), through(q, N, "g4 ansatz")};
}

const std::vector<G4TableEntry>& g4_published_table() {
  static const std::vector<G4TableEntry> t{
      {1, "40.7303189636318364926"},    {2, "303.7319312003984"},
      {3, "-1113445.924994532325"},     {4, "-101378021.6026120116"},
      {5, "-4677356098.49752275"},      {6, "110516113983.5601513", "10516113983.5601513"},
      {7, "10622672944963.34244"},      {8, "703827515349172.972"},
      {9, "20587451911329502.7"},       {10, "54985771355001805.6"},
  };
  return t;
}

G4FitReport g4_fit_from(const EisensteinCoefficient& a1, int digits) {
  if (a1.n != 1 || a1.k != 4) throw EisensteinError("the g4 fit needs the weight-4 coefficient a_1");
  const mpfr_prec_t bits = bits_for_digits(digits);
  GroupConstants k = load_constants(GroupId{'G', 1});
  NormalizedCoefficient a = normalize(a1, u_numeric(k, digits));
  G4Ansatz s = g4_ansatz_series(k, 10);
  auto R = [&](long n, const Series& x) { return Real(x.coeff(n).rational_part(), bits); };

  G4FitReport rep;
  rep.N_sum = a1.derived_from.N;
  rep.digits = digits;
  rep.a1_numeric = a.value.re().to_string(digits);
  rep.a1_imag = a.value.im().to_double();
  rep.a1_bound = a.error_bound;
  rep.sum = a1.derived_from;

  Real q1 = R(1, s.Q);
  if (mpfr_zero_p(q1.get())) throw EisensteinError("g4 fit is singular: Q_1 = 0");
  Real C = (R(1, s.P) - a.value.re()) / q1;
  const double q1abs = std::fabs(q1.to_double());
  rep.condition = 1.0 / q1abs;
  if (rep.condition > 1e12) throw EisensteinError("g4 fit is ill-conditioned: 1/|Q_1| = " + std::to_string(rep.condition));
  rep.C = C.to_string(digits);
  rep.C_bound = a.error_bound / q1abs;
  rep.a0_predicted = (R(0, s.P) - C * R(0, s.Q)).to_string(digits);
  rep.a1_residual = abs_real(R(1, s.P) - C * q1 - a.value.re()).to_double();

  for (const auto& e : g4_published_table()) {
    if (e.n < 2) continue;
    Real pred = R(e.n, s.P) - C * R(e.n, s.Q);
    const char* ref = e.corrected ? e.corrected : e.value;
    Real pub = parse_real(ref, bits);
    G4Prediction p;
    p.n = e.n;
    p.predicted = pred.to_string(digits);
    p.bound = std::fabs(R(e.n, s.Q).to_double()) * rep.C_bound;
    p.published = e.value;
    p.reference = ref;
    p.deviation = abs_real(pred - pub).to_double();
    p.published_unit = last_digit_unit(ref);
    p.within = p.deviation <= p.bound + p.published_unit;
    rep.predictions.push_back(p);
  }
  return rep;
}

G4FitReport g4_fit_and_predict(long N_sum, int digits, const SumOptions& opt) {
  PartialSum d = D_partial(group(GroupId{'G', 1}), 1, 4, N_sum, digits, opt);
  return g4_fit_from(eisenstein_coefficient(d), digits);
}

}  // namespace ncmf
