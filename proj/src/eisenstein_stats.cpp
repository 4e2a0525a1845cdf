#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

#include "ncmf/eisenstein.hpp"

namespace ncmf {

namespace {

std::vector<long> totients(long n) {
  std::vector<long> phi(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) phi[static_cast<std::size_t>(i)] = i;
  for (long p = 2; p <= n; ++p) {
    if (phi[static_cast<std::size_t>(p)] != p) continue;
    for (long m = p; m <= n; m += p) phi[static_cast<std::size_t>(m)] -= phi[static_cast<std::size_t>(m)] / p;
  }
  return phi;
}

std::string band_name(const std::vector<int>& r) {
  if (r.size() == 1) return std::to_string(r[0]);
  return "+-" + std::to_string(r[0]);
}

}  // namespace

long euler_phi(long c) {
  if (c < 1) throw EisensteinError("totient needs c >= 1");
  long result = c;
  for (long p = 2; p * p <= c; ++p) {
    if (c % p != 0) continue;
    while (c % p == 0) c /= p;
    result -= result / p;
  }
  if (c > 1) result -= result / c;
  return result;
}

const std::vector<std::vector<int>>& residue_bands() {
  static const std::vector<std::vector<int>> bands{{2, 10}, {6}, {5, 7}, {3, 9}, {1, 11}, {0}, {4, 8}};
  return bands;
}

StatsDataset stats_scan(const GroupDescriptor& g, long n, long c_max, unsigned workers, bool keep_records) {
  if (c_max < 12) throw EisensteinError("stats scan needs cmax >= 12");
  if (n < 1) throw EisensteinError("stats scan needs n >= 1");
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  ChiEvaluator chi(g);
  const std::vector<long> phi = totients(c_max);
  std::vector<StatsRecord> records(static_cast<std::size_t>(c_max));
  const std::complex<double> ray = std::polar(1.0, M_PI * static_cast<double>(n % 8) / 4.0);

  const long block = 256;
  const long blocks = (c_max + block - 1) / block;
  std::atomic<long> next{0};
  auto run = [&] {
    std::vector<std::uint8_t> masks;
    for (;;) {
      long b = next.fetch_add(1);
      if (b >= blocks) return;
      for (long c = b * block + 1; c <= std::min(c_max, (b + 1) * block); ++c) {
        std::complex<long double> x = X_sum_fast(n, c, chi, masks);
        StatsRecord r;
        r.c = c;
        r.X = {static_cast<double>(x.real()), static_cast<double>(x.imag())};
        const double cd = static_cast<double>(c);
        std::complex<double> base = r.X / (static_cast<double>(phi[static_cast<std::size_t>(c)]) * ray);
        r.norm27 = base.real() * std::pow(cd, 2.0 / 7.0);
        r.norm12 = base.real() * std::sqrt(cd);
        r.exception = std::abs(r.X) >= std::pow(cd, 5.0 / 7.0);
        records[static_cast<std::size_t>(c - 1)] = r;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();

  StatsDataset out;
  out.n = n;
  out.c_max = c_max;
  for (const auto& r : records) {
    if (r.exception) out.exceptions.push_back(r.c);
  }
  for (const auto& residues : residue_bands()) {
    BandSummary b;
    b.name = band_name(residues);
    b.residues = residues;
    double s27 = 0, q27 = 0, s12 = 0, q12 = 0;
    for (const auto& r : records) {
      int m = static_cast<int>(r.c % 12);
      if (std::find(residues.begin(), residues.end(), m) == residues.end()) continue;
      ++b.count;
      s27 += r.norm27;
      q27 += r.norm27 * r.norm27;
      s12 += r.norm12;
      q12 += r.norm12 * r.norm12;
    }
    if (b.count > 0) {
      const double k = static_cast<double>(b.count);
      b.mean27 = s27 / k;
      b.mean12 = s12 / k;
      b.sd27 = std::sqrt(std::max(0.0, q27 / k - b.mean27 * b.mean27));
      b.sd12 = std::sqrt(std::max(0.0, q12 / k - b.mean12 * b.mean12));
    }
    out.bands.push_back(b);
  }
  if (keep_records) out.records = std::move(records);
  return out;
}

void write_stats_csv(const StatsDataset& s, std::ostream& out) {
  out << "c,c_mod_12,re,im,abs,norm27,norm12,is_exception\n";
  out << std::setprecision(17);
  for (const auto& r : s.records) {
    out << r.c << ',' << r.c % 12 << ',' << r.X.real() << ',' << r.X.imag() << ',' << std::abs(r.X) << ','
        << r.norm27 << ',' << r.norm12 << ',' << (r.exception ? 1 : 0) << '\n';
  }
}

}  // namespace ncmf
