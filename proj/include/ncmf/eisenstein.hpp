#pragma once

// Eisenstein series at the cusp at infinity: the character sums X(n, c), the
// partial Dirichlet sums D(n, k), Fourier coefficients, the exact weight-2 form,
// the weight-4 ansatz and the X(1, c) statistics.

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ncmf/complex_hp.hpp"
#include "ncmf/hauptmodul.hpp"
#include "ncmf/permgroup.hpp"

namespace ncmf {

class EisensteinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// X(n, c) = sum_{d=1}^{wc} chi(c, d) exp(2 pi i n d / (w c)) at P digits.
ComplexHP X_sum(long n, long c, const ChiEvaluator& chi, int digits);

/// Long double evaluation of X(n, c). `masks` is scratch of length >= c.
/// `rounding` receives an upper bound on the absolute rounding error.
std::complex<long double> X_sum_fast(long n, long c, const ChiEvaluator& chi, std::vector<std::uint8_t>& masks,
                                     long double* rounding = nullptr);

inline constexpr double kInfiniteBound = std::numeric_limits<double>::infinity();

struct PartialSum {
  GroupId group;
  long n = 0;
  int k = 0;
  long N = 0;
  ComplexHP value;
  /// Tail bound w/((k-2) N^(k-2)); infinite for N = 0.
  double error_bound = kInfiniteBound;
  /// Bound on the accumulated floating-point error of the computed terms.
  double rounding_bound = 0;
  bool heuristic = false;  // k = 2: no proven tail bound
  long chunk_size = 0;
  long hp_cutoff = 0;  // c <= hp_cutoff summed in MPFR
  int digits = 30;
};

/// Tail bound for sum_{c > N} |X(n, c)| / c^k with |X| <= w c.
double tail_bound(int width, int k, long N);

struct SumOptions {
  long chunk_size = 4096;
  long hp_cutoff = 1024;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// sum_{c=1}^{N} X(n, c) / c^k in ascending chunks, bit-identical for any worker count.
PartialSum D_partial(const GroupDescriptor& g, long n, int k, long N, int digits, const SumOptions& opt = {});

struct EisensteinCoefficient {
  long n = 0;
  int k = 0;
  /// Constant term of the expansion at infinity.
  int constant_term = 1;
  ComplexHP value;
  double error_bound = kInfiniteBound;
  double rounding_bound = 0;
  PartialSum derived_from;
};

/// a_n = (2 pi i n / w)^k D(n, k) / (n (k-1)!) for even k >= 4.
EisensteinCoefficient eisenstein_coefficient(const PartialSum& d);

/// The principal w-th root of u^w.
ComplexHP u_numeric(const GroupConstants& k, int digits);

struct NormalizedCoefficient {
  ComplexHP value;  // a_n / u^n
  double error_bound;
};
NormalizedCoefficient normalize(const EisensteinCoefficient& a, const ComplexHP& u);

/// g2 = E6 e3 f3 / (E4 f2) in qhat: coefficients a_n / u^n for 0 <= n <= N.
Series g2_exact(const GroupConstants& k, long N);

/// Series P and Q with g4 = P - C Q under the ansatz g4 = E4 a1(z) (z - C u) / f3(z), normalized.
struct G4Ansatz {
  Series P;
  Series Q;
};
G4Ansatz g4_ansatz_series(const GroupConstants& k, long N);

struct G4TableEntry {
  long n;
  const char* value;
  const char* corrected = nullptr;  // set where the printed value has a typo
};
/// The normalized weight-4 coefficients a_n / u^n of G1 as published.
const std::vector<G4TableEntry>& g4_published_table();

struct G4Prediction {
  long n;
  std::string predicted;
  double bound;  // |Q_n| dC
  std::string published;
  std::string reference;  // corrected value if the printed one is a typo, else published
  double deviation;       // |predicted - reference|
  double published_unit;  // one unit in the last published digit
  bool within;            // deviation <= bound + published_unit
};

struct G4FitReport {
  long N_sum = 0;
  int digits = 30;
  std::string a1_numeric;  // normalized, real part
  double a1_imag = 0;      // imaginary part after normalization
  double a1_bound = 0;
  std::string C;
  double C_bound = 0;
  double condition = 0;  // 1 / |Q_1|
  std::string a0_predicted;
  double a1_residual = 0;
  std::vector<G4Prediction> predictions;  // n = 2..10
  PartialSum sum;
};

/// Fits C from a numeric a_1 (from D(1, 4) with cutoff N_sum) and predicts a_2..a_10.
G4FitReport g4_fit_and_predict(long N_sum, int digits, const SumOptions& opt = {});
/// Same fit from an already computed coefficient.
G4FitReport g4_fit_from(const EisensteinCoefficient& a1, int digits);

struct StatsRecord {
  long c;
  std::complex<double> X;
  double norm27;  // X c^{2/7} / (phi(c) zeta8^n), real part
  double norm12;  // X c^{1/2} / (phi(c) zeta8^n), real part
  bool exception;  // |X| >= c^{5/7}
};

struct BandSummary {
  std::string name;
  std::vector<int> residues;
  long count = 0;
  double mean27 = 0, sd27 = 0, mean12 = 0, sd12 = 0;
};

struct StatsDataset {
  long n = 1;
  long c_max = 0;
  std::vector<StatsRecord> records;
  std::vector<long> exceptions;
  std::vector<BandSummary> bands;
};

/// Euler's totient.
long euler_phi(long c);
/// The seven residue bands mod 12 of the histogram captions.
const std::vector<std::vector<int>>& residue_bands();

StatsDataset stats_scan(const GroupDescriptor& g, long n, long c_max, unsigned workers = 0,
                        bool keep_records = true);
void write_stats_csv(const StatsDataset& s, std::ostream& out);

}  // namespace ncmf
