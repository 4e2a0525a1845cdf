#pragma once

// Hauptmoduls of the canonical index-7 groups in the normalized frame
// z = u zhat, q_w = u^-1 qhat, jhat = u^-w j, where every coefficient lies in
// Q or Q(zeta3).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ncmf/exactfield.hpp"
#include "ncmf/permgroup.hpp"
#include "ncmf/qseries.hpp"

namespace ncmf {

struct UDescriptor {
  GroupId group;
  int width;                 // w, with q = u^-w qhat^w
  FieldElement u_power;      // u^w in the base field
  std::string description;   // text of u
};

/// Normalized j-equation data.  With a1 = z + c1, f3 = z^2 + c2 z + c3,
/// e3 = z + c4, f2 = z^3 + c5 z^2 + c6 z + c7, e2 = z + c8 the equations are
/// j a1^e = f3^3 e3 and (j - 1728) a1^e = f2^2 e2 with e = 7 - w.
struct JEquationData {
  GroupId group;
  int exponent;
  std::array<FieldElement, 8> c;  // chat_1 .. chat_8

  // coefficient lists, constant term first
  std::vector<FieldElement> a1() const { return {c[0], 1}; }
  std::vector<FieldElement> f3() const { return {c[2], c[1], 1}; }
  std::vector<FieldElement> e3() const { return {c[3], 1}; }
  std::vector<FieldElement> f2() const { return {c[6], c[5], c[4], 1}; }
  std::vector<FieldElement> e2() const { return {c[7], 1}; }
};

struct GroupConstants {
  UDescriptor u;
  JEquationData eq;
  FieldTag field() const;
};

/// Embedded constants for one of the eight canonical groups.
GroupConstants load_constants(const GroupId& id);

struct CheckResult {
  std::string name;
  bool ok;
  std::string detail;
};

struct Report {
  std::string subject;
  std::vector<CheckResult> checks;
  bool ok() const;
  std::string to_text() const;
};

Report verify_constants(const GroupConstants& k);

/// jhat = u^-w j(u^-w qhat^w), known below N.
Series jhat_series(const GroupConstants& k, long N);

struct HauptmodulSeries {
  GroupId group;
  Series z;  // qhat^-1 + 0 + sum_{n>=1} ahat_n qhat^n, known below the order
};

/// Newton iteration with precision doubling; coefficients for exponents < N.
HauptmodulSeries solve_hauptmodul(const GroupConstants& k, long N);
/// Coefficient-by-coefficient recursion; slow, used as an independent check.
HauptmodulSeries solve_hauptmodul_recursive(const GroupConstants& k, long N);

/// Residuals of both j-equations and of the eliminated identity at zhat.
Report verify_j_equations_series(const GroupConstants& k, const HauptmodulSeries& h);

/// Polynomial over F7 with coefficients listed constant term first.
using PolyF7 = std::vector<int>;

struct PrimeAttempt {
  std::string prime;  // "7", "zeta3->2", "zeta3->4"
  bool integral = false;
  std::string integrality_detail;
  long u_valuation = 0;  // valuation of u^w
  bool equation_holds = false;
  PolyF7 reduced_f3e3;   // f3^3 e3 mod the prime
  PolyF7 reduced_a1e;    // a1^e mod the prime
  bool jhat_reduces_to_leading_term = false;
  std::vector<long> nonzero_indices;
  // some nonzero reduction among the last 50 computed indices
  bool tail_nonzero = false;
  // qhat^-1 fails the reduced equation, so the reduced series is not a Laurent polynomial
  bool infinitely_many_nonzero = false;
  bool certified = false;
};

struct UbdCertificate {
  GroupId group;
  long order;
  std::vector<PrimeAttempt> attempts;
  std::optional<std::size_t> certified_attempt;
  // x^7 + s jhat x^3 + k shape (G1 only)
  std::optional<int> shape_sign;
  std::optional<int> shape_constant;
  bool ok() const { return certified_attempt.has_value(); }
};

/// residue: 0 for automatic, 2 or 4 for Q(zeta3) groups; ignored over Q.
UbdCertificate ubd_certificate(const GroupConstants& k, const HauptmodulSeries& h, int residue);

struct TableRow {
  long n;
  std::string value;
};
std::vector<TableRow> export_normalized_table(const HauptmodulSeries& h);

std::string poly_f7_to_string(const PolyF7& p);

}  // namespace ncmf
