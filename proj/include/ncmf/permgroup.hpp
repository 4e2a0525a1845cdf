#pragma once

// Permutation representations of PSL2(Z) on 7 points and the index-7
// subgroups they define.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncmf/exactfield.hpp"

namespace ncmf {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bijection of {1..7}.  Composition is right to left: (a * b)(x) = a(b(x)).
class Permutation7 {
 public:
  Permutation7();
  /// images[i] is the image of i + 1.
  static Permutation7 from_images(const std::array<int, 7>& images);
  /// Cycle notation such as "(1245)(367)"; "()" is the identity.
  static Permutation7 from_cycles(std::string_view cycles);

  int operator()(int point) const { return img_[static_cast<std::size_t>(point - 1)] + 1; }
  friend Permutation7 operator*(const Permutation7& a, const Permutation7& b);
  Permutation7 inverse() const;
  Permutation7 pow(long k) const;
  bool is_identity() const;
  int order() const;
  /// The cycle through `point`, starting at point.
  std::vector<int> cycle_of(int point) const;
  std::string to_cycle_string() const;
  std::array<int, 7> images() const;
  /// 3 bits per image; injective.
  std::uint32_t code() const;

  friend bool operator==(const Permutation7&, const Permutation7&) = default;

 private:
  std::array<std::uint8_t, 7> img_;
};

/// Order of the group generated by the given permutations.
std::size_t generated_group_order(const std::vector<Permutation7>& gens);
bool generates_transitive_group(const std::vector<Permutation7>& gens);

/// An element of SL2(Z), compared up to sign.
struct UnimodularMatrix {
  Integer a{1}, b{0}, c{0}, d{1};

  UnimodularMatrix() = default;
  UnimodularMatrix(Integer a_, Integer b_, Integer c_, Integer d_);

  static UnimodularMatrix identity() { return {}; }
  static UnimodularMatrix S() { return {0, -1, 1, 0}; }
  static UnimodularMatrix T() { return {1, 1, 0, 1}; }
  static UnimodularMatrix R() { return {0, -1, 1, 1}; }
  static UnimodularMatrix T_power(const Integer& k) { return {1, k, 0, 1}; }

  UnimodularMatrix inverse() const { return {d, -b, -c, a}; }
  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y);
  /// Equality in PSL2(Z).
  friend bool operator==(const UnimodularMatrix& x, const UnimodularMatrix& y);
  bool equal_exact(const UnimodularMatrix& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;
};

enum class Letter : std::uint8_t { S, SInv, T, TInv, R, RInv };
using Word = std::vector<Letter>;

/// Run-length form of a word: generator raised to an integer power.
struct Syllable {
  Letter letter;  // S, T or R
  Integer exponent;
};
using SyllableWord = std::vector<Syllable>;

Word expand(const SyllableWord& w);
UnimodularMatrix word_matrix(const Word& w);
UnimodularMatrix word_matrix(const SyllableWord& w);

/// Images of S and R; T maps to S * R.
struct Homomorphism {
  int index;  // 1..4
  Permutation7 S, R, T;
  const char* family;  // "G", "H", "U", "V"
};

const Homomorphism& homomorphism(int index);
Permutation7 evaluate_word(const Word& w, const Homomorphism& hom);
Permutation7 evaluate_word(const SyllableWord& w, const Homomorphism& hom);

/// Decomposition over {S, T, T^-1} that multiplies back to +-M.
SyllableWord matrix_to_syllables(const UnimodularMatrix& M);
Word matrix_to_word(const UnimodularMatrix& M);

/// One of the 28 index-7 subgroups: family letter and point 1..7.
struct GroupId {
  char family = 'G';
  int point = 1;

  static GroupId parse(std::string_view name);
  std::string name() const;
  int hom_index() const;
  friend bool operator==(const GroupId&, const GroupId&) = default;
};

/// The eight groups whose hauptmoduls are tabulated.
const std::vector<GroupId>& canonical_groups();
std::vector<GroupId> all_groups();

struct GroupDescriptor {
  GroupId id;
  const Homomorphism* hom;
  int basepoint;
  int cusp_width;
  /// T-cycle of the basepoint, starting at the basepoint.
  std::vector<int> cusp_cycle;
  /// Presentation generators listed for the canonical groups (empty otherwise).
  std::vector<UnimodularMatrix> presentation;
  /// Schreier generators from a breadth-first coset transversal.
  std::vector<UnimodularMatrix> schreier;
};

const GroupDescriptor& group(const GroupId& id);
inline const GroupDescriptor& group(std::string_view name) { return group(GroupId::parse(name)); }

bool is_member(const UnimodularMatrix& M, const GroupDescriptor& g);

/// 1 if some matrix with bottom row (c, d) lies in g, else 0.  Reference
/// implementation via explicit lifts.
int chi(const Integer& c, const Integer& d, const GroupDescriptor& g);

/// Image under (a b; c d) -> (a -b; -c d).
UnimodularMatrix outer_automorphism(const UnimodularMatrix& M);
GroupId outer_automorphism_image(const GroupDescriptor& g);

/// Fast chi for many pairs.  Immutable after construction.
class ChiEvaluator {
 public:
  explicit ChiEvaluator(const GroupDescriptor& g, long memo_rows = 2048);
  ~ChiEvaluator();
  ChiEvaluator(const ChiEvaluator&) = delete;
  ChiEvaluator& operator=(const ChiEvaluator&) = delete;

  int width() const;
  /// Bit k is chi(c, d0 + k c) for 0 <= k < width; requires c >= 1, 0 <= d0 < c.
  unsigned offset_mask(long c, long d0) const;
  /// offset_mask for every d0 in [0, c).
  void row_masks(long c, std::uint8_t* out) const;
  int operator()(long c, long d) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ncmf
