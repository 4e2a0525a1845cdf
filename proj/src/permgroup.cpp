#include "ncmf/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace ncmf {

Permutation7::Permutation7() {
  for (std::uint8_t i = 0; i < 7; ++i) img_[i] = i;
}

Permutation7 Permutation7::from_images(const std::array<int, 7>& images) {
  Permutation7 p;
  std::array<bool, 7> seen{};
  for (std::size_t i = 0; i < 7; ++i) {
    int v = images[i];
    if (v < 1 || v > 7 || seen[static_cast<std::size_t>(v - 1)]) {
      throw GroupError("image sequence is not a bijection of {1..7}");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
    p.img_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Permutation7 Permutation7::from_cycles(std::string_view cycles) {
  std::array<int, 7> images{1, 2, 3, 4, 5, 6, 7};
  std::vector<int> current;
  bool open = false;
  auto close = [&] {
    for (std::size_t i = 0; i < current.size(); ++i) {
      images[static_cast<std::size_t>(current[i] - 1)] = current[(i + 1) % current.size()];
    }
    current.clear();
  };
  for (char ch : cycles) {
    if (ch == '(') {
      if (open) throw GroupError("nested cycle in '" + std::string(cycles) + "'");
      open = true;
    } else if (ch == ')') {
      if (!open) throw GroupError("unbalanced cycle in '" + std::string(cycles) + "'");
      close();
      open = false;
    } else if (ch >= '1' && ch <= '7') {
      if (!open) throw GroupError("point outside a cycle in '" + std::string(cycles) + "'");
      current.push_back(ch - '0');
    } else if (ch != ' ' && ch != ',') {
      throw GroupError("unexpected character in '" + std::string(cycles) + "'");
    }
  }
  if (open) throw GroupError("unterminated cycle in '" + std::string(cycles) + "'");
  return from_images(images);
}

Permutation7 operator*(const Permutation7& a, const Permutation7& b) {
  Permutation7 r;
  for (std::size_t i = 0; i < 7; ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

Permutation7 Permutation7::inverse() const {
  Permutation7 r;
  for (std::uint8_t i = 0; i < 7; ++i) r.img_[img_[i]] = i;
  return r;
}

Permutation7 Permutation7::pow(long k) const {
  Permutation7 base = k < 0 ? inverse() : *this;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  e %= static_cast<unsigned long>(order());
  Permutation7 r;
  for (unsigned long i = 0; i < e; ++i) r = r * base;
  return r;
}

bool Permutation7::is_identity() const { return *this == Permutation7(); }

int Permutation7::order() const {
  int ord = 1;
  for (int p = 1; p <= 7; ++p) ord = std::lcm(ord, static_cast<int>(cycle_of(p).size()));
  return ord;
}

std::vector<int> Permutation7::cycle_of(int point) const {
  std::vector<int> cyc{point};
  for (int x = (*this)(point); x != point; x = (*this)(x)) cyc.push_back(x);
  return cyc;
}

std::string Permutation7::to_cycle_string() const {
  std::string out;
  std::array<bool, 7> done{};
  for (int p = 1; p <= 7; ++p) {
    if (done[static_cast<std::size_t>(p - 1)]) continue;
    auto cyc = cycle_of(p);
    for (int x : cyc) done[static_cast<std::size_t>(x - 1)] = true;
    if (cyc.size() == 1) continue;
    out += '(';
    for (int x : cyc) out += static_cast<char>('0' + x);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::array<int, 7> Permutation7::images() const {
  std::array<int, 7> r{};
  for (std::size_t i = 0; i < 7; ++i) r[i] = img_[i] + 1;
  return r;
}

std::uint32_t Permutation7::code() const {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < 7; ++i) c |= static_cast<std::uint32_t>(img_[i]) << (3 * i);
  return c;
}

std::size_t generated_group_order(const std::vector<Permutation7>& gens) {
  std::set<std::uint32_t> seen{Permutation7().code()};
  std::deque<Permutation7> queue{Permutation7()};
  while (!queue.empty()) {
    Permutation7 p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation7 q = g * p;
      if (seen.insert(q.code()).second) queue.push_back(q);
    }
  }
  return seen.size();
}

bool generates_transitive_group(const std::vector<Permutation7>& gens) {
  std::set<int> orbit{1};
  std::deque<int> queue{1};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      if (orbit.insert(g(x)).second) queue.push_back(g(x));
    }
  }
  return orbit.size() == 7;
}

UnimodularMatrix::UnimodularMatrix(Integer a_, Integer b_, Integer c_, Integer d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (a * d - b * c != 1) throw GroupError("matrix " + to_string() + " does not have determinant 1");
}

UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
  UnimodularMatrix r;
  r.a = x.a * y.a + x.b * y.c;
  r.b = x.a * y.b + x.b * y.d;
  r.c = x.c * y.a + x.d * y.c;
  r.d = x.c * y.b + x.d * y.d;
  return r;
}

bool operator==(const UnimodularMatrix& x, const UnimodularMatrix& y) {
  if (x.equal_exact(y)) return true;
  return x.a == -y.a && x.b == -y.b && x.c == -y.c && x.d == -y.d;
}

std::string UnimodularMatrix::to_string() const {
  return "(" + a.get_str() + " " + b.get_str() + "; " + c.get_str() + " " + d.get_str() + ")";
}

Word expand(const SyllableWord& w) {
  Word out;
  for (const auto& s : w) {
    if (sgn(s.exponent) == 0) continue;
    bool neg = sgn(s.exponent) < 0;
    unsigned long n = Integer(abs(s.exponent)).get_ui();
    Letter l = s.letter;
    if (neg) {
      l = l == Letter::S ? Letter::SInv : l == Letter::T ? Letter::TInv : Letter::RInv;
    }
    out.insert(out.end(), n, l);
  }
  return out;
}

namespace {

UnimodularMatrix letter_matrix(Letter l) {
  switch (l) {
    case Letter::S: return UnimodularMatrix::S();
    case Letter::SInv: return UnimodularMatrix::S().inverse();
    case Letter::T: return UnimodularMatrix::T();
    case Letter::TInv: return UnimodularMatrix::T().inverse();
    case Letter::R: return UnimodularMatrix::R();
    case Letter::RInv: return UnimodularMatrix::R().inverse();
  }
  throw GroupError("bad letter");
}

}  // namespace

UnimodularMatrix word_matrix(const Word& w) {
  UnimodularMatrix m;
  for (Letter l : w) m = m * letter_matrix(l);
  return m;
}

UnimodularMatrix word_matrix(const SyllableWord& w) {
  UnimodularMatrix m;
  for (const auto& s : w) {
    if (s.letter == Letter::T) {
      m = m * UnimodularMatrix::T_power(s.exponent);
      continue;
    }
    UnimodularMatrix base = letter_matrix(s.letter);
    long e = mpz_fdiv_ui(s.exponent.get_mpz_t(), s.letter == Letter::S ? 4 : 6);
    for (long i = 0; i < e; ++i) m = m * base;
  }
  return m;
}

const Homomorphism& homomorphism(int index) {
  static const std::array<Homomorphism, 4> homs = [] {
    auto make = [](int i, const char* s, const char* r, const char* fam) {
      Permutation7 ps = Permutation7::from_cycles(s);
      Permutation7 pr = Permutation7::from_cycles(r);
      return Homomorphism{i, ps, pr, ps * pr, fam};
    };
    return std::array<Homomorphism, 4>{
        make(1, "(12)(34)(56)", "(235)(467)", "G"),
        make(2, "(12)(34)(56)", "(235)(764)", "H"),
        make(3, "(12)(34)(67)", "(235)(467)", "U"),
        make(4, "(12)(34)(67)", "(253)(467)", "V"),
    };
  }();
  if (index < 1 || index > 4) throw GroupError("homomorphism index must be 1..4");
  return homs[static_cast<std::size_t>(index - 1)];
}

Permutation7 evaluate_word(const Word& w, const Homomorphism& hom) {
  Permutation7 p;
  for (Letter l : w) {
    switch (l) {
      case Letter::S: p = p * hom.S; break;
      case Letter::SInv: p = p * hom.S.inverse(); break;
      case Letter::T: p = p * hom.T; break;
      case Letter::TInv: p = p * hom.T.inverse(); break;
      case Letter::R: p = p * hom.R; break;
      case Letter::RInv: p = p * hom.R.inverse(); break;
    }
  }
  return p;
}

Permutation7 evaluate_word(const SyllableWord& w, const Homomorphism& hom) {
  Permutation7 p;
  for (const auto& s : w) {
    const Permutation7& g = s.letter == Letter::S ? hom.S : s.letter == Letter::T ? hom.T : hom.R;
    long e = static_cast<long>(mpz_fdiv_ui(s.exponent.get_mpz_t(), static_cast<unsigned long>(g.order())));
    p = p * g.pow(e);
  }
  return p;
}

SyllableWord matrix_to_syllables(const UnimodularMatrix& M) {
  // Right-multiply by T^k S until the bottom row is (0, +-1): M P = +-T^m.
  std::vector<Integer> shifts;
  Integer a = M.a, b = M.b, c = M.c, d = M.d;
  while (sgn(c) != 0) {
    Integer k;
    // d + k c reduced into [0, |c|)
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    if (sgn(r) < 0) r += abs(c);
    k = (r - d) / c;
    Integer nb = a * k + b;
    // (a, nb; c, r) * S = (nb, -a; r, -c)
    Integer na = nb;
    b = -a;
    a = na;
    d = -c;
    c = r;
    shifts.push_back(k);
  }
  // now (a b; 0 d) with a = d = +-1, i.e. +-T^(b d)
  Integer m = b * d;
  SyllableWord w;
  if (sgn(m) != 0) w.push_back({Letter::T, m});
  // M = T^m (T^k1 S T^k2 S ...)^-1 = T^m ... S^-1 T^-k2 S^-1 T^-k1
  for (auto it = shifts.rbegin(); it != shifts.rend(); ++it) {
    w.push_back({Letter::S, Integer(1)});
    if (sgn(*it) != 0) w.push_back({Letter::T, -*it});
  }
  return w;
}

Word matrix_to_word(const UnimodularMatrix& M) {
  Word w = expand(matrix_to_syllables(M));
  // S^-1 = S in PSL2(Z); keep the alphabet {S, T, T^-1}
  for (auto& l : w) {
    if (l == Letter::SInv) l = Letter::S;
  }
  return w;
}

GroupId GroupId::parse(std::string_view name) {
  if (name.size() != 2 || std::string_view("GHUV").find(name[0]) == std::string_view::npos ||
      name[1] < '1' || name[1] > '7') {
    throw GroupError("unknown group id '" + std::string(name) + "'");
  }
  return GroupId{name[0], name[1] - '0'};
}

std::string GroupId::name() const { return std::string(1, family) + static_cast<char>('0' + point); }

int GroupId::hom_index() const {
  return static_cast<int>(std::string_view("GHUV").find(family)) + 1;
}

const std::vector<GroupId>& canonical_groups() {
  static const std::vector<GroupId> ids{{'G', 1}, {'G', 3}, {'H', 1}, {'H', 3},
                                        {'U', 1}, {'U', 6}, {'V', 1}, {'V', 6}};
  return ids;
}

std::vector<GroupId> all_groups() {
  std::vector<GroupId> ids;
  for (char f : std::string_view("GHUV")) {
    for (int p = 1; p <= 7; ++p) ids.push_back({f, p});
  }
  return ids;
}

namespace {

std::vector<UnimodularMatrix> schreier_generators(const Homomorphism& hom, int base) {
  // transversal t_x with phi(t_x)(base) = x
  std::map<int, UnimodularMatrix> rep{{base, UnimodularMatrix::identity()}};
  std::deque<int> queue{base};
  const std::array<std::pair<UnimodularMatrix, const Permutation7*>, 2> gens{
      std::pair{UnimodularMatrix::S(), &hom.S}, std::pair{UnimodularMatrix::R(), &hom.R}};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& [m, p] : gens) {
      int y = (*p)(x);
      if (!rep.count(y)) {
        rep[y] = m * rep[x];
        queue.push_back(y);
      }
    }
  }
  std::vector<UnimodularMatrix> out;
  for (const auto& [x, tx] : rep) {
    for (const auto& [m, p] : gens) {
      UnimodularMatrix g = rep.at((*p)(x)).inverse() * m * tx;
      if (g == UnimodularMatrix::identity()) continue;
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

std::vector<UnimodularMatrix> presentation_generators(const GroupId& id) {
  using M = UnimodularMatrix;
  if (id.point != 1) return {};
  switch (id.family) {
    case 'G': return {M::T_power(4), M(4, -3, 3, -2), M(-3, 1, -1, 0), M(3, -5, 2, -3), M::R()};
    case 'H': return {M::T_power(5), M(1, -2, 2, -3), M(-4, 1, -1, 0), M(2, -5, 1, -2), M::R()};
    case 'U': return {M::T_power(6), M(-2, 9, -1, 4), M(-5, 1, -1, 0), M(1, -2, 1, -1), M::R()};
    case 'V': return {M::T_power(6), M(-1, 4, -1, 3), M(-5, 1, -1, 0), M(4, -17, 1, -4), M::R()};
    default: return {};
  }
}

GroupDescriptor build_descriptor(const GroupId& id) {
  GroupDescriptor g;
  g.id = id;
  g.hom = &homomorphism(id.hom_index());
  g.basepoint = id.point;
  g.cusp_cycle = g.hom->T.cycle_of(id.point);
  g.cusp_width = static_cast<int>(g.cusp_cycle.size());
  g.presentation = presentation_generators(id);
  g.schreier = schreier_generators(*g.hom, id.point);
  for (const auto& m : g.presentation) {
    if (!is_member(m, g)) {
      throw GroupError("presentation generator " + m.to_string() + " is not in " + id.name());
    }
  }
  return g;
}

}  // namespace

const GroupDescriptor& group(const GroupId& id) {
  static const std::vector<GroupDescriptor> table = [] {
    std::vector<GroupDescriptor> t;
    for (const auto& id : all_groups()) t.push_back(build_descriptor(id));
    return t;
  }();
  int h = id.hom_index();
  if (h < 1 || h > 4 || id.point < 1 || id.point > 7) throw GroupError("unknown group id");
  return table[static_cast<std::size_t>((h - 1) * 7 + id.point - 1)];
}

bool is_member(const UnimodularMatrix& M, const GroupDescriptor& g) {
  return evaluate_word(matrix_to_syllables(M), *g.hom)(g.basepoint) == g.basepoint;
}

int chi(const Integer& c_in, const Integer& d_in, const GroupDescriptor& g) {
  Integer c = c_in, d = d_in;
  if (sgn(c) < 0 || (sgn(c) == 0 && sgn(d) < 0)) {
    c = -c;
    d = -d;
  }
  if (sgn(c) == 0) return d == 1 ? 1 : 0;
  Integer gcd, x, y;
  // x c + y d = gcd; the lift (y -x; c d) has determinant y d + x c
  mpz_gcdext(gcd.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  if (gcd != 1) return 0;
  UnimodularMatrix lift(y, -x, c, d);
  for (int k = 0; k < g.cusp_width; ++k) {
    if (is_member(UnimodularMatrix::T_power(k) * lift, g)) return 1;
  }
  return 0;
}

UnimodularMatrix outer_automorphism(const UnimodularMatrix& M) {
  return UnimodularMatrix(M.a, -M.b, -M.c, M.d);
}

GroupId outer_automorphism_image(const GroupDescriptor& g) {
  std::vector<GroupId> hits;
  for (const auto& id : all_groups()) {
    const GroupDescriptor& cand = group(id);
    bool all = std::all_of(g.schreier.begin(), g.schreier.end(), [&](const UnimodularMatrix& m) {
      return is_member(outer_automorphism(m), cand);
    });
    if (all) hits.push_back(id);
  }
  if (hits.size() != 1) {
    throw GroupError("outer automorphism image of " + g.id.name() + " matched " +
                     std::to_string(hits.size()) + " subgroups");
  }
  return hits.front();
}

}  // namespace ncmf
