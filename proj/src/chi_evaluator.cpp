#include <deque>
#include <limits>

#include "ncmf/permgroup.hpp"

namespace ncmf {

namespace {

using Perm = std::array<std::uint8_t, 8>;
constexpr std::uint16_t kNone = std::numeric_limits<std::uint16_t>::max();

std::uint32_t pack(const Perm& p) {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < 7; ++i) c |= static_cast<std::uint32_t>(p[i]) << (3 * i);
  return c;
}

Perm to_perm(const Permutation7& p) {
  Perm r{};
  for (int i = 1; i <= 7; ++i) r[static_cast<std::size_t>(i - 1)] = static_cast<std::uint8_t>(p(i) - 1);
  return r;
}

// a after b
Perm compose(const Perm& a, const Perm& b) {
  Perm r{};
  for (std::size_t i = 0; i < 7; ++i) r[i] = a[b[i]];
  return r;
}

}  // namespace

// Lifts with bottom row (c, d), c >= 1, 0 <= d < c:
//   K(1, 0) = S,
//   K(c, d) = K(d, r) T^q S^-1        where -c = q d + r, 0 <= r < d,
//   K(c, d) = K(c - d, r) T^q S T     where c = q (c - d) + r, 0 <= r < c - d.
// The descent takes whichever move leaves the smaller first entry. The image
// pi(c, d) satisfies chi(c, d0 + k c) = [pi(c, d0)(t^k b) in the T-cycle of b].
// Images are memoised for c below memo_rows.
struct ChiEvaluator::Impl {
  int width = 0;
  int t_order = 0;
  std::array<std::uint8_t, 7> cycle_points{};
  std::array<bool, 8> in_cycle{};
  std::vector<Perm> perms;
  std::vector<std::uint16_t> index_of;  // by packed code
  std::vector<Perm> step;               // t^q s for q in [0, t_order)
  // index of step[q] o perms[i] and of t^q s t o perms[i], at i * t_order + q
  std::vector<std::uint16_t> left_a, left_b;
  long rows = 0;
  // for each memoised (c, d): the set of points x with pi(c, d)(x) in the cusp cycle
  std::vector<std::uint8_t> memo_set;
  // mask_table[right * 128 + X]: bit k set iff right(t^k b) lies in X
  std::vector<std::uint8_t> mask_table;
  // q mod t_order and -q mod t_order for small q
  static constexpr std::uint32_t kModTable = 1u << 12;
  std::vector<std::uint8_t> mod_t, negmod_t;

  std::uint32_t pos_mod(std::uint32_t q) const {
    return q < kModTable ? mod_t[q] : q % static_cast<std::uint32_t>(t_order);
  }
  std::uint32_t neg_mod(std::uint32_t q) const {
    if (q < kModTable) return negmod_t[q];
    const auto t = static_cast<std::uint32_t>(t_order);
    return (t - q % t) % t;
  }

  std::uint16_t index(const Perm& p) const { return index_of[pack(p)]; }
  std::size_t slot(long c, long d) const {
    return static_cast<std::size_t>(c * (c - 1) / 2 + d);
  }

  unsigned mask_of(const Perm& pi) const {
    unsigned m = 0;
    for (int k = 0; k < width; ++k) {
      if (in_cycle[pi[cycle_points[static_cast<std::size_t>(k)]]]) m |= 1u << k;
    }
    return m;
  }

  unsigned offset_mask(long c_in, long d_in) const {
    std::uint32_t right = 0;
    std::uint32_t c = static_cast<std::uint32_t>(c_in), d = static_cast<std::uint32_t>(d_in);
    const std::uint32_t tq = static_cast<std::uint32_t>(t_order);
    while (c >= rows) {
      if (d == 0) return 0;
      const std::uint32_t e = c - d;
      if (d <= e) {
        std::uint32_t q = c / d, r = c % d;  // -c = -(q + 1) d + (d - r) when r > 0
        std::uint32_t qm;
        if (r == 0) {
          qm = neg_mod(q);
        } else {
          qm = neg_mod(q + 1);
          r = d - r;
        }
        right = left_a[right * tq + qm];
        c = d;
        d = r;
      } else {
        const std::uint32_t q = c / e, r = c % e;
        right = left_b[right * tq + pos_mod(q)];
        c = e;
        d = r;
      }
    }
    return finish(c, d, right);
  }

  unsigned finish(std::uint32_t c, std::uint32_t d, std::uint32_t right) const {
    return mask_table[(static_cast<std::size_t>(right) << 7) | memo_set[slot(c, d)]];
  }

  // Masks of (c, d) and (c, c - d) for 1 <= d < c - d. Both descents divide by
  // the smaller column at every step, one by the first move and one by the second.
  void pair_masks(std::uint32_t c, std::uint32_t d, std::uint8_t& lo, std::uint8_t& hi) const {
    const std::uint32_t tq = static_cast<std::uint32_t>(t_order);
    std::uint32_t small_right = 0, large_right = 0;
    bool swapped = false;  // the element holding the small column is (c, c - d)
    std::uint32_t s = d;
    while (c >= rows) {
      const std::uint32_t q = c / s, r = c % s;
      if (s == 1) {
        // both reach the row (1, 0)
        small_right = left_a[small_right * tq + neg_mod(q)];
        large_right = left_b[large_right * tq + pos_mod(q)];
        std::uint8_t ms = static_cast<std::uint8_t>(finish(1, 0, small_right));
        std::uint8_t ml = static_cast<std::uint8_t>(finish(1, 0, large_right));
        lo = swapped ? ml : ms;
        hi = swapped ? ms : ml;
        return;
      }
      if (r == 0) {
        lo = hi = 0;
        return;
      }
      small_right = left_a[small_right * tq + neg_mod(q + 1)];
      large_right = left_b[large_right * tq + pos_mod(q)];
      // columns are now s - r (small element) and r (large element) in row s
      c = s;
      if (r < s - r) {
        std::swap(small_right, large_right);
        swapped = !swapped;
        s = r;
      } else {
        s = s - r;
      }
    }
    std::uint8_t ms = static_cast<std::uint8_t>(finish(c, s, small_right));
    std::uint8_t ml = static_cast<std::uint8_t>(finish(c, c - s, large_right));
    lo = swapped ? ml : ms;
    hi = swapped ? ms : ml;
  }
};

ChiEvaluator::ChiEvaluator(const GroupDescriptor& g, long memo_rows) : impl_(std::make_unique<Impl>()) {
  Impl& im = *impl_;
  im.width = g.cusp_width;
  im.t_order = g.hom->T.order();
  for (int k = 0; k < im.width; ++k) {
    int p = g.cusp_cycle[static_cast<std::size_t>(k)];
    im.cycle_points[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(p - 1);
    im.in_cycle[static_cast<std::size_t>(p - 1)] = true;
  }

  const Perm s = to_perm(g.hom->S);
  const Perm r = to_perm(g.hom->R);
  const Perm t = to_perm(g.hom->T);
  im.index_of.assign(std::size_t{1} << 21, kNone);
  Perm id{0, 1, 2, 3, 4, 5, 6, 7};
  std::deque<Perm> queue{id};
  im.index_of[pack(id)] = 0;
  im.perms.push_back(id);
  while (!queue.empty()) {
    Perm p = queue.front();
    queue.pop_front();
    for (const Perm& gen : {s, r}) {
      Perm q = compose(gen, p);
      if (im.index_of[pack(q)] == kNone) {
        im.index_of[pack(q)] = static_cast<std::uint16_t>(im.perms.size());
        im.perms.push_back(q);
        queue.push_back(q);
      }
    }
  }
  Perm tq = id;
  std::vector<Perm> step_b;
  for (int q = 0; q < im.t_order; ++q) {
    im.step.push_back(compose(tq, s));
    step_b.push_back(compose(compose(tq, s), t));
    tq = compose(t, tq);
  }
  const std::size_t tn = static_cast<std::size_t>(im.t_order);
  for (std::uint32_t q = 0; q < Impl::kModTable; ++q) {
    im.mod_t.push_back(static_cast<std::uint8_t>(q % tn));
    im.negmod_t.push_back(static_cast<std::uint8_t>((tn - q % tn) % tn));
  }
  im.left_a.resize(im.perms.size() * tn);
  im.left_b.resize(im.perms.size() * tn);
  for (std::size_t i = 0; i < im.perms.size(); ++i) {
    for (std::size_t q = 0; q < tn; ++q) {
      im.left_a[i * tn + q] = im.index(compose(im.step[q], im.perms[i]));
      im.left_b[i * tn + q] = im.index(compose(step_b[q], im.perms[i]));
    }
  }

  im.rows = std::max<long>(memo_rows, 2);
  std::vector<std::uint16_t> memo(im.slot(im.rows, 0), kNone);
  memo[im.slot(1, 0)] = im.index(s);
  for (long c = 2; c < im.rows; ++c) {
    for (long d = 1; d < c; ++d) {
      long rem = (-c) % d;
      if (rem < 0) rem += d;
      std::uint16_t prev = memo[im.slot(d, rem)];
      if (prev == kNone) continue;
      long q = (-c - rem) / d;
      long qm = q % im.t_order;
      if (qm < 0) qm += im.t_order;
      memo[im.slot(c, d)] = im.index(compose(im.perms[prev], im.step[static_cast<std::size_t>(qm)]));
    }
  }

  std::vector<std::uint8_t> member_set(im.perms.size());
  for (std::size_t i = 0; i < im.perms.size(); ++i) {
    for (std::size_t x = 0; x < 7; ++x) {
      if (im.in_cycle[im.perms[i][x]]) member_set[i] |= static_cast<std::uint8_t>(1u << x);
    }
  }
  im.memo_set.assign(memo.size(), 0);
  for (std::size_t i = 0; i < memo.size(); ++i) {
    if (memo[i] != kNone) im.memo_set[i] = member_set[memo[i]];
  }
  im.mask_table.assign(im.perms.size() << 7, 0);
  for (std::size_t i = 0; i < im.perms.size(); ++i) {
    for (unsigned X = 0; X < 128; ++X) {
      unsigned m = 0;
      for (int k = 0; k < im.width; ++k) {
        if (X & (1u << im.perms[i][im.cycle_points[static_cast<std::size_t>(k)]])) m |= 1u << k;
      }
      im.mask_table[(i << 7) | X] = static_cast<std::uint8_t>(m);
    }
  }
}

ChiEvaluator::~ChiEvaluator() = default;

int ChiEvaluator::width() const { return impl_->width; }

unsigned ChiEvaluator::offset_mask(long c, long d0) const { return impl_->offset_mask(c, d0); }

void ChiEvaluator::row_masks(long c, std::uint8_t* out) const {
  if (c < impl_->rows || c < 3) {
    for (long d = 0; d < c; ++d) out[d] = static_cast<std::uint8_t>(impl_->offset_mask(c, d));
    return;
  }
  out[0] = 0;
  const auto cc = static_cast<std::uint32_t>(c);
  for (std::uint32_t d = 1; 2 * d < cc; ++d) impl_->pair_masks(cc, d, out[d], out[cc - d]);
  if (c % 2 == 0) out[c / 2] = 0;
}

int ChiEvaluator::operator()(long c, long d) const {
  if (c < 0 || (c == 0 && d < 0)) {
    c = -c;
    d = -d;
  }
  if (c == 0) return d == 1 ? 1 : 0;
  long d0 = d % c;
  if (d0 < 0) d0 += c;
  long k = ((d - d0) / c) % impl_->width;
  if (k < 0) k += impl_->width;
  return static_cast<int>((impl_->offset_mask(c, d0) >> k) & 1u);
}

}  // namespace ncmf
