// Congruence quotients G_n = G/St_G(n) realized as permutation groups on the
// m^n level-n vertices, the table of exact logarithmic orders
// L_n = log_m |G_n|, and the derived sequence
//
//   s_n = m (L_n - L_{n-1}) - (L_{n+1} - L_n),
//
// an algebraic rearrangement of m log|St(n-1):St(n)| - log|St(n):St(n+1)|
// through the chain identity |G_n| = |G_{n-1}| |St(n-1):St(n)|.

#pragma once

#include <ostream>
#include <stdexcept>
#include <vector>

#include "branchdim/log_value.hpp"
#include "branchdim/perm_group.hpp"
#include "branchdim/tree.hpp"

namespace branchdim {

// The finite quotient G_n, acting faithfully on the m^n level-n vertices.
inline PermGroup level_quotient(const SelfSimilarGroup& g, unsigned n,
                                std::size_t cap = kDefaultDegreeCap) {
  if (n < 1) throw std::invalid_argument("level_quotient: level must be >= 1");
  std::vector<Permutation> gens = level_action_generators(g, n, cap);
  std::size_t deg = level_size(g.degree(), n, cap);
  return PermGroup(deg, std::move(gens));
}

class QuotientTable {
public:
  // Computes |G_n| for n = 1..n_max once, reusing the level-action recursion
  // across levels; levels are never recomputed within a table.
  QuotientTable(const SelfSimilarGroup& g, unsigned n_max,
                std::size_t cap = kDefaultDegreeCap)
      : m_(g.degree()), n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("QuotientTable: need at least one level");
    std::vector<std::vector<Permutation>> atoms = level_action_generators_upto(g, n_max, cap);
    orders_.reserve(n_max);
    logs_.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
      std::size_t deg = atoms[n - 1].empty() ? level_size(m_, n, cap) : atoms[n - 1][0].degree();
      quotients_.emplace_back(deg, atoms[n - 1]);
      orders_.push_back(quotients_.back().order());
      logs_.push_back(log_order(orders_.back(), m_));
      if (n > 1 && orders_[n - 1] % orders_[n - 2] != 0)
        throw std::logic_error("QuotientTable: |G_n| fails to divide |G_{n+1}|");
    }
    for (unsigned n = 1; n + 1 <= n_max; ++n) {
      LogValue d1 = log(n) - log(n - 1);
      LogValue d2 = log(n + 1) - log(n);
      s_.push_back(d1.scaled(static_cast<long>(m_)) - d2);
    }
  }

  std::size_t m() const { return m_; }
  unsigned n_max() const { return n_max_; }

  const PermGroup& quotient(unsigned n) const {
    check_range(n, 1);
    return quotients_[n - 1];
  }

  const cpp_int& order(unsigned n) const {
    check_range(n, 1);
    return orders_[n - 1];
  }

  // L_n; L_0 = 0 (the trivial quotient at the root).
  LogValue log(unsigned n) const {
    if (n == 0) return LogValue::from_rational(0);
    check_range(n, 1);
    return logs_[n - 1];
  }

  // L_n - L_{n-1} = log |St_G(n-1) : St_G(n)|
  LogValue stabilizer_quotient_log(unsigned n) const {
    check_range(n, 1);
    return log(n) - log(n - 1);
  }

  // s_n for n = 1..n_max-1
  const std::vector<LogValue>& s_sequence() const { return s_; }

  LogValue s(unsigned n) const {
    if (n < 1 || n > s_.size())
      throw std::out_of_range("QuotientTable: s_n not computed for n = " + std::to_string(n));
    return s_[n - 1];
  }

  // Every log in the table is an exact rational.
  bool all_exact() const {
    for (const LogValue& l : logs_)
      if (!l.exact()) return false;
    return true;
  }

private:
  void check_range(unsigned n, unsigned lo) const {
    if (n < lo || n > n_max_)
      throw std::out_of_range("QuotientTable: level " + std::to_string(n) + " not computed");
  }

  std::size_t m_;
  unsigned n_max_;
  std::vector<PermGroup> quotients_;
  std::vector<cpp_int> orders_;
  std::vector<LogValue> logs_;
  std::vector<LogValue> s_;
};

// CSV emission: one row per computed level, rationals as "p/q", orders in
// decimal; the s column is empty on the last row (s_n needs level n+1).
inline void write_csv(const QuotientTable& t, std::ostream& os) {
  os << "n,order,log_order,s_n\n";
  for (unsigned n = 1; n <= t.n_max(); ++n) {
    os << n << "," << t.order(n) << "," << t.log(n).str() << ",";
    if (n < t.n_max()) os << t.s(n).str();
    os << "\n";
  }
}

// --- vertex block bookkeeping ---

// Ancestor of a level-n vertex at level k (0-based indices, lexicographic
// vertex numbering): drop the trailing n-k digits.
inline std::uint32_t block_ancestor(std::size_t m, unsigned n, unsigned k, std::uint32_t idx,
                                    std::size_t cap = kDefaultDegreeCap) {
  if (k < 1 || k > n) throw std::invalid_argument("block_ancestor: need 1 <= k <= n");
  std::size_t shift = level_size(m, n - k, cap);
  return static_cast<std::uint32_t>(idx / shift);
}

// The full level-n -> level-k ancestor map.
inline std::vector<std::uint32_t> block_points(std::size_t m, unsigned n, unsigned k,
                                               std::size_t cap = kDefaultDegreeCap) {
  std::size_t sz = level_size(m, n, cap);
  std::vector<std::uint32_t> map(sz);
  std::size_t shift = level_size(m, n - k, cap);
  for (std::size_t i = 0; i < sz; ++i) map[i] = static_cast<std::uint32_t>(i / shift);
  return map;
}

// Generators of G_n acting simultaneously on the m^k level-k vertices
// (indices 0 .. m^k-1) and the m^n level-n vertices (offset by m^k). The
// level-n part is faithful, so pointwise stabilizers of the level-k part cut
// out exactly the images of level stabilizers.
inline std::vector<Permutation> paired_level_generators(const SelfSimilarGroup& g, unsigned n,
                                                        unsigned k,
                                                        std::size_t cap = kDefaultDegreeCap) {
  if (k < 1 || k >= n) throw std::invalid_argument("paired_level_generators: need 1 <= k < n");
  std::vector<std::vector<Permutation>> atoms = level_action_generators_upto(g, n, cap);
  const std::size_t szk = level_size(g.degree(), k, cap);
  const std::size_t szn = level_size(g.degree(), n, cap);
  std::vector<Permutation> out;
  out.reserve(g.generator_count());
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    std::vector<Permutation::point> img(szk + szn);
    for (std::size_t p = 0; p < szk; ++p) img[p] = atoms[k - 1][i][static_cast<Permutation::point>(p)];
    for (std::size_t p = 0; p < szn; ++p)
      img[szk + p] = static_cast<Permutation::point>(
          szk + atoms[n - 1][i][static_cast<Permutation::point>(p)]);
    out.push_back(Permutation(std::move(img)));
  }
  return out;
}

// The image of St_G(k) in G_n, i.e. St_{G_n}(k), as a subgroup of Sym(m^n):
// stabilize the level-k coordinates in the paired action, then restrict the
// resulting strong generators to the level-n coordinates.
inline PermGroup stabilizer_in_quotient(const SelfSimilarGroup& g, unsigned n, unsigned k,
                                        std::size_t cap = kDefaultDegreeCap) {
  std::vector<Permutation> paired = paired_level_generators(g, n, k, cap);
  const std::size_t szk = level_size(g.degree(), k, cap);
  const std::size_t szn = level_size(g.degree(), n, cap);
  std::vector<Permutation::point> prefix(szk);
  for (std::size_t p = 0; p < szk; ++p) prefix[p] = static_cast<Permutation::point>(p);
  StabilizerChain chain = StabilizerChain::build(szk + szn, paired, prefix);
  std::vector<Permutation> fixers = chain.strong_generators_from(szk);
  std::vector<Permutation> restricted;
  restricted.reserve(fixers.size());
  for (const Permutation& f : fixers) {
    std::vector<Permutation::point> img(szn);
    for (std::size_t p = 0; p < szn; ++p)
      img[p] = static_cast<Permutation::point>(f[static_cast<Permutation::point>(szk + p)] - szk);
    restricted.push_back(Permutation(std::move(img)));
  }
  return PermGroup(szn, std::move(restricted));
}

// A permutation of the m^n level-n vertices acting as `inner` on the level-n
// points below first-level vertex `subtree` (0-based) and trivially
// elsewhere; `inner` permutes m^{n-1} points.
inline Permutation embed_in_subtree(std::size_t m, const Permutation& inner,
                                    std::uint32_t subtree) {
  const std::size_t block = inner.degree();
  if (subtree >= m) throw std::invalid_argument("embed_in_subtree: subtree out of range");
  std::vector<Permutation::point> img(m * block);
  for (std::size_t p = 0; p < img.size(); ++p) img[p] = static_cast<Permutation::point>(p);
  const std::size_t off = subtree * block;
  for (std::size_t p = 0; p < block; ++p)
    img[off + p] = static_cast<Permutation::point>(off + inner[static_cast<Permutation::point>(p)]);
  return Permutation(std::move(img));
}

}  // namespace branchdim
