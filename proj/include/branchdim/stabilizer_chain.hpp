// Stabilizer chains (base and strong generating set) for finite permutation
// groups, built with the deterministic incremental Schreier-Sims algorithm.
//
// Transversals are stored as Schreier vectors (parent pointers into the
// orbit plus the generator label used), so memory stays O(degree) per level;
// coset representatives are recomputed on demand. Orders are exact
// arbitrary-precision integers.
//
// The verification bookkeeping processes every (orbit point, generator) pair
// exactly once: pairs already checked stay valid because orbits only grow and
// existing Schreier-vector entries are never rewritten.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "branchdim/permutation.hpp"

namespace branchdim {

using boost::multiprecision::cpp_int;

class StabilizerChain {
public:
  using point = Permutation::point;

  struct Level {
    point base = 0;
    std::vector<std::uint32_t> gens;      // indices into the generator pool
    std::vector<point> orbit;             // BFS order, orbit[0] == base
    std::vector<std::int32_t> slot;       // degree-sized; orbit position or -1
    std::vector<std::uint32_t> parent;    // per orbit position; root points to itself
    std::vector<std::uint32_t> label;     // pool index with orbit[parent]^gen == point
    std::vector<std::uint32_t> checked;   // per gens entry: orbit positions verified
  };

  StabilizerChain() = default;

  // Builds a chain for <gens>. Points in base_prefix head the base in the
  // given order and are kept even when their orbits stay trivial.
  static StabilizerChain build(std::size_t degree, const std::vector<Permutation>& gens,
                               const std::vector<point>& base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  const cpp_int& order() const { return order_; }

  std::vector<point> base() const {
    std::vector<point> b;
    for (const Level& l : levels_) b.push_back(l.base);
    return b;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_)
      throw std::invalid_argument("StabilizerChain: degree mismatch");
    return sift(p).is_identity();
  }

  // Residue after dividing out transversal representatives level by level;
  // identity exactly for members.
  Permutation sift(const Permutation& p) const;

  // Strong generators fixing the first `prefix` base points; generates the
  // pointwise stabilizer of those points when they were prescribed.
  std::vector<Permutation> strong_generators_from(std::size_t prefix) const;

  // The chain formed by the levels from `prefix` on; a valid chain for the
  // pointwise stabilizer of the first `prefix` base points.
  StabilizerChain suffix(std::size_t prefix) const;

  // Plain-text diagnostics: base, orbit sizes, order.
  std::string dump() const;

private:
  struct PoolEntry {
    std::vector<point> img;
    std::vector<point> inv;
  };

  std::size_t degree_ = 0;
  std::vector<PoolEntry> pool_;
  std::vector<Level> levels_;
  cpp_int order_ = 1;

  friend class ChainBuilder;
};

// Incremental construction: generators may be added one by one and the chain
// stays verified between additions, which is what normal-closure loops need.
class ChainBuilder {
public:
  using point = Permutation::point;

  explicit ChainBuilder(std::size_t degree, const std::vector<point>& base_prefix = {})
      : degree_(degree) {
    if (degree == 0) throw std::invalid_argument("ChainBuilder: degree must be positive");
    std::vector<bool> seen(degree, false);
    for (point b : base_prefix) {
      if (b >= degree) throw std::invalid_argument("ChainBuilder: base point out of range");
      if (seen[b]) throw std::invalid_argument("ChainBuilder: duplicate base point");
      seen[b] = true;
      new_level(b);
    }
    scratch_.resize(degree);
  }

  void add_generator(const Permutation& g) {
    add_generator_unverified(g);
    verify();
  }

  void add_generator_unverified(const Permutation& g) {
    if (g.degree() != degree_) throw std::invalid_argument("ChainBuilder: degree mismatch");
    if (g.is_identity()) return;
    std::uint32_t idx = pool_add(g.images());
    place(idx, 0);
  }

  void verify();

  bool contains(const std::vector<point>& images) const;
  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) throw std::invalid_argument("ChainBuilder: degree mismatch");
    return contains(g.images());
  }

  cpp_int order() const {
    cpp_int o = 1;
    for (const auto& l : levels_) o *= static_cast<unsigned>(l.orbit.size());
    return o;
  }

  StabilizerChain finish() {
    verify();
    StabilizerChain c;
    c.degree_ = degree_;
    c.order_ = order();
    c.pool_.reserve(pool_.size());
    for (auto& e : pool_) c.pool_.push_back({std::move(e.img), std::move(e.inv)});
    c.levels_ = std::move(levels_);
    pool_.clear();
    levels_.clear();
    return c;
  }

private:
  struct PoolEntry {
    std::vector<point> img;
    std::vector<point> inv;
  };
  using Level = StabilizerChain::Level;

  std::size_t degree_;
  std::vector<PoolEntry> pool_;
  std::vector<Level> levels_;
  mutable std::vector<point> scratch_;

  std::uint32_t pool_add(const std::vector<point>& img) {
    PoolEntry e;
    e.img = img;
    e.inv.resize(degree_);
    for (std::size_t i = 0; i < degree_; ++i) e.inv[img[i]] = static_cast<point>(i);
    pool_.push_back(std::move(e));
    return static_cast<std::uint32_t>(pool_.size() - 1);
  }

  void new_level(point base) {
    Level l;
    l.base = base;
    l.slot.assign(degree_, -1);
    l.slot[base] = 0;
    l.orbit = {base};
    l.parent = {0};
    l.label = {0};
    levels_.push_back(std::move(l));
  }

  // Appends pool entry `idx` to the generator lists of levels in [lo, hi].
  void place_range(std::uint32_t idx, std::size_t lo, std::size_t hi) {
    for (std::size_t l = lo; l <= hi; ++l) {
      levels_[l].gens.push_back(idx);
      levels_[l].checked.push_back(0);
      expand_orbit(levels_[l]);
    }
  }

  // Registers a new strong generator known to fix base points before `lo`.
  // Returns the level index whose processing must resume.
  std::size_t place(std::uint32_t idx, std::size_t lo);

  void expand_orbit(Level& l) {
    for (std::size_t q = 0; q < l.orbit.size(); ++q) {
      for (std::uint32_t gi : l.gens) {
        point img = pool_[gi].img[l.orbit[q]];
        if (l.slot[img] < 0) {
          l.slot[img] = static_cast<std::int32_t>(l.orbit.size());
          l.orbit.push_back(img);
          l.parent.push_back(static_cast<std::uint32_t>(q));
          l.label.push_back(gi);
        }
      }
    }
  }

  // buf := buf * transversal(level, to)^{-1}; `to` must lie in the orbit.
  void apply_rep_inverse(const Level& l, point to, std::vector<point>& buf) const {
    std::uint32_t q = static_cast<std::uint32_t>(l.slot[to]);
    while (q != 0) {
      const std::vector<point>& inv = pool_[l.label[q]].inv;
      for (std::size_t i = 0; i < degree_; ++i) buf[i] = inv[buf[i]];
      q = l.parent[q];
    }
  }

  // buf := transversal representative carrying base to orbit[q].
  void build_rep(const Level& l, std::uint32_t q, std::vector<point>& buf) const {
    static thread_local std::vector<std::uint32_t> path;
    path.clear();
    while (q != 0) {
      path.push_back(l.label[q]);
      q = l.parent[q];
    }
    for (std::size_t i = 0; i < degree_; ++i) buf[i] = static_cast<point>(i);
    for (std::size_t k = path.size(); k-- > 0;) {
      const std::vector<point>& img = pool_[path[k]].img;
      for (std::size_t i = 0; i < degree_; ++i) buf[i] = img[buf[i]];
    }
  }

  static bool buf_is_identity(const std::vector<point>& buf) {
    for (std::size_t i = 0; i < buf.size(); ++i)
      if (buf[i] != i) return false;
    return true;
  }

  // Sifts buf (destructively) through levels from `from`. Returns the level
  // where sifting stuck, or levels_.size() when buf fixes every base point.
  std::size_t sift_from(std::size_t from, std::vector<point>& buf) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lev = levels_[l];
      point img = buf[lev.base];
      if (img == lev.base) continue;
      if (lev.slot[img] < 0) return l;
      apply_rep_inverse(lev, img, buf);
    }
    return levels_.size();
  }
};

inline void ChainBuilder::verify() {
  if (levels_.empty()) return;
  constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);
  std::size_t i = levels_.size() - 1;
  while (true) {
    // levels_ and pool_ may reallocate below; index freshly on every pass.
    std::size_t jump = kNoJump;
    for (std::size_t k = 0; jump == kNoJump && k < levels_[i].gens.size(); ++k) {
      while (jump == kNoJump && levels_[i].checked[k] < levels_[i].orbit.size()) {
        const Level& lev = levels_[i];
        const PoolEntry& gen = pool_[lev.gens[k]];
        std::uint32_t q = levels_[i].checked[k]++;
        point ps = gen.img[lev.orbit[q]];
        // Schreier generator u_p * gen * u_{p^gen}^{-1}
        build_rep(lev, q, scratch_);
        for (std::size_t t = 0; t < degree_; ++t) scratch_[t] = gen.img[scratch_[t]];
        apply_rep_inverse(lev, ps, scratch_);
        if (buf_is_identity(scratch_)) continue;
        std::size_t stuck = sift_from(i + 1, scratch_);
        if (stuck == levels_.size() && buf_is_identity(scratch_)) continue;
        std::uint32_t idx = pool_add(scratch_);
        jump = place(idx, i + 1);
      }
    }
    if (jump != kNoJump) {
      i = jump;
      continue;
    }
    if (i == 0) break;
    --i;
  }
}

inline std::size_t ChainBuilder::place(std::uint32_t idx, std::size_t lo) {
  // Find the first level at or after lo whose base the generator moves,
  // extending the base when it fixes every existing base point.
  const std::vector<point>& img = pool_[idx].img;
  std::size_t hi = levels_.size();
  for (std::size_t l = lo; l < levels_.size(); ++l) {
    if (img[levels_[l].base] != levels_[l].base) {
      hi = l;
      break;
    }
  }
  if (hi == levels_.size()) {
    point moved = 0;
    while (img[moved] == moved) ++moved;
    new_level(moved);
  }
  if (lo >= levels_.size()) lo = levels_.size() - 1;
  place_range(idx, lo, hi);
  return hi;
}

inline bool ChainBuilder::contains(const std::vector<point>& images) const {
  scratch_ = images;
  std::size_t stuck = sift_from(0, scratch_);
  return stuck == levels_.size() && buf_is_identity(scratch_);
}

inline StabilizerChain StabilizerChain::build(std::size_t degree,
                                              const std::vector<Permutation>& gens,
                                              const std::vector<point>& base_prefix) {
  for (const Permutation& g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("StabilizerChain: generator degree mismatch");
  ChainBuilder b(degree, base_prefix);
  for (const Permutation& g : gens) b.add_generator_unverified(g);
  return b.finish();
}

inline Permutation StabilizerChain::sift(const Permutation& p) const {
  if (p.degree() != degree_)
    throw std::invalid_argument("StabilizerChain: degree mismatch");
  std::vector<point> buf = p.images();
  for (const Level& lev : levels_) {
    point img = buf[lev.base];
    if (img == lev.base) continue;
    if (lev.slot[img] < 0) return Permutation(std::move(buf));
    std::uint32_t q = static_cast<std::uint32_t>(lev.slot[img]);
    while (q != 0) {
      const std::vector<point>& inv = pool_[lev.label[q]].inv;
      for (std::size_t i = 0; i < degree_; ++i) buf[i] = inv[buf[i]];
      q = lev.parent[q];
    }
  }
  return Permutation(std::move(buf));
}

inline std::vector<Permutation> StabilizerChain::strong_generators_from(
    std::size_t prefix) const {
  std::vector<bool> taken(pool_.size(), false);
  std::vector<Permutation> out;
  for (std::size_t l = prefix; l < levels_.size(); ++l) {
    for (std::uint32_t gi : levels_[l].gens) {
      if (!taken[gi]) {
        taken[gi] = true;
        out.emplace_back(pool_[gi].img);
      }
    }
  }
  return out;
}

inline StabilizerChain StabilizerChain::suffix(std::size_t prefix) const {
  if (prefix > levels_.size())
    throw std::invalid_argument("StabilizerChain: suffix past end of base");
  StabilizerChain c;
  c.degree_ = degree_;
  c.pool_ = pool_;
  c.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(prefix), levels_.end());
  c.order_ = 1;
  for (const Level& l : c.levels_) c.order_ *= static_cast<unsigned>(l.orbit.size());
  return c;
}

inline std::string StabilizerChain::dump() const {
  std::ostringstream os;
  os << "degree " << degree_ << ", base [";
  for (std::size_t i = 0; i < levels_.size(); ++i)
    os << (i ? " " : "") << levels_[i].base + 1;
  os << "], orbit sizes [";
  for (std::size_t i = 0; i < levels_.size(); ++i)
    os << (i ? " " : "") << levels_[i].orbit.size();
  os << "], order " << order_;
  return os.str();
}

}  // namespace branchdim
