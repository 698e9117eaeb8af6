// Finite permutation groups with cached stabilizer chains, plus the subgroup
// constructions the quotient pipeline needs: normal closure, derived and
// lower central subgroups, pointwise stabilizers, containment tests.

#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "branchdim/permutation.hpp"
#include "branchdim/stabilizer_chain.hpp"

namespace branchdim {

class PermGroup {
public:
  using point = Permutation::point;

  explicit PermGroup(std::size_t degree, std::vector<Permutation> generators = {})
      : degree_(degree), gens_(std::move(generators)) {
    for (const Permutation& g : gens_)
      if (g.degree() != degree_)
        throw std::invalid_argument("PermGroup: generator degree mismatch");
  }

  // Takes ownership of a chain already built for these generators.
  PermGroup(std::size_t degree, std::vector<Permutation> generators, StabilizerChain chain)
      : PermGroup(degree, std::move(generators)) {
    cell_->chain = std::make_unique<StabilizerChain>(std::move(chain));
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  const StabilizerChain& chain() const {
    std::call_once(cell_->once, [this] {
      if (!cell_->chain)
        cell_->chain =
            std::make_unique<StabilizerChain>(StabilizerChain::build(degree_, gens_));
    });
    return *cell_->chain;
  }

  const cpp_int& order() const { return chain().order(); }

  bool is_trivial() const { return order() == 1; }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_)
      throw std::invalid_argument("PermGroup: degree mismatch");
    return chain().contains(p);
  }

private:
  struct ChainCell {
    std::once_flag once;
    std::unique_ptr<StabilizerChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> gens_;
  // Shared so copies reuse the same lazily built chain.
  std::shared_ptr<ChainCell> cell_ = std::make_shared<ChainCell>();
};

inline bool is_subgroup(const PermGroup& sub, const PermGroup& sup) {
  if (sub.degree() != sup.degree())
    throw std::invalid_argument("is_subgroup: degree mismatch");
  for (const Permutation& g : sub.generators())
    if (!sup.contains(g)) return false;
  return true;
}

// a^{-1} * x * a
inline Permutation conjugate(const Permutation& x, const Permutation& a) {
  return a.inverse() * x * a;
}

// x^{-1} * y^{-1} * x * y
inline Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

// Smallest subgroup of `ambient` containing `seeds` and normal in it.
// Seeds must lie in the ambient group.
inline PermGroup normal_closure(const PermGroup& ambient, const std::vector<Permutation>& seeds) {
  const std::size_t n = ambient.degree();
  for (const Permutation& s : seeds) {
    if (s.degree() != n) throw std::invalid_argument("normal_closure: degree mismatch");
    if (!ambient.contains(s)) throw std::invalid_argument("normal_closure: seed not in ambient group");
  }

  ChainBuilder builder(n);
  std::vector<Permutation> closure_gens;
  std::vector<Permutation> queue(seeds);
  std::vector<Permutation> ambient_inv;
  ambient_inv.reserve(ambient.generators().size());
  for (const Permutation& a : ambient.generators()) ambient_inv.push_back(a.inverse());

  while (!queue.empty()) {
    Permutation x = std::move(queue.back());
    queue.pop_back();
    if (builder.contains(x)) continue;
    builder.add_generator(x);
    closure_gens.push_back(x);
    for (std::size_t i = 0; i < ambient.generators().size(); ++i) {
      queue.push_back(conjugate(x, ambient.generators()[i]));
      queue.push_back(conjugate(x, ambient_inv[i]));
    }
  }
  return PermGroup(n, std::move(closure_gens), builder.finish());
}

// Derived subgroup: normal closure of the commutators of the generators.
inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> seeds;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      seeds.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, seeds);
}

// Lower central series term gamma_c, c >= 2 (gamma_2 = derived subgroup).
inline PermGroup lower_central(const PermGroup& g, unsigned c) {
  if (c < 2) throw std::invalid_argument("lower_central: c must be at least 2");
  PermGroup term = derived_subgroup(g);
  for (unsigned k = 3; k <= c; ++k) {
    std::vector<Permutation> seeds;
    for (const Permutation& x : term.generators())
      for (const Permutation& y : g.generators())
        seeds.push_back(commutator(x, y));
    term = normal_closure(g, seeds);
  }
  return term;
}

// Subgroup fixing every listed point, from a chain whose base starts with
// those points. Duplicates in `pts` are ignored.
inline PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<PermGroup::point>& pts) {
  std::vector<PermGroup::point> prefix;
  for (PermGroup::point p : pts) {
    if (p >= g.degree()) throw std::invalid_argument("pointwise_stabilizer: point out of range");
    if (std::find(prefix.begin(), prefix.end(), p) == prefix.end()) prefix.push_back(p);
  }
  if (prefix.empty()) return g;
  StabilizerChain chain = StabilizerChain::build(g.degree(), g.generators(), prefix);
  std::vector<Permutation> gens = chain.strong_generators_from(prefix.size());
  return PermGroup(g.degree(), std::move(gens), chain.suffix(prefix.size()));
}

}  // namespace branchdim
