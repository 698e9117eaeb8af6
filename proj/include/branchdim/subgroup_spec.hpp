// Specifications of a subgroup K <= G for branch structures: a verbal tag
// (derived subgroup, a lower central term) or an explicit list of generator
// words. Verbal subgroups map onto the same verbal subgroup of every finite
// quotient, which is how their images are computed.

#pragma once

#include <string>
#include <vector>

#include "branchdim/perm_group.hpp"
#include "branchdim/quotients.hpp"
#include "branchdim/tree.hpp"

namespace branchdim {

struct SubgroupSpec {
  enum class Kind { whole, derived, lower_central, words };

  Kind kind = Kind::whole;
  unsigned central_class = 0;     // lower_central only, >= 2
  std::vector<TreeWord> words;    // words only
  bool assume_normal = false;     // words only: caller asserts K is normal in G

  static SubgroupSpec whole() { return {}; }

  static SubgroupSpec derived() {
    SubgroupSpec s;
    s.kind = Kind::derived;
    return s;
  }

  static SubgroupSpec gamma(unsigned c) {
    if (c < 2) throw std::invalid_argument("subgroup spec: lower central class must be >= 2");
    SubgroupSpec s;
    s.kind = Kind::lower_central;
    s.central_class = c;
    return s;
  }

  static SubgroupSpec generated_by(std::vector<TreeWord> ws, bool normal) {
    SubgroupSpec s;
    s.kind = Kind::words;
    s.words = std::move(ws);
    s.assume_normal = normal;
    return s;
  }

  // Verbal subgroups (and the whole group) are normal for free.
  bool automatically_normal() const { return kind != Kind::words; }

  std::string describe(const SelfSimilarGroup& g) const {
    switch (kind) {
      case Kind::whole: return "G";
      case Kind::derived: return "G'";
      case Kind::lower_central: return "gamma_" + std::to_string(central_class) + "(G)";
      case Kind::words: {
        std::string s = "<";
        for (std::size_t i = 0; i < words.size(); ++i) {
          if (i) s += ", ";
          s += word_to_string(g, words[i]);
        }
        return s + ">";
      }
    }
    return "?";
  }
};

// Image of K in the congruence quotient G_n. For explicit generator words the
// image is the subgroup generated by their level-n actions; set `normalize`
// to replace it by its normal closure in G_n (used when no normality
// assertion accompanies explicit generators).
inline PermGroup image_in_quotient(const SelfSimilarGroup& g, const SubgroupSpec& spec,
                                   unsigned n, bool normalize = false,
                                   std::size_t cap = kDefaultDegreeCap) {
  PermGroup q = level_quotient(g, n, cap);
  switch (spec.kind) {
    case SubgroupSpec::Kind::whole:
      return q;
    case SubgroupSpec::Kind::derived:
      return derived_subgroup(q);
    case SubgroupSpec::Kind::lower_central:
      return lower_central(q, spec.central_class);
    case SubgroupSpec::Kind::words: {
      std::vector<Permutation> images;
      images.reserve(spec.words.size());
      for (const TreeWord& w : spec.words) images.push_back(level_action(g, w, n, cap));
      if (normalize) return normal_closure(q, images);
      return PermGroup(q.degree(), std::move(images));
    }
  }
  throw std::logic_error("image_in_quotient: unreachable");
}

}  // namespace branchdim
