// Constructors for GGS-groups on the m-adic tree: the rooted generator a is
// the m-cycle on the first level and the directed generator b has sections
// (a^{e_1}, ..., a^{e_{m-1}}, b) for a defining vector e. The local-action
// group H is the cyclic group generated by the m-cycle.

#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchdim/tree.hpp"

namespace branchdim {

struct DefiningVector {
  std::size_t m = 0;
  std::vector<unsigned> e;  // length m-1, residues mod m

  // Reduces arbitrary integer entries mod m and checks the arity.
  static DefiningVector reduced(std::size_t m, const std::vector<long long>& raw) {
    if (m < 2) throw std::invalid_argument("defining vector: degree must be at least 2");
    if (raw.size() != m - 1)
      throw std::invalid_argument("defining vector: expected " + std::to_string(m - 1) +
                                  " entries, got " + std::to_string(raw.size()));
    DefiningVector v;
    v.m = m;
    v.e.reserve(m - 1);
    for (long long x : raw) {
      long long r = x % static_cast<long long>(m);
      if (r < 0) r += static_cast<long long>(m);
      v.e.push_back(static_cast<unsigned>(r));
    }
    return v;
  }

  // All-zero vector: b collapses to the identity automorphism.
  bool degenerate() const {
    for (unsigned x : e)
      if (x != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    return s + ")";
  }

  bool operator==(const DefiningVector&) const = default;
};

inline Permutation full_cycle(std::size_t m) {
  std::vector<Permutation::point> img(m);
  for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Permutation::point>((i + 1) % m);
  return Permutation(std::move(img));
}

inline SelfSimilarGroup ggs_group(const DefiningVector& v) {
  GroupDescription d;
  d.name = "ggs:" + std::to_string(v.m) + ":";
  for (std::size_t i = 0; i < v.e.size(); ++i) {
    if (i) d.name += ",";
    d.name += std::to_string(v.e[i]);
  }
  d.degree = v.m;
  d.h_generators = {full_cycle(v.m)};
  d.generator_names = {"a", "b"};

  GeneratorRecursion a;
  a.root = full_cycle(v.m);
  a.sections.resize(v.m);

  GeneratorRecursion b;
  b.root = Permutation(v.m);
  b.sections.resize(v.m);
  for (std::size_t i = 0; i + 1 < v.m; ++i) b.sections[i].append(0, v.e[i]);
  b.sections[v.m - 1].append(1, 1);

  d.recursions = {std::move(a), std::move(b)};
  return SelfSimilarGroup::from_description(std::move(d));
}

// e_i is a unit mod m exactly when e_{m-i} is, for every 1 <= i <= m-1.
inline bool is_invertible_symmetric(const DefiningVector& v) {
  auto unit = [&](unsigned x) { return std::gcd<unsigned long, unsigned long>(x, v.m) == 1; };
  for (std::size_t i = 1; i <= v.m - 1; ++i)
    if (unit(v.e[i - 1]) != unit(v.e[v.m - i - 1])) return false;
  return true;
}

// The eight non-invertible-symmetric defining vectors on the 4-adic tree
// with first entry 1, in the order used throughout: the four with odd entry
// sum first. -1 is kept as the residue 3.
inline std::vector<DefiningVector> non_is_table_vectors() {
  std::vector<std::vector<long long>> raw = {
      {1, 0, 0}, {1, 0, 2}, {1, 2, 0}, {1, 2, 2},
      {1, 1, 0}, {1, 1, 2}, {1, -1, 0}, {1, -1, 2},
  };
  std::vector<DefiningVector> out;
  out.reserve(raw.size());
  for (const auto& r : raw) out.push_back(DefiningVector::reduced(4, r));
  return out;
}

// The second Grigorchuk group: the GGS-group on T_4 with defining vector
// (1, 0, 1).
inline SelfSimilarGroup second_grigorchuk() {
  GroupDescription d = ggs_group(DefiningVector::reduced(4, {1, 0, 1})).description();
  d.name = "second-grigorchuk";
  return SelfSimilarGroup::from_description(std::move(d));
}

// Preset strings accepted by the command line: "ggs:m:e1,e2,..." and
// "second-grigorchuk". Returns nothing when `text` is not a preset name.
inline std::optional<SelfSimilarGroup> group_from_preset(std::string_view text) {
  if (text == "second-grigorchuk") return second_grigorchuk();
  if (text.rfind("ggs:", 0) != 0) return std::nullopt;
  std::string_view rest = text.substr(4);
  std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("preset: expected ggs:<degree>:<e1>,<e2>,...");
  auto parse_int = [](std::string_view s) -> long long {
    if (s.empty()) throw std::invalid_argument("preset: empty number");
    std::size_t pos = 0;
    bool neg = s[0] == '-';
    if (neg) pos = 1;
    long long v = 0;
    if (pos == s.size()) throw std::invalid_argument("preset: malformed number");
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9')
        throw std::invalid_argument("preset: malformed number '" + std::string(s) + "'");
      v = v * 10 + (s[pos] - '0');
      if (v > 1'000'000) throw std::invalid_argument("preset: number out of range");
    }
    return neg ? -v : v;
  };
  long long m = parse_int(rest.substr(0, colon));
  if (m < 2) throw std::invalid_argument("preset: degree must be at least 2");
  std::vector<long long> entries;
  std::string_view tail = rest.substr(colon + 1);
  while (!tail.empty()) {
    std::size_t comma = tail.find(',');
    entries.push_back(parse_int(tail.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    tail = tail.substr(comma + 1);
  }
  return ggs_group(DefiningVector::reduced(static_cast<std::size_t>(m), entries));
}

}  // namespace branchdim
