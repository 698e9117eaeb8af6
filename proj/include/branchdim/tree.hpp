// Automorphisms of the m-adic tree presented by wreath recursion.
//
// A group is given by finitely many named generators; each generator carries
// a root permutation (its action on the m first-level subtrees) and m section
// words describing its restriction to each subtree. Elements are handled as
// words in the generators; no normal form is attempted beyond cancelling
// adjacent powers of the same generator.
//
// Conventions, shared by every module built on top:
//   * actions are written on the right, products act "first left factor,
//     then right factor";
//   * first-level vertices are numbered 1..m; a depth-n vertex is the digit
//     string (i_1,...,i_n) and maps to index 1 + sum_j (i_j - 1) m^{n-j},
//     i.e. lexicographic order with the first digit most significant.

#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "branchdim/permutation.hpp"
#include "branchdim/stabilizer_chain.hpp"

namespace branchdim {

// Word in the generators of a self-similar group.
struct TreeWord {
  struct Letter {
    std::uint32_t gen;
    long long exp;
    bool operator==(const Letter&) const = default;
  };

  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  bool operator==(const TreeWord&) const = default;

  // Appends gen^exp, merging with the trailing letter and dropping the pair
  // when the exponents cancel.
  void append(std::uint32_t gen, long long exp) {
    if (exp == 0) return;
    if (!letters.empty() && letters.back().gen == gen) {
      letters.back().exp += exp;
      if (letters.back().exp == 0) letters.pop_back();
      return;
    }
    letters.push_back({gen, exp});
  }

  void append(const TreeWord& w) {
    for (const Letter& l : w.letters) append(l.gen, l.exp);
  }

  TreeWord operator*(const TreeWord& rhs) const {
    TreeWord r = *this;
    r.append(rhs);
    return r;
  }

  TreeWord inverse() const {
    TreeWord r;
    for (std::size_t i = letters.size(); i-- > 0;)
      r.letters.push_back({letters[i].gen, -letters[i].exp});
    return r;
  }
};

struct GeneratorRecursion {
  Permutation root;                // permutation of the m subtrees
  std::vector<TreeWord> sections;  // one word per subtree
};

// Raw, unvalidated description of a group; what the definition-file parser
// and the catalog constructors produce.
struct GroupDescription {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> h_generators;
  std::vector<std::string> generator_names;
  std::vector<GeneratorRecursion> recursions;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool valid() const { return issues.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto& i : issues) {
      if (!s.empty()) s += "; ";
      s += i;
    }
    return s.empty() ? "valid" : s;
  }
};

ValidationReport validate(const GroupDescription& d);

// Validated, immutable self-similar group.
class SelfSimilarGroup {
public:
  static SelfSimilarGroup from_description(GroupDescription d) {
    ValidationReport r = validate(d);
    if (!r.valid())
      throw std::invalid_argument("invalid group description: " + r.to_string());
    return SelfSimilarGroup(std::move(d));
  }

  const std::string& name() const { return desc_.name; }
  std::size_t degree() const { return desc_.degree; }
  const std::vector<Permutation>& h_generators() const { return desc_.h_generators; }
  std::size_t generator_count() const { return desc_.generator_names.size(); }
  const std::string& generator_name(std::uint32_t i) const { return desc_.generator_names[i]; }
  const GeneratorRecursion& recursion(std::uint32_t i) const { return desc_.recursions[i]; }
  const GroupDescription& description() const { return desc_; }

  std::optional<std::uint32_t> find_generator(std::string_view name) const {
    for (std::uint32_t i = 0; i < desc_.generator_names.size(); ++i)
      if (desc_.generator_names[i] == name) return i;
    return std::nullopt;
  }

private:
  explicit SelfSimilarGroup(GroupDescription d) : desc_(std::move(d)) {}
  GroupDescription desc_;
};

// --- word text ---

// Grammar: word := "1" | factor ("*" factor)* ; factor := name ("^" integer)?
inline TreeWord parse_word(const SelfSimilarGroup& g, std::string_view text) {
  TreeWord w;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i == text.size()) throw std::invalid_argument("word: empty text (use \"1\" for the identity)");
  bool expect_factor = true;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (!expect_factor) {
      if (text[i] != '*') throw std::invalid_argument("word: expected '*' between factors");
      ++i;
      skip_ws();
    }
    expect_factor = false;
    if (i < text.size() && text[i] == '1') {
      ++i;
      continue;  // identity factor
    }
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    if (i == start) throw std::invalid_argument("word: expected generator name");
    std::string name(text.substr(start, i - start));
    auto gi = g.find_generator(name);
    if (!gi) throw std::invalid_argument("word: unknown generator '" + name + "'");
    long long exp = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("word: expected integer exponent after '^'");
      long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i++] - '0');
        if (v > (1LL << 40)) throw std::invalid_argument("word: exponent too large");
      }
      exp = neg ? -v : v;
    }
    w.append(*gi, exp);
  }
  return w;
}

inline std::string word_to_string(const SelfSimilarGroup& g, const TreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += "*";
    s += g.generator_name(l.gen);
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

// --- vertices ---

// Parses a vertex as a digit string ("142", digits 1..m) or a separated list
// ("1,4,2" or "1 4 2", needed when m > 9). Returns 0-based digits.
inline std::vector<std::uint32_t> parse_vertex(const SelfSimilarGroup& g, std::string_view text) {
  std::vector<std::uint32_t> digits;
  bool separated = text.find_first_of(", ") != std::string_view::npos;
  if (separated) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
      if (i == text.size()) break;
      unsigned long v = 0;
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("vertex: expected digit");
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<unsigned long>(text[i++] - '0');
      if (v < 1 || v > g.degree())
        throw std::invalid_argument("vertex: digit out of range 1.." + std::to_string(g.degree()));
      digits.push_back(static_cast<std::uint32_t>(v - 1));
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("vertex: expected digit");
      unsigned v = static_cast<unsigned>(c - '0');
      if (v < 1 || v > g.degree())
        throw std::invalid_argument("vertex: digit out of range 1.." + std::to_string(g.degree()));
      digits.push_back(v - 1);
    }
  }
  if (digits.empty()) throw std::invalid_argument("vertex: empty");
  return digits;
}

// --- actions ---

inline void check_word(const SelfSimilarGroup& g, const TreeWord& w) {
  for (const auto& l : w.letters)
    if (l.gen >= g.generator_count())
      throw std::invalid_argument("word: unknown generator id " + std::to_string(l.gen));
}

// Action of the word on the first level.
inline Permutation root_action(const SelfSimilarGroup& g, const TreeWord& w) {
  check_word(g, w);
  Permutation p(g.degree());
  for (const auto& l : w.letters) p = p * g.recursion(l.gen).root.power(l.exp);
  return p;
}

// Section of the word at one first-level subtree (0-based digit).
inline TreeWord section_at_digit(const SelfSimilarGroup& g, const TreeWord& w, std::uint32_t digit) {
  check_word(g, w);
  if (digit >= g.degree()) throw std::invalid_argument("section: digit out of range");
  TreeWord out;
  std::uint32_t cur = digit;
  for (const auto& l : w.letters) {
    const GeneratorRecursion& rec = g.recursion(l.gen);
    if (l.exp > 0) {
      for (long long k = 0; k < l.exp; ++k) {
        out.append(rec.sections[cur]);
        cur = rec.root[cur];
      }
    } else {
      Permutation root_inv = rec.root.inverse();
      for (long long k = 0; k < -l.exp; ++k) {
        cur = root_inv[cur];
        out.append(rec.sections[cur].inverse());
      }
    }
  }
  return out;
}

// Section at an arbitrary vertex (0-based digits, outermost first), by the
// cocycle rule f|_{vu} = (f|_v)|_u.
inline TreeWord section(const SelfSimilarGroup& g, const TreeWord& w,
                        const std::vector<std::uint32_t>& vertex) {
  if (vertex.empty()) throw std::invalid_argument("section: empty vertex");
  TreeWord cur = w;
  for (std::uint32_t d : vertex) cur = section_at_digit(g, cur, d);
  return cur;
}

inline TreeWord section(const SelfSimilarGroup& g, const TreeWord& w, std::string_view vertex) {
  return section(g, w, parse_vertex(g, vertex));
}

inline constexpr std::size_t kDefaultDegreeCap = 1'000'000;

struct degree_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// m^n, guarded by the configured cap.
inline std::size_t level_size(std::size_t m, unsigned n, std::size_t cap = kDefaultDegreeCap) {
  std::size_t s = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (s > cap / m)
      throw degree_cap_error("level size " + std::to_string(m) + "^" + std::to_string(n) +
                             " exceeds the degree cap " + std::to_string(cap));
    s *= m;
  }
  return s;
}

// Level-k permutations of every generator for k = 1..n, built bottom-up
// through the recursion: the level-k action of a generator sends (d, u) to
// (d^root, u^{section_d}) with the section evaluated at level k-1.
inline std::vector<std::vector<Permutation>> level_action_generators_upto(
    const SelfSimilarGroup& g, unsigned n, std::size_t cap = kDefaultDegreeCap) {
  if (n < 1) throw std::invalid_argument("level_action: level must be >= 1");
  const std::size_t m = g.degree();
  level_size(m, n, cap);

  std::vector<std::vector<Permutation>> out;
  out.reserve(n);
  out.emplace_back();
  for (std::uint32_t i = 0; i < g.generator_count(); ++i)
    out.back().push_back(g.recursion(i).root);

  auto eval_word = [](const std::vector<Permutation>& at, const TreeWord& w, std::size_t deg) {
    Permutation p(deg);
    for (const auto& l : w.letters) p = p * at[l.gen].power(l.exp);
    return p;
  };

  std::size_t block = 1;
  for (unsigned level = 2; level <= n; ++level) {
    block *= m;  // m^{level-1}
    const std::vector<Permutation>& atoms = out.back();
    std::vector<Permutation> next;
    next.reserve(atoms.size());
    for (std::uint32_t gi = 0; gi < g.generator_count(); ++gi) {
      const GeneratorRecursion& rec = g.recursion(gi);
      std::vector<Permutation::point> img(m * block);
      for (std::uint32_t d = 0; d < m; ++d) {
        Permutation sec = eval_word(atoms, rec.sections[d], block);
        const std::size_t src = static_cast<std::size_t>(d) * block;
        const std::size_t dst = static_cast<std::size_t>(rec.root[d]) * block;
        for (std::size_t u = 0; u < block; ++u)
          img[src + u] = static_cast<Permutation::point>(dst + sec[static_cast<Permutation::point>(u)]);
      }
      next.push_back(Permutation(std::move(img)));
    }
    out.push_back(std::move(next));
  }
  return out;
}

inline std::vector<Permutation> level_action_generators(const SelfSimilarGroup& g, unsigned n,
                                                        std::size_t cap = kDefaultDegreeCap) {
  return level_action_generators_upto(g, n, cap).back();
}

// Action of a word on the n-th level of the tree.
inline Permutation level_action(const SelfSimilarGroup& g, const TreeWord& w, unsigned n,
                                std::size_t cap = kDefaultDegreeCap) {
  check_word(g, w);
  std::vector<Permutation> atoms = level_action_generators(g, n, cap);
  const std::size_t deg = level_size(g.degree(), n, cap);
  Permutation p(deg);
  for (const auto& l : w.letters) p = p * atoms[l.gen].power(l.exp);
  return p;
}

// --- validation ---

inline ValidationReport validate(const GroupDescription& d) {
  ValidationReport r;
  if (d.degree < 2) {
    r.issues.push_back("degree must be at least 2");
    return r;
  }
  if (d.h_generators.empty()) {
    r.issues.push_back("no generators given for the local-action group H");
    return r;
  }
  bool h_ok = true;
  for (const Permutation& h : d.h_generators) {
    if (h.degree() != d.degree) {
      r.issues.push_back("H generator degree differs from the tree degree");
      h_ok = false;
    }
  }
  if (d.generator_names.size() != d.recursions.size()) {
    r.issues.push_back("generator name/recursion count mismatch");
    return r;
  }
  for (std::size_t i = 0; i < d.generator_names.size(); ++i)
    for (std::size_t j = i + 1; j < d.generator_names.size(); ++j)
      if (d.generator_names[i] == d.generator_names[j])
        r.issues.push_back("duplicate generator name '" + d.generator_names[i] + "'");

  std::optional<StabilizerChain> h_chain;
  if (h_ok) {
    h_chain = StabilizerChain::build(d.degree, d.h_generators);
    if (h_chain->order() < 2) r.issues.push_back("local-action group H is trivial");
  }

  for (std::size_t i = 0; i < d.recursions.size(); ++i) {
    const GeneratorRecursion& rec = d.recursions[i];
    const std::string& nm = d.generator_names[i];
    if (rec.root.degree() != d.degree) {
      r.issues.push_back("generator '" + nm + "': root permutation degree mismatch");
      continue;
    }
    if (h_chain && !h_chain->contains(rec.root))
      r.issues.push_back("generator '" + nm + "': root action outside H");
    if (rec.sections.size() != d.degree) {
      r.issues.push_back("generator '" + nm + "': expected " + std::to_string(d.degree) +
                         " sections, got " + std::to_string(rec.sections.size()));
      continue;
    }
    for (std::size_t s = 0; s < rec.sections.size(); ++s) {
      for (const auto& l : rec.sections[s].letters) {
        if (l.gen >= d.generator_names.size())
          r.issues.push_back("generator '" + nm + "': section " + std::to_string(s + 1) +
                             " references an undeclared generator");
        if (l.exp == 0)
          r.issues.push_back("generator '" + nm + "': section " + std::to_string(s + 1) +
                             " contains a zero exponent");
      }
    }
  }
  return r;
}

}  // namespace branchdim
