// Array-form permutations on {1..N}.
//
// Points are stored 0-based internally; all text I/O (cycle notation) is
// 1-based. Products compose left to right: (a * b) means "apply a, then b",
// matching the right-action convention v^(ab) = (v^a)^b used throughout.

#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace branchdim {

class Permutation {
public:
  using point = std::uint32_t;

  Permutation() = default;

  // Identity on n points.
  explicit Permutation(std::size_t n) : img_(n) {
    std::iota(img_.begin(), img_.end(), point{0});
  }

  // From an image table (0-based). Throws if not a bijection.
  explicit Permutation(std::vector<point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (point p : img_) {
      if (p >= img_.size() || seen[p])
        throw std::invalid_argument("Permutation: image table is not a bijection");
      seen[p] = true;
    }
  }

  std::size_t degree() const { return img_.size(); }

  point operator[](point p) const { return img_[p]; }

  const std::vector<point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // First, then rhs.
  Permutation operator*(const Permutation& rhs) const {
    check_degree(rhs);
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = rhs.img_[img_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<point>(i);
    return r;
  }

  Permutation power(long long e) const;

  bool operator==(const Permutation& rhs) const = default;

  // Smallest moved point, or degree() if identity.
  std::size_t first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return img_.size();
  }

  // Cycle notation, 1-based: "(1 2 3 4)(5 6)"; identity renders as "()".
  std::string to_cycles() const;

  // Parse 1-based cycle notation on a fixed number of points.
  // Accepts "()" and the empty string for the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

private:
  void check_degree(const Permutation& rhs) const {
    if (img_.size() != rhs.img_.size())
      throw std::invalid_argument("Permutation: degree mismatch");
  }

  std::vector<point> img_;
};

inline Permutation Permutation::power(long long e) const {
  Permutation base = e >= 0 ? *this : inverse();
  unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e)
                                : 0ULL - static_cast<unsigned long long>(e);
  Permutation acc(degree());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

inline std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> done(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (done[i] || img_[i] == i) continue;
    out += '(';
    point p = static_cast<point>(i);
    bool first = true;
    do {
      done[p] = true;
      if (!first) out += ' ';
      out += std::to_string(p + 1);
      first = false;
      p = img_[p];
    } while (p != i);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<point> img(degree);
  std::iota(img.begin(), img.end(), point{0});
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("cycle notation: expected '('");
    ++i;
    std::vector<point> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("cycle notation: expected point number");
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<unsigned long>(text[i++] - '0');
      if (v < 1 || v > degree)
        throw std::invalid_argument("cycle notation: point out of range 1.." +
                                    std::to_string(degree));
      cyc.push_back(static_cast<point>(v - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
    }
    if (i == text.size())
      throw std::invalid_argument("cycle notation: unterminated cycle");
    ++i;  // ')'
    for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
      if (img[cyc[k]] != cyc[k])
        throw std::invalid_argument("cycle notation: repeated point");
      img[cyc[k]] = cyc[k + 1];
    }
    if (cyc.size() >= 2) {
      if (img[cyc.back()] != cyc.back())
        throw std::invalid_argument("cycle notation: repeated point");
      img[cyc.back()] = cyc.front();
    }
    skip_ws();
  }
  return Permutation(std::move(img));
}

}  // namespace branchdim
