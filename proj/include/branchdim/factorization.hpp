// Integer factorization: trial division up to 10^6, then Pollard's rho
// (Brent's variant) with Miller-Rabin primality testing. The Miller-Rabin
// base set {2,...,37} is deterministic below 3.3 * 10^24; past that the test
// is a strong probable-prime check and the result says so. The rho step
// budget is configurable and exhaustion raises an error rather than
// returning a wrong answer.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace branchdim {

using boost::multiprecision::cpp_int;

struct factorization_timeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultRhoBudget = 50'000'000;

namespace detail {

// Deterministic witness set below 3,317,044,064,679,887,385,961,981.
inline const cpp_int kMillerRabinBound{"3317044064679887385961981"};

inline bool miller_rabin(const cpp_int& n, const cpp_int& a) {
  cpp_int d = n - 1;
  unsigned long r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  cpp_int x = boost::multiprecision::powm(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

// Primality; sets *probable to true when the answer relies on a strong
// probable-prime test rather than a deterministic witness set.
inline bool is_prime(const cpp_int& n, bool* probable = nullptr) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
    if (!detail::miller_rabin(n, a)) return false;
  if (n >= detail::kMillerRabinBound && probable) *probable = true;
  return true;
}

struct Factorization {
  std::vector<cpp_int> primes;       // ascending, with multiplicity
  bool used_probable_prime = false;  // primality not fully deterministic
};

namespace detail {

// One Brent rho round with polynomial x^2 + c; returns a nontrivial factor
// or 0 when the round degenerates. Decrements *budget as it steps.
inline cpp_int rho_round(const cpp_int& n, unsigned c, std::uint64_t* budget) {
  cpp_int y = 2, r = 1, q = 1, g = 1, x, ys;
  const unsigned batch = 128;
  while (g == 1) {
    x = y;
    for (cpp_int i = 0; i < r; ++i) y = (y * y + c) % n;
    cpp_int k = 0;
    while (k < r && g == 1) {
      ys = y;
      cpp_int lim = std::min(cpp_int(batch), r - k);
      for (cpp_int i = 0; i < lim; ++i) {
        if (*budget == 0) throw factorization_timeout("factorization: rho budget exhausted");
        --*budget;
        y = (y * y + c) % n;
        cpp_int diff = x > y ? x - y : y - x;
        q = (q * diff) % n;
      }
      g = boost::multiprecision::gcd(q, n);
      k += batch;
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      if (*budget == 0) throw factorization_timeout("factorization: rho budget exhausted");
      --*budget;
      ys = (ys * ys + c) % n;
      cpp_int diff = x > ys ? x - ys : ys - x;
      g = boost::multiprecision::gcd(diff, n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

inline void factor_into(cpp_int n, std::vector<cpp_int>& out, bool* probable,
                        std::uint64_t* budget) {
  if (n == 1) return;
  if (is_prime(n, probable)) {
    out.push_back(n);
    return;
  }
  cpp_int d = 0;
  for (unsigned c = 1; d == 0; ++c) d = rho_round(n, c, budget);
  factor_into(d, out, probable, budget);
  factor_into(n / d, out, probable, budget);
}

}  // namespace detail

inline Factorization factorize(cpp_int n, std::uint64_t rho_budget = kDefaultRhoBudget) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
  Factorization f;
  for (unsigned p : {2u, 3u, 5u}) {
    while (n % p == 0) {
      f.primes.push_back(p);
      n /= p;
    }
  }
  for (std::uint64_t d = 7; d <= 1'000'000 && cpp_int(d) * d <= n; d += 6) {
    for (std::uint64_t t : {d, d + 4}) {
      while (n % t == 0) {
        f.primes.push_back(t);
        n /= t;
      }
    }
  }
  if (n > 1) detail::factor_into(n, f.primes, &f.used_probable_prime, &rho_budget);
  std::sort(f.primes.begin(), f.primes.end());
  return f;
}

// Number of prime factors counted with multiplicity; omega(1) = 0.
inline unsigned omega(const cpp_int& n, std::uint64_t rho_budget = kDefaultRhoBudget) {
  return static_cast<unsigned>(factorize(n, rho_budget).primes.size());
}

}  // namespace branchdim
