// Logarithms of group orders, taken in base m.
//
// When m = p^a and the order is a power of the same prime p, the logarithm is
// an exact rational e/a and all downstream arithmetic stays exact. Otherwise
// the value is a double-precision approximation and is flagged as such; exact
// and approximate values never mix silently (any operation touching an
// approximate operand yields an approximate result).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace branchdim {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

class LogValue {
public:
  LogValue() : exact_(true), q_(0), approx_(0.0) {}

  static LogValue from_rational(cpp_rational q) {
    LogValue v;
    v.exact_ = true;
    v.approx_ = static_cast<double>(q);
    v.q_ = std::move(q);
    return v;
  }

  static LogValue from_double(double d) {
    LogValue v;
    v.exact_ = false;
    v.approx_ = d;
    return v;
  }

  bool exact() const { return exact_; }

  const cpp_rational& rational() const {
    if (!exact_) throw std::logic_error("LogValue: approximate value has no exact rational");
    return q_;
  }

  double approx() const { return approx_; }

  bool is_zero() const { return exact_ ? q_.is_zero() : approx_ == 0.0; }

  friend LogValue operator+(const LogValue& a, const LogValue& b) {
    if (a.exact_ && b.exact_) return from_rational(a.q_ + b.q_);
    return from_double(a.approx_ + b.approx_);
  }

  friend LogValue operator-(const LogValue& a, const LogValue& b) {
    if (a.exact_ && b.exact_) return from_rational(a.q_ - b.q_);
    return from_double(a.approx_ - b.approx_);
  }

  // Scale by an exact rational factor.
  LogValue scaled(const cpp_rational& f) const {
    if (exact_) return from_rational(q_ * f);
    return from_double(approx_ * static_cast<double>(f));
  }

  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (b.is_zero()) throw std::domain_error("LogValue: division by zero");
    if (a.exact_ && b.exact_) return from_rational(a.q_ / b.q_);
    return from_double(a.approx_ / b.approx_);
  }

  bool operator==(const LogValue& rhs) const {
    if (exact_ && rhs.exact_) return q_ == rhs.q_;
    return approx_ == rhs.approx_;
  }

  // Exact values render as "p/q" in lowest terms ("p" when integral);
  // approximate values carry a leading "~" as their precision tag.
  std::string str() const {
    if (exact_) return q_.str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.15g", approx_);
    return buf;
  }

private:
  bool exact_;
  cpp_rational q_;
  double approx_;
};

// log base m of a group order. Exact when m is a power of a prime p and the
// order is a power of the same p; approximate (flagged) otherwise.
inline LogValue log_order(const cpp_int& order, std::size_t m) {
  if (order < 1) throw std::invalid_argument("log_order: order must be positive");
  if (m < 2) throw std::invalid_argument("log_order: base must be at least 2");
  if (order == 1) return LogValue::from_rational(0);

  // m = p^a?
  std::size_t p = 0;
  unsigned a = 0;
  {
    std::size_t rest = m;
    for (std::size_t d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        p = d;
        while (rest % d == 0) {
          rest /= d;
          ++a;
        }
        break;
      }
    }
    if (p == 0) {
      p = rest;
      a = 1;
      rest = 1;
    }
    if (rest != 1) p = 0;  // m has two distinct prime factors
  }

  if (p != 0) {
    cpp_int n = order;
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (n == 1) return LogValue::from_rational(cpp_rational(e, a));
  }

  // log2(order) from the most significant 53 bits, then rebased.
  const unsigned long bits = boost::multiprecision::msb(order);
  double mant;
  if (bits <= 52) {
    mant = static_cast<double>(order.convert_to<std::uint64_t>());
    return LogValue::from_double(std::log2(mant) / std::log2(static_cast<double>(m)));
  }
  cpp_int top = order >> (bits - 52);
  mant = static_cast<double>(top.convert_to<std::uint64_t>());
  double l2 = static_cast<double>(bits - 52) + std::log2(mant);
  return LogValue::from_double(l2 / std::log2(static_cast<double>(m)));
}

}  // namespace branchdim
