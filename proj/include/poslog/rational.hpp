#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poslog {

namespace detail {
// 128-bit intermediates keep cross multiplications exact for any pair of
// 64-bit denominators.
__extension__ typedef __int128 wide_int;
}  // namespace detail

/// Exact rational arithmetic for certainty and possibility degrees.
///
/// Degrees live in [0, 1] and every comparison in the calculus is exact;
/// in particular the combination guard "alpha + beta > 1" is a strict
/// inequality that must never be decided by floating point.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static Rational integer(long long value) { return Rational(value, 1); }

  /// Parses a non-negative decimal literal ("1", "0.35", "0.123456789").
  /// Returns nullopt on anything else; the caller owns range checks.
  static std::optional<Rational> parse_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    long long num = 0;
    long long den = 1;
    std::size_t i = 0;
    if (!is_digit(text[i])) return std::nullopt;
    while (i < text.size() && is_digit(text[i])) {
      if (num > 922337203685477580LL) return std::nullopt;
      num = num * 10 + (text[i] - '0');
      ++i;
    }
    if (i < text.size()) {
      if (text[i] != '.') return std::nullopt;
      ++i;
      if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
      while (i < text.size() && is_digit(text[i])) {
        if (num > 922337203685477580LL || den > 922337203685477580LL) return std::nullopt;
        num = num * 10 + (text[i] - '0');
        den *= 10;
        ++i;
      }
    }
    if (i != text.size()) return std::nullopt;
    return Rational(num, den);
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  /// 1 - x.
  Rational complement() const { return Rational(den_ - num_, den_); }

  /// Exact test for a + b > 1.
  static bool sum_exceeds_one(const Rational& a, const Rational& b) {
    detail::wide_int lhs =
        static_cast<detail::wide_int>(a.num_) * b.den_ + static_cast<detail::wide_int>(b.num_) * a.den_;
    detail::wide_int rhs = static_cast<detail::wide_int>(a.den_) * b.den_;
    return lhs > rhs;
  }

  std::strong_ordering operator<=>(const Rational& o) const {
    detail::wide_int lhs = static_cast<detail::wide_int>(num_) * o.den_;
    detail::wide_int rhs = static_cast<detail::wide_int>(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Shortest exact decimal when the reduced denominator is of the form
  /// 2^a * 5^b, otherwise "num/den".
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    long long rest = den_;
    int twos = 0;
    int fives = 0;
    while (rest % 2 == 0) {
      rest /= 2;
      ++twos;
    }
    while (rest % 5 == 0) {
      rest /= 5;
      ++fives;
    }
    if (rest != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int digits = twos > fives ? twos : fives;
    detail::wide_int scaled = num_;
    for (int k = 0; k < digits; ++k) scaled *= 10;
    scaled /= den_;
    std::string frac(static_cast<std::size_t>(digits), '0');
    for (int k = digits - 1; k >= 0; --k) {
      frac[static_cast<std::size_t>(k)] = static_cast<char>('0' + static_cast<int>(scaled % 10));
      scaled /= 10;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string head = std::to_string(static_cast<long long>(scaled));
    return frac.empty() ? head : head + "." + frac;
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  long long num_ = 0;
  long long den_ = 1;
};

inline const Rational& rational_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace poslog
