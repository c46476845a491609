#pragma once

// Exact comparisons against real thresholds of the form n^(p/q).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cspan/errors.hpp"

namespace cspan {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigReal = boost::multiprecision::cpp_bin_float_50;

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw ParameterError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  static Rational integer(std::int64_t v) { return {v, 1}; }

  /// Accepts "a", "a/b", or a terminating decimal "0.34".
  static Rational parse(const std::string& s) {
    auto bad = [&] { return ParameterError("not a rational number: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto digits = [](const std::string& t) {
      return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
      auto a = s.substr(0, slash);
      auto b = s.substr(slash + 1);
      bool neg = !a.empty() && a[0] == '-';
      if (neg) a.erase(0, 1);
      if (!digits(a) || !digits(b) || a.size() > 15 || b.size() > 15) throw bad();
      return {(neg ? -1 : 1) * std::stoll(a), std::stoll(b)};
    }
    std::string t = s;
    bool neg = t[0] == '-';
    if (neg) t.erase(0, 1);
    auto dot = t.find('.');
    std::string whole = dot == std::string::npos ? t : t.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits(whole) || (dot != std::string::npos && !digits(frac)) || whole.size() + frac.size() > 15)
      throw bad();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t num = std::stoll(whole + frac);
    return {neg ? -num : num, den};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  BigRational big() const { return BigRational(num, den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend std::strong_ordering operator<=>(Rational a, Rational b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
  BigInt r = 1;
  BigInt b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// Sign of (a/b) − n^e for a ≥ 0, b > 0, n ≥ 1. Exact.
inline int compare_ratio_to_power(const BigInt& a, const BigInt& b, std::uint64_t n, Rational e) {
  // (a/b)^q vs n^p  with e = p/q, q > 0.
  auto q = static_cast<std::uint64_t>(e.den);
  BigInt lhs = big_pow(a, q);
  BigInt rhs = big_pow(b, q);
  if (e.num >= 0)
    rhs *= big_pow(BigInt(n), static_cast<std::uint64_t>(e.num));
  else
    lhs *= big_pow(BigInt(n), static_cast<std::uint64_t>(-e.num));
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Sign of x − n^e.
inline int compare_to_power(const BigInt& x, std::uint64_t n, Rational e) {
  return compare_ratio_to_power(x, 1, n, e);
}

/// x ≥ n^e.
inline bool at_least_power(std::uint64_t x, std::uint64_t n, Rational e) {
  return compare_to_power(BigInt(x), n, e) >= 0;
}

/// x ≤ n^e.
inline bool at_most_power(std::uint64_t x, std::uint64_t n, Rational e) {
  return compare_to_power(BigInt(x), n, e) <= 0;
}

/// Smallest integer k ≥ 0 with k ≥ n^e.
inline std::uint64_t ceil_power(std::uint64_t n, Rational e) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  while (!at_least_power(hi, n, e)) {
    lo = hi;
    hi *= 2;
  }
  while (lo + 1 < hi) {
    auto mid = lo + (hi - lo) / 2;
    if (at_least_power(mid, n, e)) hi = mid;
    else lo = mid;
  }
  return at_least_power(lo, n, e) ? lo : hi;
}

/// Largest integer k with k ≤ n^e.
inline std::uint64_t floor_power(std::uint64_t n, Rational e) {
  auto c = ceil_power(n, e);
  return compare_to_power(BigInt(c), n, e) == 0 ? c : c - 1;
}

inline BigReal real_power(std::uint64_t n, Rational e) {
  return boost::multiprecision::pow(BigReal(n), BigReal(e.num) / BigReal(e.den));
}

/// ⌈log₂ n⌉ for n ≥ 1; 0 for n = 1.
inline std::uint32_t ceil_log2(std::uint64_t n) {
  if (n == 0) throw ParameterError("log of zero");
  std::uint32_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

/// ⌊log₂ x⌋ for a positive rational x.
inline std::int32_t floor_log2(Rational x) {
  if (x.num <= 0) throw ParameterError("log of a non-positive number");
  std::int32_t k = 0;
  auto two_pow_le = [&](std::int32_t i) {
    // 2^i ≤ num/den
    BigInt lhs = big_pow(2, static_cast<std::uint64_t>(i < 0 ? -i : i));
    return i >= 0 ? lhs * x.den <= x.num : BigInt(x.den) <= lhs * x.num;
  };
  if (two_pow_le(0)) {
    while (two_pow_le(k + 1)) ++k;
  } else {
    while (!two_pow_le(k)) --k;
  }
  return k;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

inline std::int64_t ceil(Rational x) { return ceil_div(x.num, x.den); }

}  // namespace cspan
