#pragma once

// Exact integer helpers shared by every module. All routines are generic over
// `std::int64_t` (fast paths) and `BigInt` (arbitrary precision).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mti {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept Integer = std::same_as<T, std::int64_t> || std::same_as<T, BigInt>;

template <Integer Int>
[[nodiscard]] Int abs_value(const Int& x) {
  return x < 0 ? Int(-x) : x;
}

template <Integer Int>
[[nodiscard]] int sign_of(const Int& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

/// Nonnegative gcd; gcd(0, 0) == 0.
template <Integer Int>
[[nodiscard]] Int gcd(Int a, Int b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Division rounding toward negative infinity.
template <Integer Int>
[[nodiscard]] Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of `a` in [0, |m|).
template <Integer Int>
[[nodiscard]] Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs_value(m);
  return r;
}

template <Integer Int>
[[nodiscard]] std::int64_t to_i64(const Int& x) {
  if constexpr (std::same_as<Int, std::int64_t>) {
    return x;
  } else {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return static_cast<std::int64_t>(x);
  }
}

/// Residue of `a` modulo a positive 64-bit modulus, in [0, m).
template <Integer Int>
[[nodiscard]] std::int64_t residue(const Int& a, std::int64_t m) {
  if constexpr (std::same_as<Int, std::int64_t>) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
  } else {
    BigInt r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
  }
}

/// floor(sqrt(n)) for n >= 0.
template <Integer Int>
[[nodiscard]] Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  if constexpr (std::same_as<Int, std::int64_t>) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
  } else {
    return boost::multiprecision::sqrt(n);
  }
}

template <Integer Int>
[[nodiscard]] bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

template <Integer To, Integer From>
[[nodiscard]] To convert(const From& x) {
  if constexpr (std::same_as<To, From>) {
    return x;
  } else if constexpr (std::same_as<To, BigInt>) {
    return BigInt(x);
  } else {
    return to_i64(x);
  }
}

/// Parses an optionally signed decimal integer; rejects anything else.
[[nodiscard]] inline BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  BigInt value(std::string(text.substr(pos)));
  return (text[0] == '-') ? BigInt(-value) : value;
}

template <Integer Int>
[[nodiscard]] std::string to_string(const Int& x) {
  if constexpr (std::same_as<Int, std::int64_t>) {
    return std::to_string(x);
  } else {
    return x.str();
  }
}

}  // namespace mti
