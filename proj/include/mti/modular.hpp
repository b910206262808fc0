#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mti {

[[nodiscard]] constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

[[nodiscard]] constexpr std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

/// a^e mod m for a in [0, m), e >= 0.
[[nodiscard]] constexpr std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m) {
  std::int64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

/// Inverse of a nonzero residue modulo a prime (Fermat).
[[nodiscard]] constexpr std::int64_t invmod(std::int64_t a, std::int64_t p) {
  return powmod(a, p - 2, p);
}

/// Legendre symbol (a/p) for an odd prime p via Euler's criterion; a in [0, p).
[[nodiscard]] constexpr int legendre(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace mti
