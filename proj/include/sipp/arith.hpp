#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace sipp {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Largest power of p dividing n (n > 0).
constexpr std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

constexpr bool is_power_of(std::uint64_t n, std::uint64_t p) { return n >= 1 && p_part(n, p) == n; }

// (p, e) with q = p^e, or nothing when q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::pair{p, e};
}

}  // namespace sipp
