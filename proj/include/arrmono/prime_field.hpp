#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arrmono/error.hpp"

namespace arrmono {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Residues modulo an odd prime. Elements are plain integers in [0, p); the
/// context owns the modulus so matrices can store bare words.
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime_u64(p)) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
    if (p == 2) fail(ErrorKind::EvenModulus, "characteristic 2 is not supported");
  }

  std::uint32_t modulus() const noexcept { return p_; }

  Elem from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p_ ? s - p_ : s; }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::InvalidArgument, "inverse of zero");
    return pow(a, p_ - 2);
  }

  /// Quadratic character: 0, +1 or -1.
  int legendre(Elem a) const {
    if (a == 0) return 0;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
  }
  bool is_square(Elem a) const { return legendre(a) >= 0; }

  /// Smallest s in [1, p) with s^2 = a, or 0 when a is zero / a nonsquare.
  Elem smallest_sqrt(Elem a) const {
    for (Elem s = 1; s < p_; ++s)
      if (mul(s, s) == a) return s;
    return 0;
  }

  /// Signed representative in (-p/2, p/2]; used for ±1 decoding.
  std::int64_t centered(Elem a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

inline PrimeField build_prime_field(std::int64_t p) {
  if (p < 2 || p > 0xFFFFFFFFLL) fail(ErrorKind::CompositeModulus, std::to_string(p) + " is not a usable prime");
  return PrimeField(static_cast<std::uint32_t>(p));
}

}  // namespace arrmono
