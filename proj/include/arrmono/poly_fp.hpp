#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arrmono/prime_field.hpp"

namespace arrmono {

/// Dense univariate polynomial over F_p, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the last coefficient is nonzero.
struct PolyFF {
  std::vector<std::uint32_t> coeffs;

  PolyFF() = default;
  explicit PolyFF(std::vector<std::uint32_t> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::uint32_t lead() const { return coeffs.empty() ? 0 : coeffs.back(); }
  std::uint32_t operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }

  friend bool operator==(const PolyFF& a, const PolyFF& b) { return a.coeffs == b.coeffs; }
  friend bool operator<(const PolyFF& a, const PolyFF& b) {
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
    return std::lexicographical_compare(a.coeffs.rbegin(), a.coeffs.rend(), b.coeffs.rbegin(), b.coeffs.rend());
  }
};

namespace polyfp {

inline PolyFF add(const PrimeField& F, const PolyFF& a, const PolyFF& b) {
  std::vector<std::uint32_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a[i], b[i]);
  return PolyFF(std::move(c));
}

inline PolyFF sub(const PrimeField& F, const PolyFF& a, const PolyFF& b) {
  std::vector<std::uint32_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a[i], b[i]);
  return PolyFF(std::move(c));
}

inline PolyFF mul(const PrimeField& F, const PolyFF& a, const PolyFF& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint64_t> acc(a.coeffs.size() + b.coeffs.size() - 1, 0);
  const std::uint64_t p = F.modulus();
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a.coeffs[i]) * b.coeffs[j]) % p;
  }
  std::vector<std::uint32_t> c(acc.begin(), acc.end());
  return PolyFF(std::move(c));
}

inline PolyFF scale(const PrimeField& F, const PolyFF& a, std::uint32_t s) {
  std::vector<std::uint32_t> c(a.coeffs);
  for (auto& x : c) x = F.mul(x, s);
  return PolyFF(std::move(c));
}

/// Quotient and remainder; divisor must be nonzero.
inline void divmod(const PrimeField& F, const PolyFF& a, const PolyFF& b, PolyFF& q, PolyFF& r) {
  if (b.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  std::vector<std::uint32_t> rem(a.coeffs);
  const int db = b.degree();
  const std::uint32_t inv_lead = F.inv(b.lead());
  std::vector<std::uint32_t> quo(a.degree() >= db ? a.degree() - db + 1 : 0, 0);
  for (int i = a.degree(); i >= db; --i) {
    const std::uint32_t c = F.mul(rem[i], inv_lead);
    if (c == 0) continue;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.coeffs[j]));
  }
  q = PolyFF(std::move(quo));
  r = PolyFF(std::move(rem));
}

inline PolyFF mod(const PrimeField& F, const PolyFF& a, const PolyFF& b) {
  PolyFF q, r;
  divmod(F, a, b, q, r);
  return r;
}

inline PolyFF monic(const PrimeField& F, const PolyFF& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

inline PolyFF gcd(const PrimeField& F, PolyFF a, PolyFF b) {
  while (!b.is_zero()) {
    PolyFF r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline PolyFF mulmod(const PrimeField& F, const PolyFF& a, const PolyFF& b, const PolyFF& m) {
  return mod(F, mul(F, a, b), m);
}

inline PolyFF powmod(const PrimeField& F, PolyFF base, std::uint64_t e, const PolyFF& m) {
  PolyFF r({1});
  base = mod(F, base, m);
  while (e) {
    if (e & 1) r = mulmod(F, r, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return mod(F, r, m);
}

inline PolyFF derivative(const PrimeField& F, const PolyFF& a) {
  if (a.coeffs.size() <= 1) return {};
  std::vector<std::uint32_t> c(a.coeffs.size() - 1);
  for (std::size_t i = 1; i < a.coeffs.size(); ++i) c[i - 1] = F.mul(a.coeffs[i], F.from_int(static_cast<std::int64_t>(i)));
  return PolyFF(std::move(c));
}

/// Irreducibility of a polynomial of degree k >= 1: gcd(x^{p^j} - x, f) = 1
/// for every j <= k/2.
inline bool is_irreducible(const PrimeField& F, const PolyFF& f) {
  const int k = f.degree();
  if (k < 1) return false;
  if (k == 1) return true;
  const PolyFF x({0, 1});
  PolyFF xp = x;
  for (int j = 1; j <= k / 2; ++j) {
    xp = powmod(F, xp, F.modulus(), f);
    if (gcd(F, f, sub(F, xp, x)).degree() != 0) return false;
  }
  return true;
}

/// Distinct-degree factorization of a squarefree polynomial: returns the
/// degrees of the irreducible factors (ascending, with multiplicity).
inline std::vector<int> factor_degree_pattern(const PrimeField& F, PolyFF f) {
  std::vector<int> degs;
  f = monic(F, f);
  const PolyFF x({0, 1});
  PolyFF xp = x;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    xp = powmod(F, xp, F.modulus(), f);
    PolyFF g = gcd(F, f, sub(F, xp, x));
    if (g.degree() > 0) {
      for (int i = 0; i < g.degree() / d; ++i) degs.push_back(d);
      PolyFF q, r;
      divmod(F, f, g, q, r);
      f = q;
      xp = mod(F, xp, f);
    }
  }
  if (f.degree() > 0) degs.push_back(f.degree());
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace polyfp
}  // namespace arrmono
