#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrmono/bigint.hpp"
#include "arrmono/error.hpp"
#include "arrmono/poly_fp.hpp"
#include "arrmono/prime_field.hpp"

namespace arrmono {

/// Dense row-major matrix over a prime field.
class MatFF {
 public:
  MatFF(PrimeField F, std::size_t rows, std::size_t cols) : F_(F), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static MatFF identity(PrimeField F, std::size_t n) {
    MatFF m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static MatFF from_ints(PrimeField F, std::size_t rows, std::size_t cols, std::span<const std::int64_t> vals) {
    if (vals.size() != rows * cols) fail(ErrorKind::InvalidArgument, "matrix entry count mismatch");
    MatFF m(F, rows, cols);
    for (std::size_t i = 0; i < vals.size(); ++i) m.a_[i] = F.from_int(vals[i]);
    return m;
  }

  const PrimeField& field() const noexcept { return F_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<std::uint32_t>& data() const noexcept { return a_; }

  MatFF transpose() const {
    MatFF t(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend MatFF operator*(const MatFF& x, const MatFF& y) {
    if (x.cols_ != y.rows_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
    MatFF r(x.F_, x.rows_, y.cols_);
    const std::uint64_t p = x.F_.modulus();
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t j = 0; j < y.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < x.cols_; ++k) {
          acc += std::uint64_t(x(i, k)) * y(k, j);
          if ((k & 15) == 15) acc %= p;
        }
        r(i, j) = static_cast<std::uint32_t>(acc % p);
      }
    }
    return r;
  }
  friend MatFF operator+(const MatFF& x, const MatFF& y) {
    MatFF r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.F_.add(x.a_[i], y.a_[i]);
    return r;
  }
  friend MatFF operator-(const MatFF& x, const MatFF& y) {
    MatFF r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.F_.sub(x.a_[i], y.a_[i]);
    return r;
  }
  MatFF scaled(std::uint32_t s) const {
    MatFF r = *this;
    for (auto& v : r.a_) v = F_.mul(v, s);
    return r;
  }
  friend bool operator==(const MatFF& x, const MatFF& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const {
    std::vector<std::uint32_t> out(rows_, 0);
    const std::uint64_t p = F_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t((*this)(i, j)) * v[j] % p;
      out[i] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

 private:
  PrimeField F_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

/// Determinant by Gaussian elimination with row-swap sign tracking.
inline std::uint32_t det_ff(const MatFF& m) {
  if (!m.square()) fail(ErrorKind::NonSquare, "det of non-square matrix");
  const auto& F = m.field();
  MatFF a = m;
  const std::size_t n = a.rows();
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, a(c, c));
    const std::uint32_t inv = F.inv(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const std::uint32_t f = F.mul(a(r, c), inv);
      for (std::size_t j = c; j < n; ++j) a(r, j) = F.sub(a(r, j), F.mul(f, a(c, j)));
    }
  }
  return det;
}

inline MatFF inverse_ff(const MatFF& m) {
  if (!m.square()) fail(ErrorKind::NonSquare, "inverse of non-square matrix");
  const auto& F = m.field();
  const std::size_t n = m.rows();
  MatFF a = m;
  MatFF inv = MatFF::identity(F, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) fail(ErrorKind::InvalidArgument, "singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    const std::uint32_t s = F.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = F.mul(a(c, j), s);
      inv(c, j) = F.mul(inv(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const std::uint32_t f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = F.sub(a(r, j), F.mul(f, a(c, j)));
        inv(r, j) = F.sub(inv(r, j), F.mul(f, inv(c, j)));
      }
    }
  }
  return inv;
}

/// det(T*I - m) via reduction to upper Hessenberg form. Uses only field
/// operations, so it is valid when dim >= p.
inline PolyFF char_poly_ff(const MatFF& m) {
  if (!m.square()) fail(ErrorKind::NonSquare, "char poly of non-square matrix");
  const auto& F = m.field();
  const std::size_t n = m.rows();
  MatFF h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const std::uint32_t inv = F.inv(h(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      const std::uint32_t u = F.mul(h(i, j), inv);
      for (std::size_t c = 0; c < n; ++c) h(i, c) = F.sub(h(i, c), F.mul(u, h(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = F.add(h(r, j + 1), F.mul(u, h(r, i)));
    }
  }
  // p_k = char poly of the leading k x k block.
  std::vector<PolyFF> p(n + 1);
  p[0] = PolyFF({1});
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t c = k - 1;
    p[k] = polyfp::mul(F, PolyFF({F.neg(h(c, c)), 1}), p[k - 1]);
    std::uint32_t t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = F.mul(t, h(c - i + 1, c - i));
      const std::uint32_t coef = F.mul(t, h(c - i, c));
      if (coef == 0) continue;
      p[k] = polyfp::sub(F, p[k], polyfp::scale(F, p[k - i - 1], coef));
    }
  }
  return p[n];
}

enum class Symmetry { Alternating, Symmetric };

inline std::string_view to_string(Symmetry s) { return s == Symmetry::Alternating ? "alternating" : "symmetric"; }

/// A finite-dimensional space with a bilinear pairing given by its Gram matrix.
class BilinearSpace {
 public:
  BilinearSpace(MatFF gram, Symmetry sym, bool allow_degenerate = false) : gram_(std::move(gram)), sym_(sym) {
    if (!gram_.square()) fail(ErrorKind::NonSquare, "Gram matrix must be square");
    const auto& F = gram_.field();
    const std::size_t n = gram_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      if (sym_ == Symmetry::Alternating && gram_(i, i) != 0)
        fail(ErrorKind::InvalidArgument, "alternating Gram matrix has nonzero diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t expect = sym_ == Symmetry::Symmetric ? gram_(j, i) : F.neg(gram_(j, i));
        if (gram_(i, j) != expect) fail(ErrorKind::InvalidArgument, "Gram matrix does not match its symmetry flag");
      }
    }
    if (!allow_degenerate && det_ff(gram_) == 0) fail(ErrorKind::InvalidArgument, "degenerate bilinear form");
  }

  /// e_1..e_g, f_1..f_g with (e_i, f_i) = 1.
  static BilinearSpace standard_symplectic(PrimeField F, std::size_t dim) {
    if (dim % 2) fail(ErrorKind::UnsupportedDim, "symplectic dimension must be even");
    MatFF g(F, dim, dim);
    const std::size_t h = dim / 2;
    for (std::size_t i = 0; i < h; ++i) {
      g(i, h + i) = 1;
      g(h + i, i) = F.neg(1);
    }
    return BilinearSpace(std::move(g), Symmetry::Alternating);
  }
  static BilinearSpace diagonal(PrimeField F, std::span<const std::int64_t> diag) {
    MatFF g(F, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = F.from_int(diag[i]);
    return BilinearSpace(std::move(g), Symmetry::Symmetric);
  }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const MatFF& gram() const noexcept { return gram_; }
  Symmetry symmetry() const noexcept { return sym_; }
  const PrimeField& field() const noexcept { return gram_.field(); }

  std::uint32_t pair(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v) const {
    const auto gv = gram_.apply(v);
    std::uint64_t acc = 0;
    const std::uint64_t p = field().modulus();
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::uint64_t(u[i]) * gv[i] % p;
    return static_cast<std::uint32_t>(acc % p);
  }

  bool preserves(const MatFF& g) const { return g.transpose() * gram_ * g == gram_; }

 private:
  MatFF gram_;
  Symmetry sym_;
};

// ---------------------------------------------------------------------------
// Integer polynomials and matrices

/// Exact integer polynomial, lowest degree first; no trailing zeros.
struct PolyZ {
  std::vector<BigInt> coeffs;

  PolyZ() = default;
  explicit PolyZ(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }
  static PolyZ from_ints(std::initializer_list<long long> c) {
    std::vector<BigInt> v;
    for (long long x : c) v.emplace_back(x);
    return PolyZ(std::move(v));
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  BigInt operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : BigInt(0); }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const PolyZ& a, const PolyZ& b) { return a.coeffs == b.coeffs; }
  friend PolyZ operator*(const PolyZ& a, const PolyZ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return PolyZ(std::move(c));
  }
  friend PolyZ operator+(const PolyZ& a, const PolyZ& b) {
    std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return PolyZ(std::move(c));
  }
  friend PolyZ operator-(const PolyZ& a, const PolyZ& b) {
    std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return PolyZ(std::move(c));
  }

  std::string str() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const BigInt& c = coeffs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      if (mag != 1 || i == 0) s += mag.str();
      if (i > 0) s += i == 1 ? "T" : "T^" + std::to_string(i);
    }
    return s;
  }
};

/// Exact division of a monic polynomial by a monic polynomial; returns false
/// when the remainder is nonzero.
inline bool divide_exact(const PolyZ& a, const PolyZ& b, PolyZ& quotient) {
  if (b.is_zero() || !b.is_monic()) fail(ErrorKind::InvalidArgument, "divisor must be monic");
  std::vector<BigInt> rem(a.coeffs);
  const int db = b.degree();
  if (a.degree() < db) {
    quotient = {};
    return a.is_zero();
  }
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    const BigInt c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs[static_cast<std::size_t>(j)];
  }
  quotient = PolyZ(std::move(q));
  for (const auto& r : rem)
    if (r != 0) return false;
  return true;
}

inline PolyFF poly_reduce_mod(const PolyZ& p, const PrimeField& F) {
  std::vector<std::uint32_t> c(p.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_u32(p.coeffs[i], F.modulus());
  return PolyFF(std::move(c));
}

/// Monic T^d - e1 T^{d-1} + ... from power sums p_1..p_d by Newton's
/// identities k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j.
inline PolyZ newton_charpoly(std::span<const BigInt> power_sums, std::size_t d) {
  if (power_sums.size() < d) fail(ErrorKind::InvalidArgument, "need at least d power sums");
  std::vector<BigInt> e(d + 1, 0);
  e[0] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    BigInt acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      BigInt term = e[k - j] * power_sums[j - 1];
      if (j % 2 == 1) acc += term;
      else acc -= term;
    }
    if (acc % static_cast<long long>(k) != 0)
      fail(ErrorKind::NonIntegralDivision, "power sums inconsistent at k = " + std::to_string(k));
    e[k] = acc / static_cast<long long>(k);
  }
  std::vector<BigInt> c(d + 1, 0);
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = (k % 2 == 0) ? e[k] : BigInt(-e[k]);
  return PolyZ(std::move(c));
}

/// Square integer matrix, row-major.
struct MatZ {
  std::size_t n = 0;
  std::vector<BigInt> a;

  MatZ() = default;
  explicit MatZ(std::size_t dim) : n(dim), a(dim * dim, 0) {}
  static MatZ identity(std::size_t dim) {
    MatZ m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }
  BigInt& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  friend MatZ operator*(const MatZ& x, const MatZ& y) {
    MatZ r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t k = 0; k < x.n; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend bool operator==(const MatZ& x, const MatZ& y) { return x.n == y.n && x.a == y.a; }
};

/// Companion matrix of a monic polynomial: subdiagonal ones and the negated
/// low coefficients in the last column.
inline MatZ companion(const PolyZ& p) {
  if (!p.is_monic() || p.degree() < 1) fail(ErrorKind::InvalidArgument, "companion needs a monic polynomial of degree >= 1");
  const std::size_t d = static_cast<std::size_t>(p.degree());
  MatZ m(d);
  for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -p.coeffs[i];
  return m;
}

/// Fraction-free (Bareiss) determinant; every division is exact.
inline BigInt bareiss_det(MatZ m) {
  const std::size_t n = m.n;
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// det(T*I - m) exactly: Bareiss determinants at T = 0..d, then Newton
/// forward differences expanded from the falling-factorial basis.
inline PolyZ int_charpoly(const MatZ& m) {
  const std::size_t d = m.n;
  std::vector<BigInt> vals(d + 1);
  for (std::size_t x = 0; x <= d; ++x) {
    MatZ t(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t(i, j) = (i == j ? BigInt(x) : BigInt(0)) - m(i, j);
    vals[x] = bareiss_det(std::move(t));
  }
  // vals[k] <- k-th forward difference at 0.
  for (std::size_t k = 1; k <= d; ++k)
    for (std::size_t i = d; i >= k; --i) vals[i] -= vals[i - 1];
  PolyZ result;
  PolyZ falling = PolyZ::from_ints({1});
  BigInt fact = 1;
  for (std::size_t k = 0; k <= d; ++k) {
    if (k > 0) {
      falling = falling * PolyZ(std::vector<BigInt>{BigInt(-static_cast<long long>(k - 1)), BigInt(1)});
      fact *= k;
    }
    if (vals[k] % fact != 0) fail(ErrorKind::NonIntegralDivision, "interpolation produced a non-integral coefficient");
    const BigInt c = vals[k] / fact;
    std::vector<BigInt> scaled(falling.coeffs);
    for (auto& x : scaled) x *= c;
    result = result + PolyZ(std::move(scaled));
  }
  return result;
}

}  // namespace arrmono
