#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "arrmono/bigint.hpp"
#include "arrmono/classical_groups.hpp"
#include "arrmono/error.hpp"
#include "arrmono/linalg.hpp"

namespace arrmono {

/// Lexicographically ordered n-subsets of {0..N-1}: the basis
/// e_{i1} ^ ... ^ e_{in} (i1 < ... < in) of the n-th exterior power.
class WedgeBasisIndex {
 public:
  WedgeBasisIndex(std::size_t N, std::size_t n) : N_(N), n_(n) {
    if (n < 1 || n > N || N > 32) fail(ErrorKind::BadDegree, "wedge degree must satisfy 1 <= n <= dim <= 32");
    std::vector<std::size_t> cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (auto c : cur) mask |= 1u << c;
      pos_.emplace(mask, subsets_.size());
      subsets_.push_back(cur);
      std::size_t i = n;
      while (i > 0 && cur[i - 1] == N - n + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < n; ++j) cur[j] = cur[j - 1] + 1;
    }
  }

  std::size_t size() const { return subsets_.size(); }
  std::size_t degree() const { return n_; }
  std::size_t ambient() const { return N_; }
  const std::vector<std::size_t>& subset(std::size_t i) const { return subsets_[i]; }
  std::size_t position(const std::vector<std::size_t>& sorted_subset) const {
    std::uint32_t mask = 0;
    for (auto c : sorted_subset) mask |= 1u << c;
    return pos_.at(mask);
  }

 private:
  std::size_t N_, n_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::unordered_map<std::uint32_t, std::size_t> pos_;
};

/// Matrix of the n-th exterior power: entry (S, T) is the S x T minor.
inline MatFF wedge_matrix(const MatFF& g, std::size_t n) {
  if (!g.square()) fail(ErrorKind::NonSquare, "wedge of non-square matrix");
  const WedgeBasisIndex idx(g.rows(), n);
  const auto& F = g.field();
  MatFF out(F, idx.size(), idx.size());
  MatFF minor(F, n, n);
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const auto& S = idx.subset(s);
      const auto& T = idx.subset(t);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) minor(i, j) = g(S[i], T[j]);
      out(s, t) = det_ff(minor);
    }
  return out;
}

inline MatZ wedge_matrix(const MatZ& g, std::size_t n) {
  const WedgeBasisIndex idx(g.n, n);
  MatZ out(idx.size());
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (std::size_t t = 0; t < idx.size(); ++t) {
      MatZ minor(n);
      const auto& S = idx.subset(s);
      const auto& T = idx.subset(t);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) minor(i, j) = g(S[i], T[j]);
      out(s, t) = bareiss_det(std::move(minor));
    }
  return out;
}

/// (u1^...^un, v1^...^vn) = det((u_i, v_j)); the Gram matrix is the wedge of
/// the source Gram matrix. Alternating for n odd, symmetric for n even.
inline BilinearSpace induced_wedge_form(const IsometrySpace& space, std::size_t n) {
  if (space.symmetry() != Symmetry::Alternating) fail(ErrorKind::InvalidArgument, "source form must be alternating");
  return BilinearSpace(wedge_matrix(space.gram(), n), n % 2 ? Symmetry::Alternating : Symmetry::Symmetric);
}

/// Monic polynomial whose roots are the n-fold products of distinct roots of p.
inline PolyZ wedge_char_poly(const PolyZ& p, std::size_t n) {
  if (!p.is_monic() || p.degree() < static_cast<int>(n)) fail(ErrorKind::BadDegree, "need a monic polynomial of degree >= n");
  return int_charpoly(wedge_matrix(companion(p), n));
}

/// True iff wedge^n g != 1 and (wedge^n g - 1)^2 = 0.
inline bool shear_check(const MatFF& g, std::size_t n) {
  const MatFF w = wedge_matrix(g, n);
  const MatFF nil = w - MatFF::identity(g.field(), w.rows());
  if (nil == MatFF(g.field(), w.rows(), w.cols())) return false;
  return nil * nil == MatFF(g.field(), w.rows(), w.cols());
}

/// diag(mu I_g, I_g): a similitude of the standard symplectic form with
/// multiplier mu.
inline MatFF symplectic_similitude(const PrimeField& F, std::size_t dim, std::uint32_t mu) {
  MatFF s = MatFF::identity(F, dim);
  for (std::size_t i = 0; i < dim / 2; ++i) s(i, i) = mu;
  return s;
}

}  // namespace arrmono
