#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arrmono/bigint.hpp"
#include "arrmono/error.hpp"
#include "arrmono/linalg.hpp"
#include "arrmono/random.hpp"

namespace arrmono {

using IsometrySpace = BilinearSpace;
using Vec = std::vector<std::uint32_t>;

/// A matrix g with g^T G g = G, validated on construction.
class Isometry {
 public:
  Isometry(const IsometrySpace& space, MatFF mat) : mat_(std::move(mat)) {
    if (!mat_.square() || mat_.rows() != space.dim()) fail(ErrorKind::NotAnIsometry, "dimension mismatch");
    if (!space.preserves(mat_)) fail(ErrorKind::NotAnIsometry, "matrix does not preserve the form");
  }
  static Isometry identity(const IsometrySpace& space) {
    return Isometry(space, MatFF::identity(space.field(), space.dim()));
  }

  const MatFF& mat() const noexcept { return mat_; }
  friend bool operator==(const Isometry& a, const Isometry& b) { return a.mat_ == b.mat_; }

 private:
  MatFF mat_;
};

namespace detail {

inline bool is_zero_vec(std::span<const std::uint32_t> v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

/// I + c * v (G v)^T, i.e. a -> a + c (a, v) v.
inline MatFF rank_one_update(const IsometrySpace& space, std::span<const std::uint32_t> v, std::uint32_t c) {
  const auto& F = space.field();
  const std::size_t n = space.dim();
  // (e_j, v) = (G v)_j; for alternating G this is the sign that makes
  // (a, v) = a^T G v.
  const Vec gv = space.gram().apply(v);
  MatFF m = MatFF::identity(F, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    const std::uint32_t cv = F.mul(c, v[i]);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = F.add(m(i, j), F.mul(cv, gv[j]));
  }
  return m;
}

}  // namespace detail

/// a -> a + lambda (a, delta) delta on an alternating space.
inline Isometry transvection(const IsometrySpace& space, std::span<const std::uint32_t> delta, std::uint32_t lambda) {
  if (space.symmetry() != Symmetry::Alternating) fail(ErrorKind::InvalidArgument, "transvections live on alternating spaces");
  if (detail::is_zero_vec(delta)) fail(ErrorKind::ZeroVector, "transvection direction is zero");
  return Isometry(space, detail::rank_one_update(space, delta, lambda));
}

/// Sign in front of 2^{m-n-1} in the Picard-Lefschetz formula.
inline int pl_sign(int n) {
  const int half = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  return half % 2 == 0 ? 1 : -1;
}

/// a -> a - eps * 2^{m-n-1} (a, delta) delta, eps = (-1)^{n/2} for n even and
/// (-1)^{(n-1)/2} for n odd. For n even the result is an isometry exactly
/// when (delta, delta) = eps / 2^{m-n-2}, in which case it is a reflection.
inline Isometry pl_map(const IsometrySpace& space, std::span<const std::uint32_t> delta, int n, int m) {
  if (m % 2 != 0 || m < n + 3 || n < 1)
    fail(ErrorKind::BadParity, "need m even and m >= n + 3 (n = " + std::to_string(n) + ", m = " + std::to_string(m) + ")");
  if (detail::is_zero_vec(delta)) fail(ErrorKind::ZeroVector, "vanishing cycle is zero");
  const Symmetry want = n % 2 == 0 ? Symmetry::Symmetric : Symmetry::Alternating;
  if (space.symmetry() != want) fail(ErrorKind::InvalidArgument, "form parity does not match n");
  const auto& F = space.field();
  const std::uint32_t two_pow = F.pow(2, static_cast<std::uint64_t>(m - n - 1));
  const std::uint32_t c = pl_sign(n) > 0 ? F.neg(two_pow) : two_pow;
  return Isometry(space, detail::rank_one_update(space, delta, c));
}

/// x -> x - 2 (x, delta)/(delta, delta) delta.
inline Isometry reflection_matrix(const IsometrySpace& space, std::span<const std::uint32_t> delta) {
  if (space.symmetry() != Symmetry::Symmetric) fail(ErrorKind::InvalidArgument, "reflections live on symmetric spaces");
  const auto& F = space.field();
  const std::uint32_t nrm = space.pair(delta, delta);
  if (nrm == 0) fail(ErrorKind::IsotropicVector, "reflection in an isotropic vector");
  const std::uint32_t c = F.neg(F.mul(2, F.inv(nrm)));
  return Isometry(space, detail::rank_one_update(space, delta, c));
}

/// Orthogonal basis of anisotropic vectors for a nondegenerate symmetric form,
/// by symmetric elimination: rows of B with B G B^T diagonal.
inline std::vector<Vec> orthogonal_basis(const IsometrySpace& space) {
  if (space.symmetry() != Symmetry::Symmetric) fail(ErrorKind::InvalidArgument, "orthogonal basis needs a symmetric form");
  const auto& F = space.field();
  const std::size_t n = space.dim();
  MatFF A = space.gram();
  MatFF B = MatFF::identity(F, n);
  // row_i += f row_j and col_i += f col_j on A; row_i += f row_j on B.
  auto add_to = [&](std::size_t i, std::size_t j, std::uint32_t f) {
    for (std::size_t t = 0; t < n; ++t) {
      A(i, t) = F.add(A(i, t), F.mul(f, A(j, t)));
      B(i, t) = F.add(B(i, t), F.mul(f, B(j, t)));
    }
    for (std::size_t t = 0; t < n; ++t) A(t, i) = F.add(A(t, i), F.mul(f, A(t, j)));
  };
  auto swap_idx = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t t = 0; t < n; ++t) {
      std::swap(A(i, t), A(j, t));
      std::swap(B(i, t), B(j, t));
    }
    for (std::size_t t = 0; t < n; ++t) std::swap(A(t, i), A(t, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (A(i, i) != 0) piv = i;
    if (piv == n) {
      // All remaining diagonal entries vanish: (u + w, u + w) = 2 (u, w).
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = i + 1; j < n && piv == n; ++j)
          if (A(i, j) != 0) {
            add_to(i, j, 1);
            piv = i;
          }
    }
    if (piv == n) fail(ErrorKind::InvalidArgument, "degenerate symmetric form");
    swap_idx(k, piv);
    const std::uint32_t inv = F.inv(A(k, k));
    for (std::size_t r = k + 1; r < n; ++r)
      if (A(r, k) != 0) add_to(r, k, F.neg(F.mul(A(r, k), inv)));
  }
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < n; ++i) basis.emplace_back(B.data().begin() + static_cast<std::ptrdiff_t>(i * n), B.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return basis;
}

/// Spinor norm with the convention theta(r_delta) = class of (delta, delta).
/// Factors g into reflections along an orthogonal anisotropic basis
/// (Cartan-Dieudonne); returns +1 for the square class, -1 otherwise.
inline int spinor_norm(const IsometrySpace& space, const MatFF& g) {
  if (space.symmetry() != Symmetry::Symmetric) fail(ErrorKind::InvalidArgument, "spinor norm needs a symmetric form");
  if (!g.square() || g.rows() != space.dim() || !space.preserves(g)) fail(ErrorKind::NotAnIsometry, "spinor norm of a non-isometry");
  const auto& F = space.field();
  const std::size_t n = space.dim();
  const auto basis = orthogonal_basis(space);
  MatFF h = g;
  std::uint32_t prod = 1;
  // h <- r_w h = h + c w ((G w)^T h), in O(n^2).
  auto reflect_left = [&](const Vec& w) {
    const std::uint32_t nrm = space.pair(w, w);
    const std::uint32_t c = F.neg(F.mul(2, F.inv(nrm)));
    const Vec gw = space.gram().apply(w);
    std::vector<std::uint64_t> row(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (gw[k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) row[j] += static_cast<std::uint64_t>(gw[k]) * h(k, j);
      if (k % 64 == 63)
        for (auto& x : row) x %= F.modulus();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] == 0) continue;
      const std::uint32_t cw = F.mul(c, w[i]);
      for (std::size_t j = 0; j < n; ++j) h(i, j) = F.add(h(i, j), F.mul(cw, static_cast<std::uint32_t>(row[j] % F.modulus())));
    }
    prod = F.mul(prod, nrm);
  };
  for (const auto& u : basis) {
    const Vec hu = h.apply(u);
    if (hu == u) continue;
    Vec w(n);
    for (std::size_t t = 0; t < n; ++t) w[t] = F.sub(u[t], hu[t]);
    if (space.pair(w, w) != 0) {
      reflect_left(w);
    } else {
      // (u - hu) isotropic: u + hu has norm 4(u, u), and r_u r_{u+hu} sends hu to u.
      for (std::size_t t = 0; t < n; ++t) w[t] = F.add(u[t], hu[t]);
      reflect_left(w);
      reflect_left(u);
    }
  }
  if (!h.is_identity()) fail(ErrorKind::NotAnIsometry, "reflection factorization did not terminate at the identity");
  return F.legendre(prod);
}

struct KernelClass {
  int theta;
  int det;
  bool in_ker_theta() const { return theta == 1; }
  bool in_ker_theta_det() const { return theta * det == 1; }
  bool in_so() const { return det == 1; }
};

inline int det_sign(const MatFF& g) {
  const std::uint32_t d = det_ff(g);
  if (d == 1) return 1;
  if (d == g.field().modulus() - 1) return -1;
  fail(ErrorKind::NotAnIsometry, "determinant is not +-1");
}

inline KernelClass kernel_class(const IsometrySpace& space, const MatFF& g) {
  return {spinor_norm(space, g), det_sign(g)};
}

/// Labels for the groups that appear as monodromy predictions and in the
/// orthogonal kernel chain.
enum class GroupLabel { SP, O_KER_THETA, O_KER_THETA_DET, O_FULL, SO, OMEGA };

inline std::string_view to_string(GroupLabel l) {
  switch (l) {
    case GroupLabel::SP: return "SP";
    case GroupLabel::O_KER_THETA: return "O_KER_THETA";
    case GroupLabel::O_KER_THETA_DET: return "O_KER_THETA_DET";
    case GroupLabel::O_FULL: return "O_FULL";
    case GroupLabel::SO: return "SO";
    case GroupLabel::OMEGA: return "OMEGA";
  }
  return "?";
}

struct GroupSpec {
  GroupLabel label;
  std::size_t dim;
  std::uint32_t ell;
  /// Square class of det(Gram); only meaningful for orthogonal labels.
  bool disc_square = true;
};

/// Discriminant square class of a symmetric form.
inline bool disc_is_square(const IsometrySpace& space) { return space.field().is_square(det_ff(space.gram())); }

/// Witt type of an even-dimensional quadratic space: +1 (split) when
/// (-1)^{dim/2} det(G) is a square, else -1.
inline int orthogonal_type(std::size_t dim, std::uint32_t ell, bool disc_square) {
  const PrimeField F(ell);
  const bool minus_one_sq = F.is_square(F.neg(1));
  const bool sign_sq = (dim / 2) % 2 == 0 ? true : minus_one_sq;
  return sign_sq == disc_square ? 1 : -1;
}

inline GroupSpec group_spec_for(const IsometrySpace& space, GroupLabel label) {
  return {label, space.dim(), space.field().modulus(),
          space.symmetry() == Symmetry::Symmetric ? disc_is_square(space) : true};
}

/// Closed-form orders of Sp(2g, l) and the orthogonal family.
inline BigInt group_order(const GroupSpec& spec) {
  const BigInt l = spec.ell;
  const std::size_t d = spec.dim;
  if (d < 2) fail(ErrorKind::UnsupportedDim, "dimension must be at least 2");
  if (spec.label == GroupLabel::SP) {
    if (d % 2) fail(ErrorKind::UnsupportedDim, "symplectic dimension must be even");
    const unsigned g = static_cast<unsigned>(d / 2);
    BigInt r = ipow(l, g * g);
    for (unsigned i = 1; i <= g; ++i) r *= ipow(l, 2 * i) - 1;
    return r;
  }
  BigInt full;
  if (d % 2) {
    const unsigned k = static_cast<unsigned>((d - 1) / 2);
    full = 2 * ipow(l, k * k);
    for (unsigned i = 1; i <= k; ++i) full *= ipow(l, 2 * i) - 1;
  } else {
    const unsigned k = static_cast<unsigned>(d / 2);
    const int eps = orthogonal_type(d, spec.ell, spec.disc_square);
    full = 2 * ipow(l, k * (k - 1)) * (ipow(l, k) - eps);
    for (unsigned i = 1; i < k; ++i) full *= ipow(l, 2 * i) - 1;
  }
  switch (spec.label) {
    case GroupLabel::O_FULL: return full;
    case GroupLabel::O_KER_THETA:
    case GroupLabel::O_KER_THETA_DET:
    case GroupLabel::SO: return full / 2;
    case GroupLabel::OMEGA: return full / 4;
    default: break;
  }
  fail(ErrorKind::UnsupportedDim, "unsupported label");
}

/// Transvections T_{v,1} for v in e_i, f_i and e_i + e_{i+1} of the standard
/// symplectic basis. The vectors span W and their pairing graph is connected.
inline std::vector<Isometry> standard_transvection_generators(const IsometrySpace& space) {
  const std::size_t dim = space.dim(), g = dim / 2;
  std::vector<Isometry> out;
  for (std::size_t i = 0; i < g; ++i) {
    Vec e(dim, 0), f(dim, 0);
    e[i] = 1;
    f[g + i] = 1;
    out.push_back(transvection(space, e, 1));
    out.push_back(transvection(space, f, 1));
    if (i + 1 < g) {
      Vec ee(dim, 0);
      ee[i] = ee[i + 1] = 1;
      out.push_back(transvection(space, ee, 1));
    }
  }
  return out;
}

/// Reflections in `count` seeded random anisotropic vectors.
inline std::vector<Isometry> random_reflections(const IsometrySpace& space, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const auto& F = space.field();
  std::vector<Isometry> out;
  while (out.size() < count) {
    Vec v(space.dim());
    for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
    if (space.pair(v, v) != 0) out.push_back(reflection_matrix(space, v));
  }
  return out;
}

/// Membership of an orthogonal element in the subgroup named by `label`.
inline bool in_group(GroupLabel label, KernelClass kc) {
  switch (label) {
    case GroupLabel::O_FULL: return true;
    case GroupLabel::O_KER_THETA: return kc.in_ker_theta();
    case GroupLabel::O_KER_THETA_DET: return kc.in_ker_theta_det();
    case GroupLabel::SO: return kc.in_so();
    case GroupLabel::OMEGA: return kc.in_so() && kc.in_ker_theta();
    case GroupLabel::SP: return true;
  }
  return false;
}

}  // namespace arrmono
