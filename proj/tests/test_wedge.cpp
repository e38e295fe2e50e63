#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "arrmono/bsgs.hpp"
#include "arrmono/classical_groups.hpp"
#include "arrmono/random.hpp"
#include "arrmono/wedge.hpp"

using namespace arrmono;

namespace {

MatFF random_symplectic(const BilinearSpace& W, Rng& rng) {
  const auto& F = W.field();
  MatFF g = MatFF::identity(F, W.dim());
  for (int i = 0; i < 12; ++i) {
    Vec v(W.dim());
    for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
    if (detail::is_zero_vec(v)) continue;
    g = transvection(W, v, static_cast<std::uint32_t>(1 + uniform_below(rng, F.modulus() - 1))).mat() * g;
  }
  return g;
}

MatFF random_mat(const PrimeField& F, std::size_t n, Rng& rng) {
  MatFF m(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
  return m;
}

PolyZ from_roots(const std::vector<long long>& roots) {
  PolyZ p = PolyZ::from_ints({1});
  for (long long r : roots) p = p * PolyZ::from_ints({-r, 1});
  return p;
}

}  // namespace

TEST(WedgeBasis, LexicographicAndSized) {
  const WedgeBasisIndex idx(4, 2);
  ASSERT_EQ(idx.size(), 6u);
  EXPECT_EQ(idx.subset(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(idx.subset(5), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(idx.position({1, 3}), 4u);
  for (std::size_t N : {2u, 4u, 6u, 8u})
    for (std::size_t n = 1; n <= N; ++n) EXPECT_EQ(WedgeBasisIndex(N, n).size(), binomial_u64(static_cast<unsigned>(N), static_cast<unsigned>(n)));
  EXPECT_THROW(WedgeBasisIndex(4, 0), Error);
  EXPECT_THROW(WedgeBasisIndex(4, 5), Error);
}

TEST(WedgeMatrix, Examples) {
  const PrimeField F(7);
  EXPECT_TRUE(wedge_matrix(MatFF::identity(F, 4), 2).is_identity());
  for (std::size_t n = 1; n <= 4; ++n) {
    const MatFF w = wedge_matrix(MatFF::identity(F, 4).scaled(6), n);
    EXPECT_EQ(w, MatFF::identity(F, w.rows()).scaled(n % 2 ? 6 : 1));
  }
  MatFF d(F, 4, 4);
  const std::uint32_t a = 2, b = 3, c = 5, e = 6;
  d(0, 0) = a, d(1, 1) = b, d(2, 2) = c, d(3, 3) = e;
  MatFF expect(F, 6, 6);
  const std::uint32_t diag[6] = {F.mul(a, b), F.mul(a, c), F.mul(a, e), F.mul(b, c), F.mul(b, e), F.mul(c, e)};
  for (std::size_t i = 0; i < 6; ++i) expect(i, i) = diag[i];
  EXPECT_EQ(wedge_matrix(d, 2), expect);
}

TEST(WedgeMatrix, Functorial) {
  Rng rng(1);
  const PrimeField F(11);
  for (auto [N, n] : {std::pair{4u, 2u}, std::pair{6u, 2u}, std::pair{6u, 3u}}) {
    for (int t = 0; t < 200; ++t) {
      const MatFF g = random_mat(F, N, rng), h = random_mat(F, N, rng);
      ASSERT_EQ(wedge_matrix(g * h, n), wedge_matrix(g, n) * wedge_matrix(h, n));
    }
  }
}

TEST(InducedForm, Examples) {
  const PrimeField F(5);
  const auto W = BilinearSpace::standard_symplectic(F, 4);
  const auto V = induced_wedge_form(W, 2);
  EXPECT_EQ(V.symmetry(), Symmetry::Symmetric);
  EXPECT_EQ(V.dim(), 6u);
  const WedgeBasisIndex idx(4, 2);
  // (e1 ^ e3, e1 ^ e3) with e3 = f1 in the standard basis.
  const std::size_t s13 = idx.position({0, 2});
  EXPECT_EQ(V.gram()(s13, s13), 1u);
  const std::size_t s12 = idx.position({0, 1}), s34 = idx.position({2, 3});
  EXPECT_EQ(V.gram()(s12, s34), V.gram()(s34, s12));
  EXPECT_EQ(induced_wedge_form(W, 1).gram(), W.gram());
  EXPECT_EQ(induced_wedge_form(BilinearSpace::standard_symplectic(F, 6), 3).symmetry(), Symmetry::Alternating);
}

TEST(InducedForm, WedgeOfSymplecticIsIsometry) {
  Rng rng(2);
  for (auto [N, n, p] : {std::tuple{4u, 2u, 5u}, std::tuple{6u, 2u, 7u}, std::tuple{6u, 3u, 5u}, std::tuple{8u, 4u, 3u}}) {
    const auto W = BilinearSpace::standard_symplectic(PrimeField(p), N);
    const auto V = induced_wedge_form(W, n);
    EXPECT_EQ(V.dim(), binomial_u64(N, n));
    for (int t = 0; t < 30; ++t) ASSERT_TRUE(V.preserves(wedge_matrix(random_symplectic(W, rng), n)));
  }
}

TEST(WedgeCharPoly, Examples) {
  EXPECT_EQ(wedge_char_poly(from_roots({2, 3}), 2), PolyZ::from_ints({-6, 1}));
  EXPECT_EQ(wedge_char_poly(PolyZ::from_ints({1, 0, 1}), 2), PolyZ::from_ints({-1, 1}));
  EXPECT_EQ(wedge_char_poly(PolyZ::from_ints({5, 1, 0, -3, 1}), 2).degree(), 6);
  EXPECT_THROW(wedge_char_poly(PolyZ::from_ints({1, 1}), 2), Error);
}

TEST(WedgeCharPoly, RootsArePairwiseProducts) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<long long> roots;
    for (int i = 0; i < 4; ++i) roots.push_back(static_cast<long long>(uniform_below(rng, 11)) - 5);
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<long long> prods;
      const WedgeBasisIndex idx(4, n);
      for (std::size_t s = 0; s < idx.size(); ++s) {
        long long pr = 1;
        for (auto i : idx.subset(s)) pr *= roots[i];
        prods.push_back(pr);
      }
      ASSERT_EQ(wedge_char_poly(from_roots(roots), n), from_roots(prods));
    }
  }
}

TEST(WedgeCharPoly, PreservesWeilSymmetry) {
  // Genus-2 q-Weil polynomials T^4 - aT^3 + bT^2 - qaT + q^2.
  const long long q = 5;
  for (long long a = -4; a <= 4; ++a)
    for (long long b = -6; b <= 12; ++b) {
      const PolyZ p = PolyZ::from_ints({q * q, -q * a, b, -a, 1});
      const PolyZ w = wedge_char_poly(p, 2);
      const int d = w.degree();
      // T^6 w(q^2/T) = q^6 w(T), coefficientwise.
      for (int k = 0; k <= d; ++k)
        ASSERT_EQ(w[static_cast<std::size_t>(k)] * ipow(BigInt(q * q), static_cast<unsigned>(k)),
                  ipow(BigInt(q), static_cast<unsigned>(d)) * w[static_cast<std::size_t>(d - k)]);
    }
}

TEST(ShearCheck, Examples) {
  const PrimeField F(5);
  const auto W = BilinearSpace::standard_symplectic(F, 4);
  EXPECT_TRUE(shear_check(transvection(W, Vec{1, 2, 0, 3}, 2).mat(), 2));
  EXPECT_FALSE(shear_check(MatFF::identity(F, 4), 2));
  MatFF torus = MatFF::identity(F, 4);
  torus(0, 0) = 2;
  torus(2, 2) = F.inv(2);
  ASSERT_TRUE(W.preserves(torus));
  EXPECT_FALSE(shear_check(torus, 2));
}

TEST(ShearCheck, RandomTransvections) {
  Rng rng(4);
  for (auto [N, n] : {std::pair{4u, 2u}, std::pair{6u, 2u}, std::pair{6u, 3u}}) {
    const PrimeField F(7);
    const auto W = BilinearSpace::standard_symplectic(F, N);
    for (int t = 0; t < 100; ++t) {
      Vec v(N);
      for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, 7));
      if (detail::is_zero_vec(v)) v[0] = 1;
      ASSERT_TRUE(shear_check(transvection(W, v, static_cast<std::uint32_t>(1 + uniform_below(rng, 6))).mat(), n));
    }
  }
}

TEST(Similitude, MultiplierIsMu) {
  const PrimeField F(13);
  const auto W = BilinearSpace::standard_symplectic(F, 4);
  const MatFF s = symplectic_similitude(F, 4, 5);
  EXPECT_EQ(s.transpose() * W.gram() * s, W.gram().scaled(5));
}
