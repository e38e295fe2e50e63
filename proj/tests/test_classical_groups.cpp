#include <gtest/gtest.h>

#include <vector>

#include "arrmono/classical_groups.hpp"
#include "arrmono/random.hpp"

using namespace arrmono;

namespace {

Vec random_vec(const PrimeField& F, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
  return v;
}

Vec random_anisotropic(const IsometrySpace& S, Rng& rng) {
  while (true) {
    Vec v = random_vec(S.field(), S.dim(), rng);
    if (S.pair(v, v) != 0) return v;
  }
}

// Random element as a product of reflections, together with the product of
// their norms' square classes.
std::pair<MatFF, int> random_orthogonal(const IsometrySpace& S, Rng& rng) {
  MatFF g = MatFF::identity(S.field(), S.dim());
  int theta = 1;
  const std::size_t k = uniform_below(rng, 2 * S.dim() + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec d = random_anisotropic(S, rng);
    g = reflection_matrix(S, d).mat() * g;
    theta *= S.field().legendre(S.pair(d, d));
  }
  return {g, theta};
}

// Spinor norm oracle through the Wall form on im(1 - g):
// [x, y] = (x, w) for y = (1 - g) w, theta = class of 2^rank det[ , ].
int wall_spinor_norm(const IsometrySpace& S, const MatFF& g) {
  const auto& F = S.field();
  const std::size_t n = S.dim();
  const MatFF A = MatFF::identity(F, n) - g;
  std::vector<Vec> ys, ws, echelon;
  for (std::size_t j = 0; j < n; ++j) {
    Vec col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = A(i, j);
    Vec red = col;
    for (const auto& r : echelon) {
      std::size_t lead = 0;
      while (r[lead] == 0) ++lead;
      if (red[lead] == 0) continue;
      const auto f = F.mul(red[lead], F.inv(r[lead]));
      for (std::size_t t = 0; t < n; ++t) red[t] = F.sub(red[t], F.mul(f, r[t]));
    }
    bool zero = true;
    for (auto x : red) zero = zero && x == 0;
    if (zero) continue;
    echelon.push_back(red);
    ys.push_back(col);
    Vec w(n, 0);
    w[j] = 1;
    ws.push_back(w);
  }
  const std::size_t r = ys.size();
  if (r == 0) return 1;
  MatFF W(F, r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) W(a, b) = S.pair(ys[a], ws[b]);
  return F.legendre(F.mul(F.pow(2, r), det_ff(W)));
}

std::uint64_t count_isotropic(const IsometrySpace& S) {
  const std::uint32_t p = S.field().modulus();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < S.dim(); ++i) total *= p;
  std::uint64_t c = 0;
  Vec v(S.dim());
  for (std::uint64_t x = 1; x < total; ++x) {
    std::uint64_t t = x;
    for (auto& vi : v) vi = static_cast<std::uint32_t>(t % p), t /= p;
    if (S.pair(v, v) == 0) ++c;
  }
  return c;
}

IsometrySpace diag_space(std::uint32_t p, std::vector<std::int64_t> d) { return BilinearSpace::diagonal(PrimeField(p), d); }

}  // namespace

TEST(Transvection, Examples) {
  const auto W = BilinearSpace::standard_symplectic(PrimeField(3), 2);
  const Vec e1{1, 0}, e2{0, 1};
  const auto T = transvection(W, e1, 1);
  EXPECT_EQ(T.mat().apply(e1), e1);
  // (e2, e1) = -1, so e2 -> e2 - e1.
  EXPECT_EQ(T.mat().apply(e2), (Vec{2, 1}));
  EXPECT_EQ(det_ff(T.mat()), 1u);
  EXPECT_THROW(transvection(W, Vec{0, 0}, 1), Error);
}

TEST(Transvection, OneParameterSubgroup) {
  Rng rng(1);
  const PrimeField F(7);
  const auto W = BilinearSpace::standard_symplectic(F, 6);
  for (int t = 0; t < 100; ++t) {
    Vec d = random_vec(F, 6, rng);
    if (detail::is_zero_vec(d)) continue;
    const auto l = static_cast<std::uint32_t>(uniform_below(rng, 7)), m = static_cast<std::uint32_t>(uniform_below(rng, 7));
    ASSERT_EQ(transvection(W, d, l).mat() * transvection(W, d, m).mat(), transvection(W, d, F.add(l, m)).mat());
  }
}

TEST(PlMap, EvenNIsReflection) {
  // n = 2, m = 6: (delta, delta) = -1/4.
  const PrimeField F(13);
  const auto S = diag_space(13, {F.mul(F.neg(1), F.inv(4)), 1, 1});
  const Vec d{1, 0, 0};
  const auto g = pl_map(S, d, 2, 6);
  Vec minus_d{12, 0, 0};
  EXPECT_EQ(g.mat().apply(d), minus_d);
  EXPECT_TRUE((g.mat() * g.mat()).is_identity());
  EXPECT_EQ(det_sign(g.mat()), -1);
  EXPECT_EQ(g.mat(), reflection_matrix(S, d).mat());
}

TEST(PlMap, OddNIsTransvection) {
  Rng rng(2);
  const PrimeField F(5);
  const auto W = BilinearSpace::standard_symplectic(F, 4);
  for (int n : {1, 3}) {
    const int m = n + 3 + (n + 3) % 2;
    for (int t = 0; t < 50; ++t) {
      Vec d = random_vec(F, 4, rng);
      if (detail::is_zero_vec(d)) continue;
      const auto g = pl_map(W, d, n, m);
      EXPECT_EQ(det_ff(g.mat()), 1u);
      const std::uint32_t two_pow = F.pow(2, static_cast<std::uint64_t>(m - n - 1));
      const std::uint32_t lambda = pl_sign(n) > 0 ? F.neg(two_pow) : two_pow;
      ASSERT_EQ(g.mat(), transvection(W, d, lambda).mat());
    }
  }
}

TEST(PlMap, Errors) {
  const auto W = BilinearSpace::standard_symplectic(PrimeField(5), 4);
  const Vec d{1, 0, 0, 0};
  EXPECT_THROW(pl_map(W, d, 1, 5), Error);
  EXPECT_THROW(pl_map(W, d, 1, 2), Error);
  EXPECT_THROW(pl_map(W, Vec{0, 0, 0, 0}, 1, 4), Error);
  try {
    pl_map(W, d, 3, 4);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParity);
  }
}

TEST(Reflection, Examples) {
  const auto S = diag_space(5, {1, 1});
  EXPECT_EQ(reflection_matrix(S, Vec{1, 0}).mat(), MatFF::from_ints(PrimeField(5), 2, 2, std::vector<std::int64_t>{-1, 0, 0, 1}));
  const auto H = BilinearSpace(MatFF::from_ints(PrimeField(5), 2, 2, std::vector<std::int64_t>{0, 1, 1, 0}), Symmetry::Symmetric);
  try {
    reflection_matrix(H, Vec{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IsotropicVector);
  }
}

TEST(Reflection, InvolutionsAndOrthogonalCommute) {
  Rng rng(3);
  const auto S = diag_space(7, {1, 3, 2, 5});
  for (int t = 0; t < 100; ++t) {
    const Vec d = random_anisotropic(S, rng);
    const auto r = reflection_matrix(S, d).mat();
    ASSERT_TRUE((r * r).is_identity());
    ASSERT_EQ(det_sign(r), -1);
  }
  const auto basis = orthogonal_basis(S);
  const auto r1 = reflection_matrix(S, basis[0]).mat(), r2 = reflection_matrix(S, basis[1]).mat();
  EXPECT_EQ(r1 * r2, r2 * r1);
}

TEST(OrthogonalBasis, IsOrthogonalAndAnisotropic) {
  Rng rng(4);
  const PrimeField F(5);
  // Hyperbolic planes force the isotropic fallback.
  const auto H = BilinearSpace(MatFF::from_ints(F, 4, 4, std::vector<std::int64_t>{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
                               Symmetry::Symmetric);
  const auto B = orthogonal_basis(H);
  ASSERT_EQ(B.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(H.pair(B[i], B[j]) == 0, i != j);
}

TEST(SpinorNorm, Examples) {
  const auto S = diag_space(5, {1, 2, 3});
  EXPECT_EQ(spinor_norm(S, MatFF::identity(PrimeField(5), 3)), 1);
  EXPECT_EQ(spinor_norm(S, reflection_matrix(S, Vec{1, 0, 0}).mat()), 1);
  EXPECT_EQ(spinor_norm(S, reflection_matrix(S, Vec{0, 1, 0}).mat()), -1);
  const MatFF prod = reflection_matrix(S, Vec{0, 1, 0}).mat() * reflection_matrix(S, Vec{0, 0, 1}).mat();
  EXPECT_EQ(spinor_norm(S, prod), 1);
  EXPECT_THROW(spinor_norm(S, MatFF::from_ints(PrimeField(5), 3, 3, std::vector<std::int64_t>{2, 0, 0, 0, 1, 0, 0, 0, 1})), Error);
}

TEST(SpinorNorm, AgreesWithWallFormAndReflectionProducts) {
  Rng rng(5);
  for (const auto& S : {diag_space(5, {1, 1, 1, 1}), diag_space(5, {1, 1, 1, 2}), diag_space(7, {1, 2, 3, 4, 5, 6}),
                        diag_space(7, {1, 1, 1}), diag_space(11, {3, 1, 1, 1, 1}),
                        BilinearSpace(MatFF::from_ints(PrimeField(7), 4, 4,
                                                       std::vector<std::int64_t>{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
                                      Symmetry::Symmetric)}) {
    for (int t = 0; t < 200; ++t) {
      const auto [g, theta] = random_orthogonal(S, rng);
      ASSERT_EQ(spinor_norm(S, g), theta);
      ASSERT_EQ(wall_spinor_norm(S, g), theta);
    }
  }
}

TEST(SpinorNorm, Homomorphism) {
  Rng rng(6);
  for (const auto& S : {diag_space(5, {1, 1, 1, 1}), diag_space(7, {1, 1, 1, 1, 1, 3})}) {
    for (int t = 0; t < 1000; ++t) {
      const auto g = random_orthogonal(S, rng).first, h = random_orthogonal(S, rng).first;
      ASSERT_EQ(spinor_norm(S, g * h), spinor_norm(S, g) * spinor_norm(S, h));
    }
  }
}

TEST(SpinorNorm, ScaleAwareness) {
  Rng rng(7);
  const PrimeField F(7);
  const std::vector<std::int64_t> d{1, 2, 4, 3};
  std::vector<std::int64_t> scaled;
  for (auto x : d) scaled.push_back(3 * x);  // 3 is a nonsquare mod 7
  const auto S = diag_space(7, d), T = diag_space(7, scaled);
  for (int t = 0; t < 300; ++t) {
    const auto g = random_orthogonal(S, rng).first;
    ASSERT_TRUE(T.preserves(g));
    if (det_sign(g) == 1) ASSERT_EQ(spinor_norm(S, g), spinor_norm(T, g));
    else ASSERT_EQ(spinor_norm(S, g), -spinor_norm(T, g));
  }
}

TEST(SpinorNorm, MinusIdentityIsDiscriminant) {
  for (const auto& S : {diag_space(5, {1, 1, 1, 1}), diag_space(5, {1, 2, 1, 1}), diag_space(7, {1, 1, 1, 1, 1, 1}),
                        diag_space(7, {1, 1, 1}), diag_space(13, {2, 1, 1, 1, 1, 1})}) {
    const auto& F = S.field();
    const MatFF minus = MatFF::identity(F, S.dim()).scaled(F.neg(1));
    std::uint32_t prod = 1;
    for (const auto& b : orthogonal_basis(S)) prod = F.mul(prod, S.pair(b, b));
    EXPECT_EQ(spinor_norm(S, minus), F.legendre(prod));
    EXPECT_EQ(F.legendre(prod), F.legendre(det_ff(S.gram())));
  }
}

TEST(KernelClass, Examples) {
  const auto S = diag_space(5, {1, 1, 2});
  const auto id = kernel_class(S, MatFF::identity(PrimeField(5), 3));
  EXPECT_EQ(id.theta, 1);
  EXPECT_EQ(id.det, 1);
  const auto r = kernel_class(S, reflection_matrix(S, Vec{1, 0, 0}).mat());
  EXPECT_EQ(r.theta, 1);
  EXPECT_EQ(r.det, -1);
  EXPECT_TRUE(r.in_ker_theta());
  EXPECT_FALSE(r.in_so());
}

TEST(GroupOrder, Examples) {
  EXPECT_EQ(group_order({GroupLabel::SP, 2, 3}), 24);
  EXPECT_EQ(group_order({GroupLabel::SP, 4, 3}), 51840);
  EXPECT_EQ(group_order(group_spec_for(diag_space(5, {1, 1}), GroupLabel::O_FULL)), 8);
  EXPECT_THROW(group_order({GroupLabel::SP, 3, 3}), Error);
}

TEST(GroupOrder, ExhaustiveSmallOrthogonal) {
  // Brute force over all matrices.
  for (const auto& S : {diag_space(5, {1, 1}), diag_space(5, {1, 2}), diag_space(3, {1, 1}), diag_space(3, {1, 1, 1}),
                        diag_space(7, {1, 1}), diag_space(3, {1, 1, 2})}) {
    const std::uint32_t p = S.field().modulus();
    const std::size_t n = S.dim();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= p;
    std::uint64_t count = 0;
    MatFF g(S.field(), n, n);
    for (std::uint64_t x = 0; x < total; ++x) {
      std::uint64_t t = x;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = static_cast<std::uint32_t>(t % p), t /= p;
      if (S.preserves(g)) ++count;
    }
    EXPECT_EQ(BigInt(count), group_order(group_spec_for(S, GroupLabel::O_FULL))) << p << " dim " << n;
  }
}

TEST(OrthogonalType, IsotropicCountOracle) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::int64_t a : {1, 2, 3}) {
      if (a % p == 0) continue;
      for (std::size_t dim : {2u, 4u}) {
        std::vector<std::int64_t> d(dim, 1);
        d[0] = a;
        const auto S = diag_space(p, d);
        const int eps = orthogonal_type(dim, p, disc_is_square(S));
        const std::int64_t l = p, k = static_cast<std::int64_t>(dim / 2);
        std::int64_t lk = 1, lk1 = 1;
        for (std::int64_t i = 0; i < k; ++i) lk *= l;
        for (std::int64_t i = 0; i + 1 < k; ++i) lk1 *= l;
        EXPECT_EQ(static_cast<std::int64_t>(count_isotropic(S)), (lk - eps) * (lk1 + eps)) << p << " " << a << " " << dim;
      }
    }
  }
}

TEST(Isometry, RejectsNonIsometries) {
  const auto S = diag_space(5, {1, 1});
  try {
    Isometry(S, MatFF::from_ints(PrimeField(5), 2, 2, std::vector<std::int64_t>{2, 0, 0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnIsometry);
  }
}
