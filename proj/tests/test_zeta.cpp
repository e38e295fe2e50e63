#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/zeta.hpp"

using namespace arrmono;

namespace {

FieldPtr field(std::uint32_t p, unsigned k = 1) { return FieldCache::global().get(p, k); }

Arrangement from_packed(int n, int m, const FieldPtr& F, const std::vector<std::uint64_t>& rows) {
  std::vector<Fq> e;
  for (auto v : rows) e.push_back(F->from_packed(v));
  return Arrangement(n, m, F, e);
}

// Direct enumeration of P^n(F_Q) over the embedded arrangement.
std::int64_t naive_count(const Arrangement& arr, unsigned i) {
  const auto E = embed_arrangement(arr, i);
  const auto& F = *E.field;
  const std::uint64_t Q = F.order();
  const int n = E.n;
  std::uint64_t total = 1;
  for (int t = 0; t <= n; ++t) total *= Q;
  std::int64_t N = 0;
  std::vector<Fq> x(static_cast<std::size_t>(n + 1));
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (int t = 0; t <= n; ++t, c /= Q) x[static_cast<std::size_t>(t)] = F.from_packed(c % Q);
    int first = 0;
    while (F.is_zero(x[static_cast<std::size_t>(first)])) ++first;
    if (x[static_cast<std::size_t>(first)] != F.one()) continue;
    Fq prod = F.one();
    for (int j = 0; j < E.m; ++j) {
      Fq s = F.zero();
      for (int r = 0; r <= n; ++r) s = F.add(s, F.mul(E.at(r, j), x[static_cast<std::size_t>(r)]));
      prod = F.mul(prod, s);
    }
    N += 1 + F.quad_char(prod);
  }
  return N;
}

// n = 1 over a prime field with plain integer arithmetic: affine chart
// (x : 1) plus the point (1 : 0).
std::int64_t integer_count_line(const Arrangement& arr) {
  const auto& F = *arr.field();
  const long long p = static_cast<long long>(F.order());
  auto chi = [&](long long v) {
    v %= p;
    if (v == 0) return 0;
    long long r = 1, b = v, e = (p - 1) / 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r == 1 ? 1 : -1;
  };
  auto val = [&](long long x0, long long x1) {
    long long prod = 1;
    for (int j = 0; j < arr.m(); ++j) {
      const long long a = static_cast<long long>(F.to_packed(arr.at(0, j))), b = static_cast<long long>(F.to_packed(arr.at(1, j)));
      prod = prod * ((a * x0 + b * x1) % p) % p;
    }
    return prod;
  };
  std::int64_t N = 1 + chi(val(1, 0));
  for (long long x = 0; x < p; ++x) N += 1 + chi(val(x, 1));
  return N;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

// Points 0, 1, 2, infinity over F_5.
Arrangement elliptic_example() { return from_packed(1, 4, field(5), {1, 1, 1, 0, 0, 1, 2, 1}); }

}  // namespace

TEST(SignProductSum, MatchesScalar) {
  Rng rng(1);
  for (std::size_t len : {1u, 31u, 32u, 33u, 127u, 128u, 4100u, 9000u}) {
    for (std::size_t K : {1u, 2u, 5u}) {
      std::vector<std::vector<std::int8_t>> arrs(K, std::vector<std::int8_t>(len));
      std::vector<const std::int8_t*> ptrs;
      for (auto& a : arrs) {
        for (auto& v : a) v = static_cast<std::int8_t>(static_cast<int>(uniform_below(rng, 3)) - 1);
        ptrs.push_back(a.data());
      }
      std::int64_t expect = 0;
      for (std::size_t e = 0; e < len; ++e) {
        int pr = 1;
        for (std::size_t k = 0; k < K; ++k) pr *= arrs[k][e];
        expect += pr;
      }
      ASSERT_EQ(detail::sign_product_sum(ptrs.data(), K, len), expect) << len << " " << K;
    }
  }
}

TEST(CountPoints, EllipticExample) {
  const auto arr = elliptic_example();
  EXPECT_EQ(count_points(arr, 1), 8);
  EXPECT_EQ(integer_count_line(arr), 8);
  const auto rec = frobenius_charpoly(arr);
  EXPECT_EQ(rec.P, PolyZ::from_ints({5, 2, 1}));
  // N_2 = 1 + 25 - (a_1^2 - 2q).
  EXPECT_EQ(rec.counts[1], 1 + 25 - (4 - 10));
}

TEST(CountPoints, IntegerOracleOnTheLine) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto F = field(p);
    for (int m : {4, 6, 8}) {
      if (static_cast<std::uint32_t>(m) > p + 1) continue;
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto arr = random_arrangement(1, m, F, seed);
        ASSERT_EQ(count_points(arr, 1), integer_count_line(arr));
      }
    }
  }
}

TEST(CountPoints, NaiveOracle) {
  struct Case {
    int n, m;
    std::uint32_t p;
    unsigned k, maxi;
  };
  for (auto c : {Case{1, 4, 3, 1, 4}, Case{1, 6, 5, 1, 3}, Case{1, 4, 3, 2, 2}, Case{2, 6, 5, 1, 3}, Case{2, 6, 7, 1, 1},
                 Case{2, 6, 3, 2, 1}, Case{3, 6, 5, 1, 1}, Case{2, 8, 7, 1, 1}}) {
    const auto F = field(c.p, c.k);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      // Sparse cases go through the moment curve.
      const auto arr = c.n >= 2 && F->order() <= 9 ? hyperelliptic_image(random_points(c.m, F, seed), c.n, F) : random_arrangement(c.n, c.m, F, seed);
      for (unsigned i = 1; i <= c.maxi; ++i) ASSERT_EQ(count_points(arr, i), naive_count(arr, i)) << c.n << c.m << c.p << c.k << i;
    }
  }
}

TEST(CountPoints, ThreadCountIndependent) {
  const auto arr = random_arrangement(2, 6, field(7), 3);
  const auto one = count_points(arr, 2, {1});
  EXPECT_EQ(count_points(arr, 2, {3}), one);
  EXPECT_EQ(count_points(arr, 2, {0}), one);
  const auto line = random_arrangement(1, 6, field(5), 3);
  EXPECT_EQ(count_points(line, 3, {4}), count_points(line, 3, {1}));
}

TEST(CountPoints, CoordinateChangeInvariant) {
  Rng rng(4);
  const auto F = field(7);
  for (int t = 0; t < 10; ++t) {
    const auto arr = random_arrangement(2, 6, F, rng());
    // Reverse the variable order.
    std::vector<Fq> e(arr.entries().size());
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j < 6; ++j) e[static_cast<std::size_t>(i * 6 + j)] = arr.at(2 - i, j);
    const Arrangement rev(2, 6, F, e);
    for (unsigned i = 1; i <= 2; ++i) ASSERT_EQ(count_points(rev, i), count_points(arr, i));
  }
}

TEST(CountPoints, ColumnScalingTwist) {
  Rng rng(5);
  for (auto [n, m, p] : {std::tuple{1, 6, 7u}, std::tuple{2, 6, 5u}}) {
    const auto F = field(p);
    const auto& K = *F;
    for (int t = 0; t < 5; ++t) {
      const auto arr = random_arrangement(n, m, F, rng());
      const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m)));
      const Fq sq = K.pow(K.gen(), 2 * (1 + uniform_below(rng, 3)));
      const Fq nsq = K.gen();
      for (unsigned i = 1; i <= 2; ++i) {
        const std::int64_t N = count_points(arr, i);
        ASSERT_EQ(count_points(arr.with_scaled_column(j, sq), i), N);
        std::uint64_t Q = 1;
        for (unsigned s = 0; s < i; ++s) Q *= p;
        const auto base = static_cast<std::int64_t>(detail::points_of_projective_space(Q, n));
        const std::int64_t twisted = i % 2 ? 2 * base - N : N;
        ASSERT_EQ(count_points(arr.with_scaled_column(j, nsq), i), twisted);
      }
    }
  }
}

TEST(CountPoints, Errors) {
  const auto big = random_arrangement(1, 4, field(5), 1);
  EXPECT_EQ(kind_of([&] { count_points(big, 11); }), ErrorKind::TableBudgetExceeded);
  EXPECT_EQ(kind_of([&] { count_points(big, 0); }), ErrorKind::InvalidArgument);
}

TEST(Zeta, Degrees) {
  EXPECT_EQ(zeta_degree(1, 4), 2u);
  EXPECT_EQ(zeta_degree(1, 6), 4u);
  EXPECT_EQ(zeta_degree(2, 6), 6u);
  EXPECT_EQ(zeta_degree(3, 8), 20u);
  for (auto [n, m, p] : {std::tuple{1, 4, 5u}, std::tuple{1, 6, 5u}, std::tuple{2, 6, 5u}, std::tuple{1, 8, 7u}}) {
    const auto rec = frobenius_charpoly(random_arrangement(n, m, field(p), 9));
    EXPECT_EQ(rec.P.degree(), static_cast<int>(zeta_degree(n, m)));
    EXPECT_TRUE(rec.degree_ok);
    EXPECT_FALSE(rec.half);
  }
}

TEST(Zeta, WeilAndFunctionalEquation) {
  for (auto [n, m, p, k] : {std::tuple{1, 4, 3u, 1u}, std::tuple{1, 4, 5u, 1u}, std::tuple{1, 6, 5u, 1u}, std::tuple{1, 6, 7u, 1u},
                            std::tuple{1, 6, 3u, 2u}, std::tuple{2, 6, 5u, 1u}, std::tuple{1, 8, 7u, 1u}}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto rec = frobenius_charpoly(random_arrangement(n, m, field(p, k), seed));
      ASSERT_TRUE(rec.all_ok()) << n << m << p;
      if (n % 2) EXPECT_EQ(rec.sign, 1);
      // T^d P(q^n / T) = sign * q^{nd/2} P(T).
      const int d = rec.P.degree();
      const BigInt Q = ipow(BigInt(rec.q), static_cast<unsigned>(n));
      for (int t = 0; t <= d; ++t)
        ASSERT_EQ(rec.P[static_cast<std::size_t>(d - t)] * ipow(Q, static_cast<unsigned>(d - t)),
                  rec.sign * ipow(Q, static_cast<unsigned>(d / 2)) * rec.P[static_cast<std::size_t>(t)]);
    }
  }
}

TEST(Zeta, CountsBeyondDegreeArePredicted) {
  for (auto [n, m, p] : {std::tuple{1, 4, 5u}, std::tuple{1, 4, 7u}, std::tuple{1, 6, 5u}, std::tuple{2, 6, 5u}}) {
    const auto arr = random_arrangement(n, m, field(p), 11);
    const auto rec = frobenius_charpoly(arr);
    const std::size_t extra = n == 1 && m == 4 ? 4 : (n == 1 ? 2 : 1);
    const auto sums = power_sums(rec.P, rec.d + extra);
    for (std::size_t i = 1; i <= rec.d + extra; ++i) {
      BigInt Q = ipow(BigInt(p), static_cast<unsigned>(i));
      if (ipow(Q, 1) > BigInt(kTableBudget)) break;
      ASSERT_EQ(trace_from_count(count_points(arr, static_cast<unsigned>(i)), p, static_cast<unsigned>(i), n), sums[i - 1])
          << n << " " << m << " " << p << " i=" << i;
    }
  }
}

TEST(Zeta, PowerSumsRoundTrip) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 8));
    std::vector<BigInt> c;
    for (int i = 0; i < d; ++i) c.emplace_back(static_cast<long long>(uniform_below(rng, 201)) - 100);
    c.emplace_back(1);
    const PolyZ P(std::move(c));
    ASSERT_EQ(newton_charpoly(power_sums(P, static_cast<std::size_t>(d)), static_cast<std::size_t>(d)), P);
  }
  EXPECT_EQ(power_sums(PolyZ::from_ints({5, 2, 1}), 2), (std::vector<BigInt>{-2, -6}));
}

TEST(Zeta, SymplecticCompletionMatchesFullRoute) {
  for (auto [m, p, k] : {std::tuple{4, 5u, 1u}, std::tuple{6, 5u, 1u}, std::tuple{6, 7u, 1u}, std::tuple{8, 7u, 1u}, std::tuple{6, 3u, 2u}}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto rec = frobenius_charpoly(random_arrangement(1, m, field(p, k), seed));
      ASSERT_EQ(detail::symplectic_completion(rec.traces, rec.d, rec.q, 1), rec.P);
    }
  }
}

TEST(Zeta, SymplecticHalfBeyondBudget) {
  const auto arr = random_arrangement(1, 6, field(5, 3), 2);
  EXPECT_EQ(kind_of([&] { frobenius_charpoly(arr); }), ErrorKind::TableBudgetExceeded);
  ZetaOptions opts;
  opts.allow_symplectic_half = true;
  const auto rec = frobenius_charpoly(arr, opts);
  EXPECT_TRUE(rec.half);
  EXPECT_EQ(rec.counts.size(), 2u);
  EXPECT_TRUE(rec.all_ok());
  EXPECT_EQ(rec.P.degree(), 4);
  const auto even = random_arrangement(2, 6, field(17), 2);
  EXPECT_EQ(kind_of([&] { frobenius_charpoly(even, opts); }), ErrorKind::TableBudgetExceeded);
}

TEST(Zeta, RejectsDegenerate) {
  EXPECT_EQ(kind_of([] { frobenius_charpoly(from_packed(1, 4, field(5), {1, 1, 1, 0, 0, 0, 2, 1})); }), ErrorKind::NotGeneralPosition);
}

TEST(Zeta, BoundHelpers) {
  EXPECT_EQ(functional_equation_sign(PolyZ::from_ints({5, 2, 1}), 5, 1), 1);
  EXPECT_EQ(functional_equation_sign(PolyZ::from_ints({-25, 0, 1}), 5, 2), -1);
  EXPECT_EQ(functional_equation_sign(PolyZ::from_ints({6, 2, 1}), 5, 1), 0);
  EXPECT_TRUE(weil_coefficient_bounds(PolyZ::from_ints({5, 4, 1}), 5, 1));
  EXPECT_FALSE(weil_coefficient_bounds(PolyZ::from_ints({5, 5, 1}), 5, 1));
  EXPECT_EQ(trace_from_count(8, 5, 1, 1), -2);
  EXPECT_EQ(trace_from_count(31 + 4, 5, 1, 2), 4);
}

TEST(NormalizeModEll, Examples) {
  const auto rec = frobenius_charpoly(elliptic_example());
  EXPECT_EQ(kind_of([&] { normalize_mod_ell(rec, PrimeField(7)); }), ErrorKind::NonSquareMultiplier);
  EXPECT_EQ(kind_of([&] { normalize_mod_ell(rec, PrimeField(5)); }), ErrorKind::InvalidArgument);
  // 5 = 4^2 mod 11: T^2 + 2T + 5 -> T^2 + 6T + 1.
  EXPECT_EQ(normalize_mod_ell(rec, PrimeField(11)), PolyFF({1, 6, 1}));
}

TEST(NormalizeModEll, RootsClosedUnderInversion) {
  for (auto [n, m, p, ell] : {std::tuple{1, 6, 5u, 11u}, std::tuple{2, 6, 5u, 13u}, std::tuple{2, 6, 7u, 3u}, std::tuple{1, 8, 7u, 3u}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rec = frobenius_charpoly(random_arrangement(n, m, field(p), seed));
      const PrimeField Fl(ell);
      const PolyFF f = normalize_mod_ell(rec, Fl);
      ASSERT_EQ(f.degree(), static_cast<int>(rec.d));
      // Reciprocal equals sign * f up to the constant term.
      const int d = f.degree();
      const std::uint32_t c0 = f[0];
      ASSERT_NE(c0, 0u);
      for (int t = 0; t <= d; ++t) ASSERT_EQ(f[static_cast<std::size_t>(d - t)], Fl.mul(c0, f[static_cast<std::size_t>(t)]));
    }
  }
}

namespace {

PolyZ cyclotomic_like(const std::vector<long long>& c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return PolyZ(std::move(b));
}

}  // namespace

TEST(Irreducibility, Examples) {
  const auto v1 = irreducible_over_Z(PolyZ::from_ints({1, 0, 1}));
  EXPECT_TRUE(v1.irreducible);
  EXPECT_EQ(v1.method, IrreducibilityVerdict::Method::ModPrimeCertificate);
  EXPECT_EQ(v1.prime, 3u);

  const auto v2 = irreducible_over_Z(PolyZ::from_ints({-1, 1, -1, 1}));  // (T - 1)(T^2 + 1)
  EXPECT_FALSE(v2.irreducible);
  ASSERT_TRUE(v2.witness);
  EXPECT_EQ(*v2.witness, PolyZ::from_ints({-1, 1}));

  const auto v3 = irreducible_over_Z(PolyZ::from_ints({1, 0, 0, 0, 1}));
  EXPECT_TRUE(v3.irreducible);
  EXPECT_EQ(v3.method, IrreducibilityVerdict::Method::ExhaustiveMignotte);

  const auto v4 = irreducible_over_Z(PolyZ::from_ints({2, 0, 3, 0, 1}));  // (T^2 + 1)(T^2 + 2)
  EXPECT_FALSE(v4.irreducible);
  ASSERT_TRUE(v4.witness);
  EXPECT_EQ(v4.witness->degree(), 2);

  EXPECT_EQ(kind_of([] { irreducible_over_Z(PolyZ::from_ints({2, 1})); }), ErrorKind::InvalidArgument);
  std::vector<long long> big(14, 0);
  big[0] = 1, big[13] = 1;
  EXPECT_EQ(kind_of([&] { irreducible_over_Z(cyclotomic_like(big)); }), ErrorKind::DegreeBudgetExceeded);
}

TEST(Irreducibility, NonCyclicGaloisNeedsExhaustiveSearch) {
  // Cyclotomic polynomials for 8, 12, 15, 16, 20, 24: reducible mod every prime.
  for (const auto& c : {std::vector<long long>{1, 0, 0, 0, 1}, {1, 0, -1, 0, 1}, {1, -1, 0, 1, -1, 1, 0, -1, 1}, {1, 0, 0, 0, 0, 0, 0, 0, 1},
                        {1, 0, -1, 0, 1, 0, -1, 0, 1}, {1, 0, 0, 0, -1, 0, 0, 0, 1}}) {
    const auto v = irreducible_over_Z(cyclotomic_like(c));
    EXPECT_TRUE(v.irreducible);
    EXPECT_EQ(v.method, IrreducibilityVerdict::Method::ExhaustiveMignotte);
  }
  // Products of such factors are caught with a dividing witness.
  const PolyZ a = cyclotomic_like({1, 0, 0, 0, 1}), b = cyclotomic_like({1, 0, -1, 0, 1});
  const auto v = irreducible_over_Z(a * b);
  EXPECT_FALSE(v.irreducible);
  ASSERT_TRUE(v.witness);
  PolyZ quot;
  EXPECT_TRUE(divide_exact(a * b, *v.witness, quot));
}

TEST(Irreducibility, RandomProductsAreReducible) {
  Rng rng(7);
  auto rand_monic = [&](int deg) {
    std::vector<BigInt> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long long>(uniform_below(rng, 41)) - 20);
    c.emplace_back(1);
    return PolyZ(std::move(c));
  };
  for (int t = 0; t < 100; ++t) {
    const int da = 1 + static_cast<int>(uniform_below(rng, 5)), db = 1 + static_cast<int>(uniform_below(rng, 5));
    const PolyZ p = rand_monic(da) * rand_monic(db);
    const auto v = irreducible_over_Z(p);
    ASSERT_FALSE(v.irreducible);
    ASSERT_TRUE(v.witness);
    PolyZ quot;
    ASSERT_TRUE(divide_exact(p, *v.witness, quot));
    ASSERT_GT(v.witness->degree(), 0);
    ASSERT_LT(v.witness->degree(), p.degree());
  }
}

TEST(Irreducibility, AgreesWithModPrimeDegreeOracle) {
  // If the mod-p factor patterns of a squarefree reduction admit no proper
  // subset sum in common, the polynomial is irreducible.
  Rng rng(8);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const int deg = 2 + static_cast<int>(uniform_below(rng, 7));
    std::vector<BigInt> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long long>(uniform_below(rng, 21)) - 10);
    c.emplace_back(1);
    const PolyZ p(std::move(c));
    std::set<int> common;
    for (int k = 1; k < deg; ++k) common.insert(k);
    for (std::uint32_t prime : {29u, 31u, 37u, 41u, 43u}) {
      const PrimeField F(prime);
      const PolyFF f = poly_reduce_mod(p, F);
      if (polyfp::gcd(F, f, polyfp::derivative(F, f)).degree() != 0) continue;
      const auto sums = detail::subset_sums(polyfp::factor_degree_pattern(F, f));
      std::set<int> keep;
      for (int k : common)
        if (sums.count(k)) keep.insert(k);
      common = keep;
    }
    if (common.empty()) {
      ++checked;
      ASSERT_TRUE(irreducible_over_Z(p).irreducible);
    }
  }
  EXPECT_GT(checked, 100);
}
