#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include "arrmono/arrangement.hpp"
#include "arrmono/bigint.hpp"
#include "arrmono/error.hpp"
#include "arrmono/galois_field.hpp"
#include "arrmono/linalg.hpp"
#include "arrmono/poly_fp.hpp"
#include "arrmono/prime_field.hpp"

namespace arrmono {

struct CountOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

namespace detail {

/// sum_{e < len} prod_t arrs[t][e] for arrays with entries in {-1, 0, 1}.
inline std::int64_t sign_product_sum(const std::int8_t* const* arrs, std::size_t K, std::size_t len) {
  std::int64_t total = 0;
  std::size_t e = 0;
#if defined(__AVX2__)
  const __m256i zero = _mm256_setzero_si256();
  const __m256i bias = _mm256_set1_epi8(static_cast<char>(0x80));
  while (e + 32 <= len) {
    // int8 accumulators hold at most 127 steps before they must be flushed.
    const std::size_t steps = std::min<std::size_t>(127, (len - e) / 32);
    __m256i acc = zero;
    for (std::size_t s = 0; s < steps; ++s, e += 32) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(arrs[0] + e));
      for (std::size_t t = 1; t < K; ++t)
        v = _mm256_sign_epi8(v, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(arrs[t] + e)));
      acc = _mm256_add_epi8(acc, v);
    }
    const __m256i sums = _mm256_sad_epu8(_mm256_xor_si256(acc, bias), zero);
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), sums);
    total += static_cast<std::int64_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]) - 128 * 32;
  }
#endif
  for (; e < len; ++e) {
    int v = arrs[0][e];
    for (std::size_t t = 1; t < K; ++t) v *= arrs[t][e];
    total += v;
  }
  return total;
}

inline std::uint64_t points_of_projective_space(std::uint64_t Q, int n) {
  std::uint64_t s = 0, w = 1;
  for (int j = 0; j <= n; ++j, w *= Q) s += w;
  return s;
}

}  // namespace detail

/// Log-form coefficients of an arrangement after embedding into F_{q^i}.
struct EmbeddedArrangement {
  FieldPtr field;
  int n, m;
  std::vector<Fq> b;  // row-major (n+1) x m
  Fq at(int i, int j) const { return b[static_cast<std::size_t>(i * m + j)]; }
};

inline EmbeddedArrangement embed_arrangement(const Arrangement& arr, unsigned i, FieldCache& cache = FieldCache::global()) {
  if (i < 1) fail(ErrorKind::InvalidArgument, "extension index must be >= 1");
  const auto& src = arr.field();
  const unsigned k = src->degree() * i;
  std::uint64_t Q = 1;
  for (unsigned t = 0; t < k; ++t) {
    Q *= src->characteristic();
    if (Q > kTableBudget)
      fail(ErrorKind::TableBudgetExceeded, "q^" + std::to_string(i) + " exceeds the table budget 2^24");
  }
  EmbeddedArrangement out{cache.get(src->characteristic(), k), arr.n(), arr.m(), {}};
  const std::uint64_t L = i == 1 ? 1 : cache.log_multiplier(src, out.field);
  out.b.reserve(arr.entries().size());
  for (Fq x : arr.entries()) {
    if (src->is_zero(x)) out.b.push_back(out.field->zero());
    else out.b.push_back({static_cast<std::uint32_t>((static_cast<unsigned __int128>(x.log) * L) % (Q - 1))});
  }
  return out;
}

/// N_i: points of the double cover x^2 = prod_j l_j over F_{q^i}, i.e.
/// #P^n(F_Q) + sum over normalized x of chi(prod_j l_j(x)).
///
/// Points are enumerated as (0..0, 1, x_{r+1}, ..., x_n). For a fixed
/// prefix the last coordinate runs over 0 and g^e; each form is then
/// A_j + c_j g^e and chi(A_j + c_j g^e) = chi(A_j) chi(1 + (c_j/A_j) g^e),
/// a shifted read of the chi(1 + g^e) table.
inline std::int64_t count_points(const Arrangement& arr, unsigned i, const CountOptions& opts = {}) {
  const EmbeddedArrangement E = embed_arrangement(arr, i);
  const GaloisField& F = *E.field;
  const std::uint64_t Q = F.order();
  const std::size_t N1 = static_cast<std::size_t>(Q - 1);
  const int n = E.n, m = E.m;
  const std::int8_t* S = F.one_plus_chi();
  std::vector<std::int8_t> alt(N1);
  for (std::size_t e = 0; e < N1; ++e) alt[e] = (e & 1) ? -1 : 1;

  // Work items: pivot r in [0, n) and a prefix index in [0, Q^{n-1-r}).
  std::vector<std::uint64_t> starts;
  std::uint64_t total_items = 0;
  for (int r = 0; r < n; ++r) {
    starts.push_back(total_items);
    std::uint64_t c = 1;
    for (int t = 0; t < n - 1 - r; ++t) c *= Q;
    total_items += c;
  }

  auto line_sum = [&](const std::vector<Fq>& A) -> std::int64_t {
    int sign = 1;
    int alt_count = 0;
    std::int64_t at_zero = 1;
    const std::int8_t* ptrs[64];
    std::size_t K = 0;
    bool dead = false;
    for (int j = 0; j < m; ++j) {
      const Fq a = A[static_cast<std::size_t>(j)], c = E.at(n, j);
      at_zero *= F.quad_char(a);
      if (F.is_zero(c)) {
        sign *= F.quad_char(a);
        if (F.is_zero(a)) dead = true;
      } else if (F.is_zero(a)) {
        sign *= F.quad_char(c);
        ++alt_count;
      } else {
        sign *= F.quad_char(a);
        const std::uint32_t off = c.log >= a.log ? c.log - a.log : static_cast<std::uint32_t>(c.log + N1 - a.log);
        ptrs[K++] = S + off;
      }
    }
    if (dead) return at_zero;
    if (alt_count % 2) ptrs[K++] = alt.data();
    const std::int64_t body = K == 0 ? static_cast<std::int64_t>(N1) : detail::sign_product_sum(ptrs, K, N1);
    return at_zero + sign * body;
  };

  auto work = [&](std::uint64_t lo, std::uint64_t hi) -> std::int64_t {
    std::int64_t acc = 0;
    std::vector<Fq> A(static_cast<std::size_t>(m));
    std::vector<Fq> x(static_cast<std::size_t>(n + 1));
    for (std::uint64_t item = lo; item < hi; ++item) {
      int r = n - 1;
      while (starts[static_cast<std::size_t>(r)] > item) --r;
      std::uint64_t t = item - starts[static_cast<std::size_t>(r)];
      for (int c = r + 1; c < n; ++c, t /= Q) {
        const std::uint64_t digit = t % Q;
        x[static_cast<std::size_t>(c)] = digit == 0 ? F.zero() : Fq{static_cast<std::uint32_t>(digit - 1)};
      }
      for (int j = 0; j < m; ++j) {
        Fq a = E.at(r, j);
        for (int c = r + 1; c < n; ++c) a = F.add(a, F.mul(E.at(c, j), x[static_cast<std::size_t>(c)]));
        A[static_cast<std::size_t>(j)] = a;
      }
      acc += line_sum(A);
    }
    return acc;
  };

  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total_items)));
  std::int64_t chi_sum = 0;
  if (threads <= 1) {
    chi_sum = work(0, total_items);
  } else {
    std::vector<std::int64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t lo = total_items * w / threads, hi = total_items * (w + 1) / threads;
      pool.emplace_back([&, w, lo, hi] { partial[w] = work(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (auto v : partial) chi_sum += v;
  }
  // The point (0 : ... : 0 : 1).
  int last = 1;
  for (int j = 0; j < m; ++j) last *= F.quad_char(E.at(n, j));
  chi_sum += last;
  return static_cast<std::int64_t>(detail::points_of_projective_space(Q, n)) + chi_sum;
}

// ---------------------------------------------------------------------------
// Frobenius characteristic polynomial

struct ZetaOptions {
  CountOptions count;
  /// For odd n the pairing is alternating, so P is fixed by its first d/2
  /// power sums. When set, towers past the table budget are finished with
  /// the functional equation instead of failing.
  bool allow_symplectic_half = false;
};

struct ZetaRecord {
  Arrangement arr;
  std::uint64_t q = 0;
  std::size_t d = 0;
  std::vector<std::int64_t> counts;  // N_1, N_2, ...
  std::vector<BigInt> traces;        // a_1, a_2, ...
  PolyZ P;
  bool half = false;
  bool degree_ok = false;
  bool weil_ok = false;
  bool funceq_ok = false;
  int sign = 0;

  int n() const { return arr.n(); }
  int m() const { return arr.m(); }
  bool all_ok() const { return degree_ok && weil_ok && funceq_ok; }
};

inline std::size_t zeta_degree(int n, int m) { return static_cast<std::size_t>(binomial_u64(static_cast<unsigned>(m - 2), static_cast<unsigned>(n))); }

inline BigInt trace_from_count(std::int64_t N, std::uint64_t q, unsigned i, int n) {
  const BigInt Q = ipow(BigInt(q), i);
  BigInt s = 0, w = 1;
  for (int j = 0; j <= n; ++j, w *= Q) s += w;
  BigInt a = BigInt(N) - s;
  return n % 2 ? BigInt(-a) : a;
}

/// Sign eps with T^d P(q^n / T) = eps q^{nd/2} P(T), or 0 if neither works.
inline int functional_equation_sign(const PolyZ& P, std::uint64_t q, int n) {
  const int d = P.degree();
  if (d < 0 || (static_cast<long long>(n) * d) % 2) return 0;
  const BigInt qn = ipow(BigInt(q), static_cast<unsigned>(n));
  const BigInt mid = ipow(BigInt(q), static_cast<unsigned>(n * d / 2));
  for (int eps : {1, -1}) {
    bool ok = true;
    for (int k = 0; k <= d && ok; ++k) {
      const BigInt lhs = P[static_cast<std::size_t>(k)] * ipow(qn, static_cast<unsigned>(k));
      const BigInt rhs = eps * mid * P[static_cast<std::size_t>(d - k)];
      ok = lhs == rhs;
    }
    if (ok) return eps;
  }
  return 0;
}

/// |e_k| <= C(d,k) q^{nk/2} on the elementary symmetric functions of the roots.
inline bool weil_coefficient_bounds(const PolyZ& P, std::uint64_t q, int n) {
  const int d = P.degree();
  for (int k = 0; k <= d; ++k) {
    const BigInt e = P[static_cast<std::size_t>(d - k)];
    const BigInt c = binomial(static_cast<unsigned>(d), static_cast<unsigned>(k));
    if (e * e > c * c * ipow(BigInt(q), static_cast<unsigned>(n * k))) return false;
  }
  return true;
}

namespace detail {

/// Degree-d polynomial from its first d/2 traces, assuming the symplectic
/// symmetry e_{d-k} = q^{n(d/2-k)} e_k.
inline PolyZ symplectic_completion(std::span<const BigInt> traces, std::size_t d, std::uint64_t q, int n) {
  const std::size_t h = d / 2;
  const PolyZ low = newton_charpoly(traces.first(h), h);
  std::vector<BigInt> e(d + 1, 0);
  for (std::size_t k = 0; k <= h; ++k) {
    const BigInt c = low[h - k];
    e[k] = k % 2 ? BigInt(-c) : c;
  }
  for (std::size_t k = 0; k < h; ++k) e[d - k] = ipow(BigInt(q), static_cast<unsigned>(n * (h - k))) * e[k];
  std::vector<BigInt> c(d + 1);
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = k % 2 ? BigInt(-e[k]) : e[k];
  return PolyZ(std::move(c));
}

}  // namespace detail

inline ZetaRecord frobenius_charpoly(const Arrangement& arr, const ZetaOptions& opts = {}) {
  if (!is_general_position(arr)) fail(ErrorKind::NotGeneralPosition, "arrangement is not in general position");
  const int n = arr.n();
  const std::uint64_t q = arr.q();
  const std::size_t d = zeta_degree(n, arr.m());
  ZetaRecord rec{arr, q, d, {}, {}, {}, false, false, false, false, 0};

  auto fits = [&](std::size_t levels) {
    unsigned __int128 Q = 1;
    for (std::size_t i = 0; i < levels; ++i) {
      Q *= q;
      if (Q > kTableBudget) return false;
    }
    return true;
  };
  std::size_t levels = d;
  if (!fits(d)) {
    if (!(opts.allow_symplectic_half && n % 2 == 1 && fits(d / 2)))
      fail(ErrorKind::TableBudgetExceeded, "q^" + std::to_string(d) + " exceeds the table budget 2^24");
    levels = d / 2;
    rec.half = true;
  }
  for (std::size_t i = 1; i <= levels; ++i) {
    rec.counts.push_back(count_points(arr, static_cast<unsigned>(i), opts.count));
    rec.traces.push_back(trace_from_count(rec.counts.back(), q, static_cast<unsigned>(i), n));
  }
  try {
    if (!rec.half) {
      rec.P = newton_charpoly(rec.traces, d);
    } else {
      rec.P = detail::symplectic_completion(rec.traces, d, q, n);
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NonIntegralDivision) fail(ErrorKind::InconsistentCounts, err.what());
    throw;
  }
  rec.degree_ok = rec.P.degree() == static_cast<int>(d) && rec.P.is_monic();
  bool traces_ok = true;
  for (std::size_t i = 0; i < rec.traces.size(); ++i) {
    const BigInt bound = BigInt(d) * BigInt(d) * ipow(BigInt(q), static_cast<unsigned>((i + 1) * n));
    traces_ok = traces_ok && rec.traces[i] * rec.traces[i] <= bound;
  }
  rec.weil_ok = traces_ok && weil_coefficient_bounds(rec.P, q, n);
  rec.sign = functional_equation_sign(rec.P, q, n);
  rec.funceq_ok = rec.sign != 0;
  return rec;
}

/// Power sums of the roots of a monic polynomial (Newton's identities run
/// forward), used to recover point counts from P.
inline std::vector<BigInt> power_sums(const PolyZ& P, std::size_t count) {
  const int d = P.degree();
  std::vector<BigInt> e(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    const BigInt c = P[static_cast<std::size_t>(d - k)];
    e[static_cast<std::size_t>(k)] = k % 2 ? BigInt(-c) : c;
  }
  std::vector<BigInt> p(count + 1, 0);
  for (std::size_t k = 1; k <= count; ++k) {
    BigInt acc = 0;
    for (std::size_t j = 1; j < k && j <= static_cast<std::size_t>(d); ++j) {
      const BigInt term = e[j] * p[k - j];
      acc += j % 2 ? term : BigInt(-term);
    }
    if (k <= static_cast<std::size_t>(d)) acc += (k % 2 ? 1 : -1) * BigInt(k) * e[k];
    p[k] = acc;
  }
  p.erase(p.begin());
  return p;
}

// ---------------------------------------------------------------------------
// Reduction mod l

/// s^{-d} P(sT) mod l for the smallest s with s^2 = q^n: the characteristic
/// polynomial of Frobenius divided by a square root of its multiplier.
inline PolyFF normalize_mod_ell(const ZetaRecord& rec, const PrimeField& Fl) {
  const std::uint32_t l = Fl.modulus();
  if (rec.q % l == 0) fail(ErrorKind::InvalidArgument, "l must differ from the characteristic");
  const std::uint32_t mu = Fl.pow(Fl.from_int(static_cast<std::int64_t>(rec.q % l)), static_cast<std::uint64_t>(rec.n()));
  if (!Fl.is_square(mu)) fail(ErrorKind::NonSquareMultiplier, "q^n is not a square mod l");
  const std::uint32_t s = Fl.smallest_sqrt(mu);
  const std::uint32_t sinv = Fl.inv(s);
  PolyFF red = poly_reduce_mod(rec.P, Fl);
  const int d = rec.P.degree();
  for (int k = 0; k <= d; ++k) {
    auto& c = red.coeffs[static_cast<std::size_t>(k)];
    c = Fl.mul(c, Fl.pow(sinv, static_cast<std::uint64_t>(d - k)));
  }
  red.trim();
  return red;
}

// ---------------------------------------------------------------------------
// Irreducibility over Z

struct IrreducibilityVerdict {
  enum class Method { ModPrimeCertificate, ExhaustiveMignotte };
  bool irreducible = false;
  Method method = Method::ExhaustiveMignotte;
  std::uint32_t prime = 0;          // certificate prime
  std::optional<PolyZ> witness;     // monic factor when reducible
};

inline std::string_view to_string(IrreducibilityVerdict::Method m) {
  return m == IrreducibilityVerdict::Method::ModPrimeCertificate ? "mod_prime" : "exhaustive_mignotte";
}

inline constexpr int kIrreducibilityDegreeBudget = 12;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, g = 1;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    while (g == 1) {
      x = f(x);
      y = f(f(y));
      g = std::gcd(x > y ? x - y : y - x, n);
    }
    if (g != n) return g;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (probable_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t f = pollard_rho(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

/// Positive divisors of n > 0.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::uint64_t> divs{1};
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    const std::size_t base = divs.size();
    std::uint64_t pw = 1;
    for (std::size_t e = i; e < j; ++e) {
      pw *= primes[i];
      for (std::size_t t = 0; t < base; ++t) divs.push_back(divs[t] * pw);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Subset sums of a factor-degree pattern.
inline std::set<int> subset_sums(const std::vector<int>& degs) {
  std::set<int> s{0};
  for (int d : degs) {
    std::set<int> next = s;
    for (int x : s) next.insert(x + d);
    s = std::move(next);
  }
  return s;
}

}  // namespace detail

/// Monic integer polynomial irreducibility. Fast path: a squarefree reduction
/// mod a small prime that stays irreducible. Slow path: every monic integer
/// factor g of degree k is pinned down by its values at k integer points,
/// each a divisor of P there; all such candidates with coefficients inside
/// the Mignotte bound 2^deg * sum|c| are interpolated and trial-divided.
/// Factor degrees incompatible with some mod-p pattern are skipped.
inline IrreducibilityVerdict irreducible_over_Z(const PolyZ& p) {
  using V = IrreducibilityVerdict;
  if (!p.is_monic() || p.degree() < 1) fail(ErrorKind::InvalidArgument, "need a monic polynomial of degree >= 1");
  const int deg = p.degree();
  if (deg > kIrreducibilityDegreeBudget) fail(ErrorKind::DegreeBudgetExceeded, "degree exceeds 12");

  std::vector<std::vector<int>> patterns;
  for (std::uint32_t prime : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    const PrimeField F(prime);
    const PolyFF f = poly_reduce_mod(p, F);
    if (polyfp::gcd(F, f, polyfp::derivative(F, f)).degree() != 0) continue;
    auto pat = polyfp::factor_degree_pattern(F, f);
    if (pat.size() == 1) return V{true, V::Method::ModPrimeCertificate, prime, std::nullopt};
    patterns.push_back(std::move(pat));
  }
  std::vector<std::set<int>> sums;
  for (const auto& pat : patterns) sums.push_back(detail::subset_sums(pat));

  BigInt coeff_sum = 0;
  for (const auto& c : p.coeffs) coeff_sum += c < 0 ? BigInt(-c) : c;
  const BigInt bound = ipow(BigInt(2), static_cast<unsigned>(deg)) * coeff_sum;

  // Candidate evaluation points: 0, 1, -1, 2, -2, ...
  struct Node {
    long long x;
    std::vector<std::uint64_t> divs;
    BigInt value;
  };
  std::vector<Node> nodes;
  for (long long t = 0; nodes.size() < static_cast<std::size_t>(deg) + 8 && t < 400; ++t) {
    const long long x = t % 2 ? (t + 1) / 2 : -(t / 2);
    const BigInt v = p.eval(BigInt(x));
    if (v == 0) return V{false, V::Method::ExhaustiveMignotte, 0, PolyZ(std::vector<BigInt>{BigInt(-x), BigInt(1)})};
    const BigInt mag = v < 0 ? BigInt(-v) : v;
    if (mag > BigInt(std::numeric_limits<std::int64_t>::max())) continue;
    nodes.push_back({x, detail::divisors(static_cast<std::uint64_t>(mag)), v});
  }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.divs.size() < b.divs.size(); });

  for (int k = 1; 2 * k <= deg; ++k) {
    bool possible = true;
    for (const auto& s : sums) possible = possible && s.count(k);
    if (!possible) continue;
    if (nodes.size() < static_cast<std::size_t>(k)) fail(ErrorKind::DegreeBudgetExceeded, "not enough factorable evaluation points");
    std::vector<const Node*> use;
    for (int j = 0; j < k; ++j) use.push_back(&nodes[static_cast<std::size_t>(j)]);
    // base = prod (T - x_j); the candidate is base + h with h(x_j) = value_j.
    PolyZ base = PolyZ::from_ints({1});
    for (const Node* nd : use) base = base * PolyZ(std::vector<BigInt>{BigInt(-nd->x), BigInt(1)});
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<int> sgn(static_cast<std::size_t>(k), 1);
    while (true) {
      // Newton divided differences over the integers.
      std::vector<BigInt> dd(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j)
        dd[static_cast<std::size_t>(j)] = sgn[static_cast<std::size_t>(j)] * BigInt(use[static_cast<std::size_t>(j)]->divs[idx[static_cast<std::size_t>(j)]]);
      bool integral = true;
      for (int lvl = 1; lvl < k && integral; ++lvl)
        for (int j = k - 1; j >= lvl; --j) {
          const BigInt num = dd[static_cast<std::size_t>(j)] - dd[static_cast<std::size_t>(j - 1)];
          const long long den = use[static_cast<std::size_t>(j)]->x - use[static_cast<std::size_t>(j - lvl)]->x;
          if (num % den != 0) {
            integral = false;
            break;
          }
          dd[static_cast<std::size_t>(j)] = num / den;
        }
      if (integral) {
        PolyZ h, basis = PolyZ::from_ints({1});
        for (int j = 0; j < k; ++j) {
          std::vector<BigInt> sc(basis.coeffs);
          for (auto& c : sc) c *= dd[static_cast<std::size_t>(j)];
          h = h + PolyZ(std::move(sc));
          basis = basis * PolyZ(std::vector<BigInt>{BigInt(-use[static_cast<std::size_t>(j)]->x), BigInt(1)});
        }
        const PolyZ g = base + h;
        bool in_box = true;
        for (const auto& c : g.coeffs) in_box = in_box && (c < 0 ? BigInt(-c) : c) <= bound;
        PolyZ quot;
        if (in_box && divide_exact(p, g, quot)) return V{false, V::Method::ExhaustiveMignotte, 0, g};
      }
      // Odometer over (divisor index, sign) per node.
      int j = 0;
      for (; j < k; ++j) {
        auto& s = sgn[static_cast<std::size_t>(j)];
        if (s == 1) {
          s = -1;
          break;
        }
        s = 1;
        if (++idx[static_cast<std::size_t>(j)] < use[static_cast<std::size_t>(j)]->divs.size()) break;
        idx[static_cast<std::size_t>(j)] = 0;
      }
      if (j == k) break;
    }
  }
  return V{true, V::Method::ExhaustiveMignotte, 0, std::nullopt};
}

}  // namespace arrmono
