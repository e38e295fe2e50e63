#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arrmono/error.hpp"
#include "arrmono/galois_field.hpp"
#include "arrmono/random.hpp"

namespace arrmono {

using Fq = GaloisField::Elem;

/// Determinant of a k x k matrix over F_q (row-major, log form).
inline Fq det_fq(const GaloisField& F, std::vector<Fq> a, std::size_t k) {
  Fq det = F.one();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && F.is_zero(a[piv * k + c])) ++piv;
    if (piv == k) return F.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[piv * k + j], a[c * k + j]);
      det = F.neg(det);
    }
    det = F.mul(det, a[c * k + c]);
    const Fq inv = F.inv(a[c * k + c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      if (F.is_zero(a[r * k + c])) continue;
      const Fq f = F.mul(a[r * k + c], inv);
      for (std::size_t j = c; j < k; ++j) a[r * k + j] = F.sub(a[r * k + j], F.mul(f, a[c * k + j]));
    }
  }
  return det;
}

/// m hyperplanes of P^n over F_q; column j holds the coefficients of the
/// linear form l_j = sum_i b_ij x_i.
class Arrangement {
 public:
  Arrangement(int n, int m, FieldPtr field, std::vector<Fq> entries)
      : n_(n), m_(m), field_(std::move(field)), b_(std::move(entries)) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
    if (m % 2 != 0 || m < n + 3) fail(ErrorKind::BadParity, "need m even and m >= n + 3");
    if (b_.size() != static_cast<std::size_t>((n + 1) * m)) fail(ErrorKind::InvalidArgument, "entry count mismatch");
    for (int j = 0; j < m; ++j) {
      bool zero = true;
      for (int i = 0; i <= n; ++i) zero = zero && field_->is_zero(at(i, j));
      if (zero) fail(ErrorKind::InvalidArgument, "zero column " + std::to_string(j));
    }
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  const FieldPtr& field() const noexcept { return field_; }
  std::uint64_t q() const { return field_->order(); }
  Fq at(int i, int j) const { return b_[static_cast<std::size_t>(i * m_ + j)]; }
  const std::vector<Fq>& entries() const noexcept { return b_; }

  /// Same arrangement with column j multiplied by lambda.
  Arrangement with_scaled_column(int j, Fq lambda) const {
    auto e = b_;
    for (int i = 0; i <= n_; ++i) e[static_cast<std::size_t>(i * m_ + j)] = field_->mul(e[static_cast<std::size_t>(i * m_ + j)], lambda);
    return Arrangement(n_, m_, field_, std::move(e));
  }

  friend bool operator==(const Arrangement& a, const Arrangement& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.q() == b.q() && a.b_ == b.b_;
  }

 private:
  int n_, m_;
  FieldPtr field_;
  std::vector<Fq> b_;
};

namespace detail {

/// Calls f(cols) for every k-subset of {0..m-1} in lexicographic order;
/// stops early when f returns false.
template <class Fn>
bool for_each_subset(int m, int k, Fn&& f) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!f(c)) return false;
    int i = k;
    while (i > 0 && c[static_cast<std::size_t>(i - 1)] == m - k + i - 1) --i;
    if (i == 0) return true;
    ++c[static_cast<std::size_t>(i - 1)];
    for (int j = i; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/// Every maximal minor of the coefficient matrix is nonzero.
inline bool is_general_position(const Arrangement& arr) {
  const auto& F = *arr.field();
  const int k = arr.n() + 1;
  std::vector<Fq> sub(static_cast<std::size_t>(k * k));
  return detail::for_each_subset(arr.m(), k, [&](const std::vector<int>& cols) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i * k + j)] = arr.at(i, cols[static_cast<std::size_t>(j)]);
    return !F.is_zero(det_fq(F, sub, static_cast<std::size_t>(k)));
  });
}

/// Unique representative of the GL(n+1) x (column scaling) orbit: identity in
/// the first n+1 columns, all ones in column n+1, ones in row 0 afterwards.
inline Arrangement normal_form(const Arrangement& arr) {
  if (!is_general_position(arr)) fail(ErrorKind::NotGeneralPosition, "arrangement is not in general position");
  const auto& F = *arr.field();
  const int k = arr.n() + 1, m = arr.m();
  // Gauss-Jordan on [B | all columns] to get B^{-1} * M.
  std::vector<Fq> a(static_cast<std::size_t>(k * m));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i * m + j)] = arr.at(i, j);
  auto A = [&](int i, int j) -> Fq& { return a[static_cast<std::size_t>(i * m + j)]; };
  for (int c = 0; c < k; ++c) {
    int piv = c;
    while (F.is_zero(A(piv, c))) ++piv;
    for (int j = 0; j < m; ++j) std::swap(A(piv, j), A(c, j));
    const Fq inv = F.inv(A(c, c));
    for (int j = 0; j < m; ++j) A(c, j) = F.mul(A(c, j), inv);
    for (int r = 0; r < k; ++r) {
      if (r == c || F.is_zero(A(r, c))) continue;
      const Fq f = A(r, c);
      for (int j = 0; j < m; ++j) A(r, j) = F.sub(A(r, j), F.mul(f, A(c, j)));
    }
  }
  // Row scaling by 1/v_i makes column k all ones; compensate on the first k
  // columns by rescaling them back to the identity.
  for (int i = 0; i < k; ++i) {
    const Fq inv = F.inv(A(i, k));
    for (int j = k; j < m; ++j) A(i, j) = F.mul(A(i, j), inv);
  }
  for (int j = k + 1; j < m; ++j) {
    const Fq inv = F.inv(A(0, j));
    for (int i = 0; i < k; ++i) A(i, j) = F.mul(A(i, j), inv);
  }
  return Arrangement(arr.n(), m, arr.field(), std::move(a));
}

/// Distinct points of P^1 as normalized pairs [a : b]: (1, t) or (0, 1).
struct PointsOnLine {
  std::vector<std::pair<Fq, Fq>> pts;
};

inline std::pair<Fq, Fq> normalize_point(const GaloisField& F, Fq a, Fq b) {
  if (!F.is_zero(a)) return {F.one(), F.div(b, a)};
  if (F.is_zero(b)) fail(ErrorKind::InvalidArgument, "[0 : 0] is not a point");
  return {F.zero(), F.one()};
}

/// Column i = (a_i^n, a_i^{n-1} b_i, ..., b_i^n).
inline Arrangement hyperelliptic_image(const PointsOnLine& pts, int n, const FieldPtr& field) {
  const auto& F = *field;
  const int m = static_cast<int>(pts.pts.size());
  std::vector<std::pair<Fq, Fq>> norm;
  for (const auto& [a, b] : pts.pts) {
    auto np = normalize_point(F, a, b);
    for (const auto& o : norm)
      if (o == np) fail(ErrorKind::DuplicatePoints, "points on P^1 must be pairwise distinct");
    norm.push_back(np);
  }
  std::vector<Fq> e(static_cast<std::size_t>((n + 1) * m));
  for (int j = 0; j < m; ++j) {
    const auto [a, b] = pts.pts[static_cast<std::size_t>(j)];
    for (int i = 0; i <= n; ++i)
      e[static_cast<std::size_t>(i * m + j)] = F.mul(F.pow(a, static_cast<std::uint64_t>(n - i)), F.pow(b, static_cast<std::uint64_t>(i)));
  }
  return Arrangement(n, m, field, std::move(e));
}

inline Fq random_elem(const GaloisField& F, Rng& rng) { return F.from_packed(uniform_below(rng, F.order())); }

/// m distinct points of P^1(F_q) in random order, uniformly.
inline PointsOnLine random_points(int m, const FieldPtr& field, std::uint64_t seed) {
  const auto& F = *field;
  if (F.order() + 1 < static_cast<std::uint64_t>(m))
    fail(ErrorKind::SamplingExhausted, "P^1(F_q) has fewer than m points");
  Rng rng(seed);
  // Partial Fisher-Yates over P^1 indexed as 0..q-1 -> [1 : t], q -> [0 : 1].
  std::vector<std::uint64_t> idx;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  const std::uint64_t total = F.order() + 1;
  auto get = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (int i = 0; i < m; ++i) {
    const std::uint64_t j = i + uniform_below(rng, total - static_cast<std::uint64_t>(i));
    const std::uint64_t vi = get(static_cast<std::uint64_t>(i)), vj = get(j);
    swapped[static_cast<std::uint64_t>(i)] = vj;
    swapped[j] = vi;
    idx.push_back(vj);
  }
  PointsOnLine out;
  for (auto v : idx) {
    if (v == F.order()) out.pts.emplace_back(F.zero(), F.one());
    else out.pts.emplace_back(F.one(), F.from_packed(v));
  }
  return out;
}

inline constexpr int kMaxRejections = 100000;

/// Seeded uniform sample of a general-position arrangement. For n = 1 with
/// enough points on the line it draws distinct points directly; otherwise
/// it rejects random coefficient matrices.
inline Arrangement random_arrangement(int n, int m, const FieldPtr& field, std::uint64_t seed) {
  const auto& F = *field;
  if (n == 1 && F.order() + 1 >= static_cast<std::uint64_t>(m)) {
    const auto pts = random_points(m, field, seed);
    Rng rng(derive_seed(seed, "column-scale"));
    auto arr = hyperelliptic_image(pts, 1, field);
    for (int j = 0; j < m; ++j) arr = arr.with_scaled_column(j, F.from_packed(1 + uniform_below(rng, F.order() - 1)));
    return arr;
  }
  Rng rng(seed);
  const std::size_t cells = static_cast<std::size_t>((n + 1) * m);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<Fq> e(cells);
    for (auto& x : e) x = random_elem(F, rng);
    bool zero_col = false;
    for (int j = 0; j < m && !zero_col; ++j) {
      bool z = true;
      for (int i = 0; i <= n; ++i) z = z && F.is_zero(e[static_cast<std::size_t>(i * m + j)]);
      zero_col = z;
    }
    if (zero_col) continue;
    Arrangement arr(n, m, field, std::move(e));
    if (is_general_position(arr)) return arr;
  }
  fail(ErrorKind::SamplingExhausted, "no general-position arrangement after 10^5 draws (q too small for (n, m)?)");
}

/// Decomposes q = p^k with p an odd prime.
inline std::pair<std::uint32_t, unsigned> split_prime_power(std::uint64_t q) {
  const auto ps = prime_factors(q);
  if (ps.size() != 1) fail(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  unsigned k = 0;
  for (std::uint64_t x = q; x > 1; x /= ps[0]) ++k;
  if (ps[0] == 2) fail(ErrorKind::EvenModulus, "characteristic 2 is not supported");
  return {static_cast<std::uint32_t>(ps[0]), k};
}

/// Text format: a header line "n m q", then n+1 rows of m integers; row i,
/// column j holds b_ij, the coefficient of x_i in the j-th linear form.
/// Entries are packed residues sum c_t p^t in the basis of the field's
/// lexicographically least modulus (plain integers mod p when q = p).
/// Lines starting with '#' are ignored.
inline Arrangement read_arrangement(std::istream& in, FieldCache& cache = FieldCache::global()) {
  std::string line, text;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    text += line + "\n";
  }
  std::istringstream ss(text);
  long long n = 0, m = 0, q = 0;
  if (!(ss >> n >> m >> q)) fail(ErrorKind::ParseError, "missing header 'n m q'");
  if (n < 1 || m < 1 || q < 3) fail(ErrorKind::ParseError, "bad header values");
  const auto [p, k] = split_prime_power(static_cast<std::uint64_t>(q));
  auto field = cache.get(p, k);
  std::vector<Fq> e;
  for (long long i = 0; i < (n + 1) * m; ++i) {
    long long v;
    if (!(ss >> v)) fail(ErrorKind::ParseError, "expected " + std::to_string((n + 1) * m) + " entries");
    if (v < 0 || v >= q) fail(ErrorKind::ParseError, "entry " + std::to_string(v) + " out of range [0, q)");
    e.push_back(field->from_packed(static_cast<std::uint64_t>(v)));
  }
  long long extra;
  if (ss >> extra) fail(ErrorKind::ParseError, "trailing data after matrix");
  return Arrangement(static_cast<int>(n), static_cast<int>(m), field, std::move(e));
}

inline void write_arrangement(std::ostream& out, const Arrangement& arr) {
  out << arr.n() << ' ' << arr.m() << ' ' << arr.q() << '\n';
  for (int i = 0; i <= arr.n(); ++i) {
    for (int j = 0; j < arr.m(); ++j) out << (j ? " " : "") << arr.field()->to_packed(arr.at(i, j));
    out << '\n';
  }
}

}  // namespace arrmono
