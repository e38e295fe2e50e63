#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "arrmono/error.hpp"
#include "arrmono/poly_fp.hpp"
#include "arrmono/prime_field.hpp"

namespace arrmono {

/// Largest field order that gets discrete-log tables.
inline constexpr std::uint64_t kTableBudget = std::uint64_t{1} << 24;

/// F_{p^k} = F_p[t]/(f) for the lexicographically least monic irreducible f
/// of degree k, with the lexicographically least primitive element g.
///
/// Two element forms coexist:
///  - packed coefficient vectors, the integer sum(c_i p^i) of the residue
///    sum(c_i t^i); always available;
///  - discrete logs base g (`Elem`), zero flagged by `kZeroLog`; only when
///    the context was built with tables. This is the hot-path form: products
///    are additions of logs and sums go through the Zech table.
class GaloisField {
 public:
  struct Elem {
    std::uint32_t log;
    friend bool operator==(Elem a, Elem b) { return a.log == b.log; }
    friend bool operator!=(Elem a, Elem b) { return a.log != b.log; }
  };
  static constexpr std::uint32_t kZeroLog = 0xFFFFFFFFu;

  GaloisField(std::uint32_t p, unsigned k, bool with_tables = true) : base_(p), k_(k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "extension degree must be >= 1");
    order_ = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (order_ > (std::uint64_t{1} << 62) / p) fail(ErrorKind::TableBudgetExceeded, "field order does not fit in 63 bits");
      order_ *= p;
    }
    if (with_tables && order_ > kTableBudget)
      fail(ErrorKind::TableBudgetExceeded, "p^k = " + std::to_string(order_) + " exceeds the table budget 2^24");
    find_modulus();
    find_generator();
    if (with_tables) build_tables();
  }

  std::uint32_t characteristic() const noexcept { return base_.modulus(); }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return order_; }
  const PrimeField& prime_field() const noexcept { return base_; }
  const PolyFF& modulus() const noexcept { return modulus_; }
  std::uint64_t generator_packed() const noexcept { return gen_; }
  bool has_tables() const noexcept { return !exp_.empty(); }

  // ---- packed coefficient-vector arithmetic ----

  std::vector<std::uint32_t> unpack(std::uint64_t x) const {
    std::vector<std::uint32_t> c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = static_cast<std::uint32_t>(x % base_.modulus());
      x /= base_.modulus();
    }
    return c;
  }
  std::uint64_t pack(const PolyFF& a) const {
    std::uint64_t x = 0;
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) x = x * base_.modulus() + a[static_cast<std::size_t>(i)];
    return x;
  }
  std::uint64_t c_add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t p = base_.modulus();
    std::uint64_t r = 0, w = 1;
    for (unsigned i = 0; i < k_; ++i, a /= p, b /= p, w *= p) r += ((a % p + b % p) % p) * w;
    return r;
  }
  std::uint64_t c_neg(std::uint64_t a) const {
    const std::uint64_t p = base_.modulus();
    std::uint64_t r = 0, w = 1;
    for (unsigned i = 0; i < k_; ++i, a /= p, w *= p) r += ((p - a % p) % p) * w;
    return r;
  }
  std::uint64_t c_mul(std::uint64_t a, std::uint64_t b) const {
    return pack(polyfp::mulmod(base_, PolyFF(unpack(a)), PolyFF(unpack(b)), modulus_));
  }
  std::uint64_t c_pow(std::uint64_t a, std::uint64_t e) const {
    return pack(polyfp::powmod(base_, PolyFF(unpack(a)), e, modulus_));
  }
  /// Quadratic character through exponentiation; valid without tables.
  int c_quad_char(std::uint64_t a) const {
    if (a == 0) return 0;
    return c_pow(a, (order_ - 1) / 2) == 1 ? 1 : -1;
  }

  // ---- discrete-log arithmetic (requires tables) ----

  Elem zero() const { return {kZeroLog}; }
  Elem one() const { return {0}; }
  Elem gen() const { return {1 % static_cast<std::uint32_t>(order_ - 1)}; }
  bool is_zero(Elem a) const { return a.log == kZeroLog; }

  Elem from_packed(std::uint64_t x) const {
    require_tables();
    if (x >= order_) fail(ErrorKind::InvalidArgument, "packed value out of range");
    return {log_[x]};
  }
  std::uint64_t to_packed(Elem a) const {
    require_tables();
    return a.log == kZeroLog ? 0 : exp_[a.log];
  }
  /// Image of an integer under Z -> F_p -> F_{p^k}.
  Elem from_int(std::int64_t x) const { return from_packed(base_.from_int(x)); }

  Elem mul(Elem a, Elem b) const {
    if (a.log == kZeroLog || b.log == kZeroLog) return zero();
    std::uint64_t s = std::uint64_t{a.log} + b.log;
    return {static_cast<std::uint32_t>(s >= order_ - 1 ? s - (order_ - 1) : s)};
  }
  Elem inv(Elem a) const {
    if (a.log == kZeroLog) fail(ErrorKind::InvalidArgument, "inverse of zero");
    return {a.log == 0 ? 0 : static_cast<std::uint32_t>(order_ - 1 - a.log)};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    if (a.log == kZeroLog) return e == 0 ? one() : zero();
    return {static_cast<std::uint32_t>((static_cast<unsigned __int128>(a.log) * e) % (order_ - 1))};
  }
  Elem neg(Elem a) const {
    if (a.log == kZeroLog) return a;
    return mul(a, {minus_one_log()});
  }
  Elem add(Elem a, Elem b) const {
    if (a.log == kZeroLog) return b;
    if (b.log == kZeroLog) return a;
    const std::uint32_t n = static_cast<std::uint32_t>(order_ - 1);
    std::uint32_t d = b.log >= a.log ? b.log - a.log : b.log + n - a.log;
    const std::uint32_t z = zech_[d];
    if (z == kZeroLog) return zero();
    std::uint64_t s = std::uint64_t{a.log} + z;
    return {static_cast<std::uint32_t>(s >= n ? s - n : s)};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  /// Quadratic character: parity of the discrete log.
  int quad_char(Elem a) const {
    if (a.log == kZeroLog) return 0;
    return (a.log & 1u) ? -1 : 1;
  }

  std::uint32_t minus_one_log() const { return static_cast<std::uint32_t>((order_ - 1) / 2); }

  /// Zech logarithm: log(1 + g^e), or kZeroLog when 1 + g^e = 0.
  std::uint32_t zech(std::uint32_t e) const { return zech_[e]; }

  /// chi(1 + g^e) for e in [0, 2(Q-1)); the doubled length lets counting
  /// loops read at an offset without a modular reduction.
  const std::int8_t* one_plus_chi() const { return chi_one_plus_.data(); }

 private:
  void require_tables() const {
    if (exp_.empty()) fail(ErrorKind::TableBudgetExceeded, "field was built without log tables");
  }

  void find_modulus() {
    const std::uint32_t p = base_.modulus();
    if (k_ == 1) {
      modulus_ = PolyFF({0, 1});
      return;
    }
    std::uint64_t lower = 1;
    for (unsigned i = 0; i < k_; ++i) lower *= p;
    for (std::uint64_t idx = 0; idx < lower; ++idx) {
      std::vector<std::uint32_t> c(k_ + 1, 0);
      std::uint64_t x = idx;
      for (unsigned i = 0; i < k_; ++i, x /= p) c[i] = static_cast<std::uint32_t>(x % p);
      c[k_] = 1;
      PolyFF f(std::move(c));
      if (polyfp::is_irreducible(base_, f)) {
        modulus_ = f;
        return;
      }
    }
    fail(ErrorKind::InvalidArgument, "no irreducible modulus found");
  }

  void find_generator() {
    const auto primes = prime_factors(order_ - 1);
    for (std::uint64_t g = 1; g < order_; ++g) {
      bool ok = true;
      for (std::uint64_t r : primes) {
        if (c_pow(g, (order_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen_ = g;
        return;
      }
    }
    fail(ErrorKind::InvalidArgument, "no primitive element found");
  }

  void build_tables() {
    const std::uint64_t n = order_ - 1;
    exp_.resize(n);
    log_.assign(order_, kZeroLog);
    // Multiplication by g on packed vectors: shift, then fold t^k back in.
    const std::uint32_t p = base_.modulus();
    const auto gvec = unpack(gen_);
    std::vector<std::uint32_t> cur(k_, 0);
    cur[0] = 1;
    std::vector<std::uint64_t> tmp(2 * k_, 0);
    for (std::uint64_t e = 0; e < n; ++e) {
      std::uint64_t packed = 0;
      for (int i = static_cast<int>(k_) - 1; i >= 0; --i) packed = packed * p + cur[static_cast<std::size_t>(i)];
      if (log_[packed] != kZeroLog) fail(ErrorKind::InvalidArgument, "generator order check failed");
      exp_[e] = static_cast<std::uint32_t>(packed);
      log_[packed] = static_cast<std::uint32_t>(e);
      std::fill(tmp.begin(), tmp.end(), 0);
      for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j) tmp[i + j] += std::uint64_t(cur[i]) * gvec[j];
      for (auto& v : tmp) v %= p;
      for (int i = static_cast<int>(2 * k_) - 2; i >= static_cast<int>(k_); --i) {
        const std::uint64_t c = tmp[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        tmp[static_cast<std::size_t>(i)] = 0;
        for (unsigned j = 0; j < k_; ++j)
          tmp[i - k_ + j] = (tmp[i - k_ + j] + (p - modulus_.coeffs[j]) * c) % p;
      }
      for (unsigned i = 0; i < k_; ++i) cur[i] = static_cast<std::uint32_t>(tmp[i]);
    }
    zech_.resize(n);
    chi_one_plus_.resize(2 * n);
    for (std::uint64_t e = 0; e < n; ++e) {
      std::uint64_t x = exp_[e];
      // 1 + x only touches the constant coefficient.
      const std::uint64_t c0 = x % p;
      const std::uint64_t y = x - c0 + (c0 + 1) % p;
      zech_[e] = log_[y];
      const std::int8_t chi = y == 0 ? 0 : ((log_[y] & 1u) ? -1 : 1);
      chi_one_plus_[e] = chi;
      chi_one_plus_[e + n] = chi;
    }
  }

  PrimeField base_;
  unsigned k_;
  std::uint64_t order_ = 0;
  PolyFF modulus_;
  std::uint64_t gen_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::int8_t> chi_one_plus_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

inline FieldPtr build_ext_field(std::uint32_t p, unsigned k, bool with_tables = true) {
  build_prime_field(p);
  return std::make_shared<const GaloisField>(p, k, with_tables);
}

/// Log multiplier L of the embedding F_{p^a} -> F_{p^b} (a | b): the element
/// g_src^e maps to g_tgt^{e*L}. The image of t is the first root of the
/// source modulus met while scanning the subfield g_tgt^{j(P-1)/(Q-1)}, so the
/// map is a ring homomorphism, not merely multiplicative.
inline std::uint64_t embedding_log_multiplier(const GaloisField& src, const GaloisField& tgt) {
  if (src.characteristic() != tgt.characteristic() || tgt.degree() % src.degree() != 0)
    fail(ErrorKind::IncompatibleDegrees, "F_{p^" + std::to_string(src.degree()) + "} does not embed in F_{p^" +
                                             std::to_string(tgt.degree()) + "}");
  using E = GaloisField::Elem;
  const std::uint64_t Q = src.order(), P = tgt.order();
  const std::uint64_t step = (P - 1) / (Q - 1);
  const auto& f = src.modulus();
  auto eval = [&](const PolyFF& poly, E x) {
    E acc = tgt.zero();
    for (int i = poly.degree(); i >= 0; --i) acc = tgt.add(tgt.mul(acc, x), tgt.from_int(poly[static_cast<std::size_t>(i)]));
    return acc;
  };
  E root = tgt.zero();
  if (src.degree() > 1) {
    bool found = false;
    for (std::uint64_t j = 0; j < Q - 1 && !found; ++j) {
      const E y{static_cast<std::uint32_t>((j * step) % (P - 1))};
      if (tgt.is_zero(eval(f, y))) {
        root = y;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::IncompatibleDegrees, "source modulus has no root in target field");
  }
  const PolyFF gpoly(src.unpack(src.generator_packed()));
  const E image = src.degree() > 1 ? eval(gpoly, root) : tgt.from_int(gpoly[0]);
  return image.log;
}

inline GaloisField::Elem embed_subfield(GaloisField::Elem x, const GaloisField& src, const GaloisField& tgt) {
  const std::uint64_t L = embedding_log_multiplier(src, tgt);
  if (src.is_zero(x)) return tgt.zero();
  return {static_cast<std::uint32_t>((static_cast<unsigned __int128>(x.log) * L) % (tgt.order() - 1))};
}

/// Shared immutable contexts keyed by (p, k), plus cached embeddings.
class FieldCache {
 public:
  FieldPtr get(std::uint32_t p, unsigned k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(p, k);
    auto it = fields_.find(key);
    if (it != fields_.end()) return it->second;
    auto f = build_ext_field(p, k, true);
    fields_.emplace(key, f);
    return f;
  }

  std::uint64_t log_multiplier(const FieldPtr& src, const FieldPtr& tgt) {
    const auto key = std::make_tuple(src->characteristic(), src->degree(), tgt->degree());
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = embeds_.find(key);
      if (it != embeds_.end()) return it->second;
    }
    const std::uint64_t L = embedding_log_multiplier(*src, *tgt);
    std::lock_guard<std::mutex> lock(mu_);
    embeds_.emplace(key, L);
    return L;
  }

  static FieldCache& global() {
    static FieldCache cache;
    return cache;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> fields_;
  std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::uint64_t> embeds_;
};

}  // namespace arrmono
