#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "arrmono/bigint.hpp"
#include "arrmono/classical_groups.hpp"
#include "arrmono/error.hpp"
#include "arrmono/linalg.hpp"
#include "arrmono/random.hpp"

namespace arrmono {

inline constexpr std::uint64_t kBsgsDomainBudget = 10'000'000;

/// Base and strong generating set for a matrix group over F_l acting on the
/// nonzero vectors of F_l^dim. Vectors are encoded as sum v_i l^i.
///
/// Construction: seeded random Schreier-Sims, then a deterministic check of
/// every Schreier generator. When the caller supplies an upper bound on the
/// order (the order of an overgroup), reaching it ends construction early:
/// the product of basic orbit lengths never exceeds the true order, so
/// equality with an overgroup's order is itself a certificate.
class Bsgs {
 public:
  using Mat = std::vector<std::uint16_t>;

  struct Options {
    std::optional<BigInt> order_bound;
    std::size_t quiet_sifts = 32;
    bool verify = true;
  };

  static Bsgs build(const PrimeField& F, std::size_t dim, std::span<const MatFF> gens, std::uint64_t seed,
                    const Options& opts) {
    Bsgs b(F, dim);
    b.run(gens, seed, opts);
    return b;
  }
  static Bsgs build(const PrimeField& F, std::size_t dim, std::span<const MatFF> gens, std::uint64_t seed) {
    return build(F, dim, gens, seed, Options{});
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& lv : levels_) r *= lv.points.size();
    return r;
  }
  std::size_t base_length() const { return levels_.size(); }
  std::vector<std::size_t> orbit_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& lv : levels_) out.push_back(lv.points.size());
    return out;
  }
  /// True when construction stopped on the supplied order bound.
  bool certified_by_bound() const { return by_bound_; }
  std::size_t strong_generator_count() const { return strong_.size(); }

  bool contains(const MatFF& g) const {
    if (g.rows() != dim_ || g.cols() != dim_) return false;
    Mat h = to_mat(g);
    std::size_t level = 0;
    sift(h, 0, level);
    return level == levels_.size() && is_identity(h);
  }

  /// Uniform element: independent uniform coset representatives per level.
  MatFF sample(Rng& rng) const {
    Mat g = identity();
    for (const auto& lv : levels_) {
      const std::size_t idx = uniform_below(rng, lv.points.size());
      g = mul(g, lv.reps[idx]);
    }
    return to_matff(g);
  }

  /// Element whose coset index at level i is idx[i]; every element arises
  /// from exactly one index vector.
  MatFF element(std::span<const std::size_t> idx) const {
    if (idx.size() != levels_.size()) fail(ErrorKind::InvalidArgument, "one coset index per level");
    Mat g = identity();
    for (std::size_t i = 0; i < levels_.size(); ++i) g = mul(g, levels_[i].reps.at(idx[i]));
    return to_matff(g);
  }

  const PrimeField& field() const { return F_; }
  std::size_t dim() const { return dim_; }

 private:
  struct Level {
    std::uint32_t base;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<std::uint32_t> points;
    std::vector<Mat> reps;      // reps[i](base) = points[i]
    std::vector<Mat> inv_reps;
    std::unordered_map<std::uint32_t, std::uint32_t> where;
    std::size_t checked_points = 0;
    std::size_t checked_gens = 0;
  };

  Bsgs(const PrimeField& F, std::size_t dim) : F_(F), dim_(dim) {
    std::uint64_t dom = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      dom *= F.modulus();
      if (dom > kBsgsDomainBudget + 1)
        fail(ErrorKind::DomainBudgetExceeded, "l^dim exceeds the permutation-domain budget 10^7");
    }
    if (F.modulus() > 65535) fail(ErrorKind::DomainBudgetExceeded, "modulus too large for packed matrices");
  }

  Mat identity() const {
    Mat m(dim_ * dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) m[i * dim_ + i] = 1;
    return m;
  }
  bool is_identity(const Mat& m) const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (m[i * dim_ + j] != (i == j ? 1 : 0)) return false;
    return true;
  }
  Mat to_mat(const MatFF& g) const {
    Mat m(dim_ * dim_);
    for (std::size_t i = 0; i < dim_ * dim_; ++i) m[i] = static_cast<std::uint16_t>(g.data()[i]);
    return m;
  }
  MatFF to_matff(const Mat& m) const {
    MatFF g(F_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) g(i, j) = m[i * dim_ + j];
    return g;
  }
  Mat mul(const Mat& a, const Mat& b) const {
    Mat r(dim_ * dim_);
    const std::uint32_t p = F_.modulus();
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < dim_; ++k) acc += std::uint32_t(a[i * dim_ + k]) * b[k * dim_ + j];
        r[i * dim_ + j] = static_cast<std::uint16_t>(acc % p);
      }
    return r;
  }
  Mat inverse(const Mat& a) const { return to_mat(inverse_ff(to_matff(a))); }

  std::uint32_t image(const Mat& m, std::uint32_t pt) const {
    const std::uint32_t p = F_.modulus();
    std::uint32_t v[64];
    for (std::size_t i = 0; i < dim_; ++i) {
      v[i] = pt % p;
      pt /= p;
    }
    std::uint32_t out = 0;
    for (std::size_t i = dim_; i-- > 0;) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < dim_; ++j) acc += std::uint32_t(m[i * dim_ + j]) * v[j];
      out = out * p + static_cast<std::uint32_t>(acc % p);
    }
    return out;
  }

  /// Sifts h from `start`; `level` receives the level where it dropped out
  /// (levels_.size() when it passed through every level).
  void sift(Mat& h, std::size_t start, std::size_t& level) const {
    for (level = start; level < levels_.size(); ++level) {
      const auto& lv = levels_[level];
      const std::uint32_t pt = image(h, lv.base);
      auto it = lv.where.find(pt);
      if (it == lv.where.end()) return;
      h = mul(lv.inv_reps[it->second], h);
    }
  }

  std::uint32_t moved_basis_vector(const Mat& h) const {
    std::uint32_t pw = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (image(h, pw) != pw) return pw;
      pw *= F_.modulus();
    }
    fail(ErrorKind::InvalidArgument, "identity has no moved point");
  }

  void add_point(Level& lv, std::uint32_t pt, Mat rep) {
    lv.where.emplace(pt, static_cast<std::uint32_t>(lv.points.size()));
    lv.points.push_back(pt);
    lv.inv_reps.push_back(inverse(rep));
    lv.reps.push_back(std::move(rep));
  }

  /// Adds strong generator `gi` to `lv` and closes the orbit.
  void extend(Level& lv, std::size_t gi) {
    lv.gens.push_back(gi);
    std::size_t old = lv.points.size();
    for (std::size_t i = 0; i < old; ++i) {
      const Mat& s = strong_[gi];
      const std::uint32_t q = image(s, lv.points[i]);
      if (!lv.where.count(q)) add_point(lv, q, mul(s, lv.reps[i]));
    }
    for (std::size_t i = old; i < lv.points.size(); ++i) {
      for (std::size_t g : lv.gens) {
        const Mat& s = strong_[g];
        const std::uint32_t q = image(s, lv.points[i]);
        if (!lv.where.count(q)) add_point(lv, q, mul(s, lv.reps[i]));
      }
    }
  }

  /// Installs a residue that fixes the first `level` base points.
  void install(Mat h, std::size_t level) {
    if (level == levels_.size()) {
      Level lv;
      lv.base = moved_basis_vector(h);
      add_point(lv, lv.base, identity());
      levels_.push_back(std::move(lv));
    }
    strong_.push_back(std::move(h));
    const std::size_t gi = strong_.size() - 1;
    for (std::size_t i = 0; i <= level; ++i) extend(levels_[i], gi);
  }

  bool reached(const Options& opts) const { return opts.order_bound && order() >= *opts.order_bound; }

  void run(std::span<const MatFF> gens, std::uint64_t seed, const Options& opts) {
    std::vector<Mat> input;
    for (const auto& g : gens) {
      if (g.rows() != dim_ || g.cols() != dim_) fail(ErrorKind::InvalidArgument, "generator dimension mismatch");
      Mat m = to_mat(g);
      if (!is_identity(m)) input.push_back(std::move(m));
    }
    if (input.empty()) return;
    for (const auto& g : input) {
      Mat h = g;
      std::size_t level = 0;
      sift(h, 0, level);
      if (level < levels_.size() || !is_identity(h)) install(std::move(h), level);
      if (reached(opts)) {
        by_bound_ = true;
        return;
      }
    }

    // Random phase: product replacement on the input generators.
    Rng rng(seed);
    std::vector<Mat> state;
    while (state.size() < std::max<std::size_t>(10, input.size()))
      for (const auto& g : input) state.push_back(g);
    Mat acc = identity();
    auto next_random = [&]() {
      const std::size_t n = state.size();
      std::size_t i = uniform_below(rng, n), j = uniform_below(rng, n - 1);
      if (j >= i) ++j;
      state[i] = (rng() & 1) ? mul(state[i], state[j]) : mul(state[j], state[i]);
      acc = mul(acc, state[i]);
      return acc;
    };
    for (int i = 0; i < 50; ++i) next_random();
    std::size_t quiet = 0;
    while (quiet < opts.quiet_sifts) {
      Mat h = next_random();
      std::size_t level = 0;
      sift(h, 0, level);
      if (level < levels_.size() || !is_identity(h)) {
        install(std::move(h), level);
        quiet = 0;
        if (reached(opts)) {
          by_bound_ = true;
          return;
        }
      } else {
        ++quiet;
      }
    }
    if (opts.verify) verify(opts);
  }

  /// Deterministic Schreier-Sims completion: every Schreier generator of
  /// every level must sift to the identity through the levels below it.
  void verify(const Options& opts) {
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restarted = false;
      for (std::size_t a = 0; a < levels_[i].points.size() && !restarted; ++a) {
        for (std::size_t gpos = 0; gpos < levels_[i].gens.size(); ++gpos) {
          Level& lv = levels_[i];
          if (a < lv.checked_points && gpos < lv.checked_gens) continue;
          const Mat& s = strong_[lv.gens[gpos]];
          const std::uint32_t q = image(s, lv.points[a]);
          Mat h = mul(lv.inv_reps[lv.where.at(q)], mul(s, lv.reps[a]));
          std::size_t level = 0;
          sift(h, i + 1, level);
          if (level < levels_.size() || !is_identity(h)) {
            install(std::move(h), level);
            if (reached(opts)) {
              by_bound_ = true;
              return;
            }
            // Levels i+1..level gained generators; recheck from there.
            i = level + 1;
            if (i > levels_.size()) i = levels_.size();
            restarted = true;
            break;
          }
        }
      }
      if (!restarted) {
        levels_[i].checked_points = levels_[i].points.size();
        levels_[i].checked_gens = levels_[i].gens.size();
      }
    }
  }

  PrimeField F_;
  std::size_t dim_;
  std::vector<Mat> strong_;
  std::vector<Level> levels_;
  bool by_bound_ = false;
};

inline Bsgs bsgs_build(std::span<const Isometry> gens, const IsometrySpace& space, std::uint64_t seed,
                       const Bsgs::Options& opts = {}) {
  std::vector<MatFF> mats;
  for (const auto& g : gens) mats.push_back(g.mat());
  return Bsgs::build(space.field(), space.dim(), mats, seed, opts);
}

inline Isometry bsgs_sample(const Bsgs& b, const IsometrySpace& space, std::uint64_t seed) {
  Rng rng(seed);
  return Isometry(space, b.sample(rng));
}

}  // namespace arrmono
