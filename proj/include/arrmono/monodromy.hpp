#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arrmono/arrangement.hpp"
#include "arrmono/bsgs.hpp"
#include "arrmono/classical_groups.hpp"
#include "arrmono/random.hpp"
#include "arrmono/wedge.hpp"
#include "arrmono/zeta.hpp"

namespace arrmono {

// ---------------------------------------------------------------------------
// Group prediction

struct Prediction {
  int n = 0;
  std::uint32_t ell = 0;
  GroupLabel label = GroupLabel::SP;
  /// The condition on (n, l) that selects the label.
  std::string reason;
};

inline Prediction predict_group(int n, std::uint32_t ell) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  const PrimeField F(ell);
  if (n % 2) return {n, ell, GroupLabel::SP, "n odd"};
  if (ell == 3) fail(ErrorKind::SmallEllForEvenN, "l = 3 with n even is not covered");
  if (n % 4 == 0) return {n, ell, GroupLabel::O_KER_THETA, "n = 0 mod 4"};
  if (ell % 4 == 1) return {n, ell, GroupLabel::O_KER_THETA, "l = 1 mod 4"};
  return {n, ell, GroupLabel::O_KER_THETA_DET, "n = 2 mod 4, l = 3 mod 4"};
}

// ---------------------------------------------------------------------------
// Case split

struct CaseSplitTriple {
  int n, m;
  std::uint32_t ell;
};

struct CaseSplitRow {
  CaseSplitTriple params;
  Prediction prediction;
  std::size_t space_dim = 0;
  std::uint32_t delta_norm = 0;
  bool norm_is_square = false;
  KernelClass reflection{0, 0};
  /// The Picard-Lefschetz reflection lies in the predicted group, and
  /// theta = +1 exactly when the prediction is ker theta.
  bool consistent = false;
  KernelClass minus_id{0, 0};
  bool minus_id_in_predicted = false;
};

struct CaseSplitReport {
  std::vector<CaseSplitRow> rows;
  bool all_consistent = true;
  bool minus_id_always_in_predicted = true;
};

/// Vector of prescribed norm c in a nondegenerate symmetric space.
inline Vec vector_of_norm(const BilinearSpace& V, std::uint32_t c, Rng& rng) {
  const auto& F = V.field();
  if (c == 0) fail(ErrorKind::InvalidArgument, "target norm must be nonzero");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vec v(V.dim());
    for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
    const std::uint32_t a = V.pair(v, v);
    if (a == 0) continue;
    const std::uint32_t ratio = F.mul(c, F.inv(a));
    if (!F.is_square(ratio)) continue;
    const std::uint32_t t = F.smallest_sqrt(ratio);
    for (auto& x : v) x = F.mul(x, t);
    return v;
  }
  fail(ErrorKind::SamplingExhausted, "no vector of the requested norm found");
}

/// For each (n, m, l): on the wedge space of a standard symplectic space of
/// dimension n + 2 (dimension binom(m-2, n) when m = n + 4), picks delta with
/// (delta, delta) = (-1)^{n/2} / 2^{m-n-2} and classifies pl_map(delta).
inline CaseSplitReport verify_case_split(std::span<const CaseSplitTriple> grid, std::uint64_t seed = 0) {
  CaseSplitReport rep;
  for (const auto& t : grid) {
    if (t.n < 2 || t.n % 2 || t.m % 2 || t.m < t.n + 4)
      fail(ErrorKind::BadParity, "case split needs n, m even and m >= n + 4");
    if (t.ell < 5) fail(ErrorKind::SmallEllForEvenN, "case split needs l >= 5");
    const PrimeField F(t.ell);
    CaseSplitRow row;
    row.params = t;
    row.prediction = predict_group(t.n, t.ell);
    const auto V = induced_wedge_form(BilinearSpace::standard_symplectic(F, static_cast<std::size_t>(t.n + 2)), static_cast<std::size_t>(t.n));
    row.space_dim = V.dim();
    const std::uint32_t eps = (t.n / 2) % 2 == 0 ? 1 : F.neg(1);
    const std::uint32_t c = F.mul(eps, F.inv(F.pow(2, static_cast<std::uint64_t>(t.m - t.n - 2))));
    row.delta_norm = c;
    row.norm_is_square = F.is_square(c);
    Rng rng(derive_seed(seed, "case-split", static_cast<std::uint64_t>(t.n) << 40 | static_cast<std::uint64_t>(t.m) << 20 | t.ell));
    const Vec delta = vector_of_norm(V, c, rng);
    const Isometry T = pl_map(V, delta, t.n, t.m);
    row.reflection = kernel_class(V, T.mat());
    const bool theta_matches = (row.reflection.theta == 1) == (row.prediction.label == GroupLabel::O_KER_THETA);
    row.consistent = theta_matches && in_group(row.prediction.label, row.reflection);
    row.minus_id = kernel_class(V, MatFF::identity(F, V.dim()).scaled(F.neg(1)));
    row.minus_id_in_predicted = in_group(row.prediction.label, row.minus_id);
    rep.all_consistent = rep.all_consistent && row.consistent;
    rep.minus_id_always_in_predicted = rep.minus_id_always_in_predicted && row.minus_id_in_predicted;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generation certificates

enum class Family { SP, O };

inline std::string_view to_string(Family f) { return f == Family::SP ? "SP" : "O"; }

struct SubgroupCertificate {
  GroupLabel label;
  BigInt order;
  BigInt index;
  unsigned expected_index;
  bool ok;
};

struct GenerationReport {
  Family family = Family::SP;
  std::size_t dim = 0;
  std::uint32_t ell = 0;
  bool disc_square = true;
  std::size_t generators = 0;
  BigInt order;
  BigInt expected;
  bool certified_by_bound = false;
  std::vector<SubgroupCertificate> chain;
  bool ok = false;
};

namespace detail {

/// Schreier generators of ker(phi) for phi: <gens> -> {+-1} with transversal
/// {1, t}; empty optional when phi is trivial on every generator.
template <class Phi>
std::optional<std::vector<MatFF>> index_two_kernel(std::span<const MatFF> gens, Phi phi) {
  std::vector<int> val;
  std::optional<std::size_t> ti;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    val.push_back(phi(gens[i]));
    if (val.back() == -1 && !ti) ti = i;
  }
  if (!ti) return std::nullopt;
  const MatFF& t = gens[*ti];
  const MatFF tinv = inverse_ff(t);
  std::vector<MatFF> out;
  auto push = [&](MatFF m) {
    if (m.is_identity()) return;
    for (const auto& o : out)
      if (o == m) return;
    out.push_back(std::move(m));
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const MatFF& s = gens[i];
    if (val[i] == 1) {
      push(s);
      push(t * s * tinv);
    } else {
      push(s * tinv);
      push(t * s);
    }
  }
  return out;
}

inline BilinearSpace orthogonal_test_space(const PrimeField& F, std::size_t dim, bool disc_square) {
  std::vector<std::int64_t> diag(dim, 1);
  if (!disc_square) {
    std::uint32_t c = 2;
    while (F.is_square(c)) ++c;
    diag.back() = c;
  }
  return BilinearSpace::diagonal(F, diag);
}

}  // namespace detail

/// SP: standard transvections on the standard symplectic space. O: seeded
/// random reflections on diag(1, ..., 1, c), c = 1 or the least nonsquare,
/// followed by the kernel chain ker theta, SO, ker(theta det), Omega, each
/// generated by Schreier generators and certified by its BSGS order.
inline GenerationReport certify_generation(Family family, std::size_t dim, std::uint32_t ell, std::uint64_t seed = 0,
                                           bool disc_square = true) {
  const PrimeField F(ell);
  GenerationReport rep;
  rep.family = family;
  rep.dim = dim;
  rep.ell = ell;
  rep.disc_square = disc_square;
  if (family == Family::SP) {
    const auto W = BilinearSpace::standard_symplectic(F, dim);
    const auto gens = standard_transvection_generators(W);
    rep.generators = gens.size();
    rep.expected = group_order({GroupLabel::SP, dim, ell});
    const auto b = bsgs_build(gens, W, derive_seed(seed, "certify-sp"));
    rep.order = b.order();
    rep.certified_by_bound = b.certified_by_bound();
    rep.ok = rep.order == rep.expected;
    return rep;
  }
  if (dim < 2) fail(ErrorKind::UnsupportedDim, "orthogonal dimension must be at least 2");
  const auto S = detail::orthogonal_test_space(F, dim, disc_square);
  rep.disc_square = disc_is_square(S);
  const BigInt full = group_order(group_spec_for(S, GroupLabel::O_FULL));
  rep.expected = full;
  const auto refl = random_reflections(S, 2 * dim + 4, derive_seed(seed, "certify-o"));
  std::vector<MatFF> gens;
  for (const auto& r : refl) gens.push_back(r.mat());
  rep.generators = gens.size();
  Bsgs::Options opts;
  opts.order_bound = full;
  const auto b = Bsgs::build(F, dim, gens, derive_seed(seed, "certify-o-bsgs"), opts);
  rep.order = b.order();
  rep.certified_by_bound = b.certified_by_bound();
  rep.ok = rep.order == full;

  auto theta = [&](const MatFF& g) { return spinor_norm(S, g); };
  auto det = [&](const MatFF& g) { return det_sign(g); };
  auto theta_det = [&](const MatFF& g) { return spinor_norm(S, g) * det_sign(g); };
  auto certify = [&](GroupLabel label, const std::optional<std::vector<MatFF>>& sub, unsigned expected_index) {
    SubgroupCertificate c{label, 0, 0, expected_index, false};
    if (sub) {
      Bsgs::Options o;
      o.order_bound = full / expected_index;
      const auto bs = Bsgs::build(F, dim, *sub, derive_seed(seed, "certify-sub", static_cast<std::uint64_t>(label)), o);
      c.order = bs.order();
      if (c.order != 0 && full % c.order == 0) c.index = full / c.order;
    } else {
      c.order = full;
      c.index = 1;
    }
    c.ok = c.index == expected_index;
    rep.ok = rep.ok && c.ok;
    rep.chain.push_back(c);
  };
  certify(GroupLabel::O_KER_THETA, detail::index_two_kernel(gens, theta), 2);
  const auto so = detail::index_two_kernel(gens, det);
  certify(GroupLabel::SO, so, 2);
  certify(GroupLabel::O_KER_THETA_DET, detail::index_two_kernel(gens, theta_det), 2);
  std::optional<std::vector<MatFF>> omega;
  if (so) omega = detail::index_two_kernel(*so, theta);
  certify(GroupLabel::OMEGA, omega, 4);
  return rep;
}

// ---------------------------------------------------------------------------
// Hyperelliptic consistency

struct HyperellipticReport {
  int n = 0;
  std::uint64_t q = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  PolyZ curve;
  PolyZ variety;
  PolyZ wedge;
  bool equal = false;
};

inline HyperellipticReport hyperelliptic_consistency(const PointsOnLine& pts, int n, const FieldPtr& field, const CountOptions& count = {}) {
  const auto& F = *field;
  HyperellipticReport rep;
  rep.n = n;
  rep.q = F.order();
  for (const auto& [a, b] : pts.pts) rep.points.emplace_back(F.to_packed(a), F.to_packed(b));
  ZetaOptions opts;
  opts.count = count;
  rep.curve = frobenius_charpoly(hyperelliptic_image(pts, 1, field), opts).P;
  rep.variety = n == 1 ? rep.curve : frobenius_charpoly(hyperelliptic_image(pts, n, field), opts).P;
  rep.wedge = wedge_char_poly(rep.curve, static_cast<std::size_t>(n));
  rep.equal = rep.variety == rep.wedge;
  return rep;
}

// ---------------------------------------------------------------------------
// Irreducibility survey

struct SurveySample {
  PolyZ P;
  bool irreducible;
  IrreducibilityVerdict::Method method;
};

struct SurveyLevel {
  unsigned level = 0;
  std::uint64_t field_order = 0;
  std::size_t samples = 0;
  std::size_t irreducible = 0;
  std::size_t certified = 0;
  std::size_t exhaustive = 0;
  bool symplectic_half = false;
  double fraction = 0.0;
  std::vector<SurveySample> records;
};

struct SurveyReport {
  int n = 0, m = 0;
  std::uint64_t q = 0;
  std::vector<unsigned> levels;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<SurveyLevel> per_level;
};

inline SurveyReport survey_irreducibility(int n, int m, std::uint64_t q, std::span<const unsigned> levels, std::size_t samples,
                                          std::uint64_t seed, const CountOptions& count = {}) {
  if (n % 2 == 0) fail(ErrorKind::InvalidArgument, "survey needs odd n");
  if (q + 1 < static_cast<std::uint64_t>(m)) fail(ErrorKind::InvalidArgument, "survey needs q + 1 >= m");
  const auto [p, k] = split_prime_power(q);
  SurveyReport rep{n, m, q, {levels.begin(), levels.end()}, samples, seed, {}};
  ZetaOptions opts;
  opts.count = count;
  opts.allow_symplectic_half = true;
  for (unsigned lvl : levels) {
    if (lvl < 1) fail(ErrorKind::InvalidArgument, "levels start at 1");
    const auto F = FieldCache::global().get(p, k * lvl);
    SurveyLevel L;
    L.level = lvl;
    L.field_order = F->order();
    L.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
      const auto arr = random_arrangement(n, m, F, derive_seed(seed, "survey", static_cast<std::uint64_t>(lvl) << 32 | s));
      const auto rec = frobenius_charpoly(arr, opts);
      L.symplectic_half = L.symplectic_half || rec.half;
      const auto v = irreducible_over_Z(rec.P);
      L.irreducible += v.irreducible;
      if (v.method == IrreducibilityVerdict::Method::ModPrimeCertificate) ++L.certified;
      else ++L.exhaustive;
      L.records.push_back({rec.P, v.irreducible, v.method});
    }
    L.fraction = samples ? static_cast<double>(L.irreducible) / static_cast<double>(samples) : 0.0;
    rep.per_level.push_back(std::move(L));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Frobenius distribution

struct DistributionOptions {
  CountOptions count;
  /// Group side: exhaustive enumeration up to this overgroup order.
  std::uint64_t exhaustive_limit = 1'000'000;
  std::size_t group_min = 20000;
  /// Stop once this many consecutive draws add no new class (and every
  /// Frobenius class has been seen).
  std::size_t group_window = 50000;
  std::size_t group_cap = 2'000'000;
  double tv_threshold = 0.15;
};

using PolyKey = std::vector<std::uint32_t>;

struct DistributionReport {
  int n = 0, m = 0;
  std::uint64_t q = 0;
  std::uint32_t ell = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Prediction prediction;
  std::size_t dim = 0;
  std::uint32_t multiplier = 0;
  bool multiplier_square = false;
  bool minus_id_in_group = false;
  bool exhaustive = false;
  BigInt overgroup_order;
  std::size_t group_draws = 0;
  std::size_t group_accepted = 0;
  std::map<PolyKey, double> frobenius;
  std::map<PolyKey, double> group;
  double tv = 0.0;
  bool tv_below_threshold = false;
  bool containment = false;
  std::vector<PolyKey> missing;
  /// Literal check of s^{-1} Frob against Gamma itself (only when q^n is a
  /// square mod l).
  std::optional<bool> normalized_containment;
};

namespace detail {

inline PolyKey key_of(const PolyFF& f) { return {f.coeffs.begin(), f.coeffs.end()}; }

}  // namespace detail

/// Frobenius side: seeded arrangements, P(T) mod l. Group side: the coset
/// g0 * Gamma~ with g0 = wedge^n diag(q I_g, I_g) (multiplier q^n) and
/// Gamma~ = Gamma * {+-1}, Gamma the predicted group on the wedge of a
/// standard symplectic space of dimension m - 2 with its induced form.
/// Every F_q-Frobenius lies in a single coset of the geometric monodromy
/// group, which the hyperelliptic fibers identify as g0 * Gamma~.
inline DistributionReport frobenius_distribution(int n, int m, std::uint64_t q, std::uint32_t ell, std::size_t samples, std::uint64_t seed,
                                                 const DistributionOptions& opts = {}) {
  const PrimeField Fl(ell);
  const auto [p, k] = split_prime_power(q);
  if (p == ell) fail(ErrorKind::InvalidArgument, "l must differ from the characteristic");
  DistributionReport rep;
  rep.n = n;
  rep.m = m;
  rep.q = q;
  rep.ell = ell;
  rep.samples = samples;
  rep.seed = seed;
  rep.prediction = predict_group(n, ell);
  const std::size_t N = static_cast<std::size_t>(m - 2), g = N / 2;
  if (m % 2 || m < n + 3) fail(ErrorKind::BadParity, "need m even and m >= n + 3");
  const auto W = BilinearSpace::standard_symplectic(Fl, N);
  const auto V = n == 1 ? W : induced_wedge_form(W, static_cast<std::size_t>(n));
  rep.dim = V.dim();
  const std::uint32_t qm = Fl.from_int(static_cast<std::int64_t>(q % ell));
  rep.multiplier = Fl.pow(qm, static_cast<std::uint64_t>(n));
  rep.multiplier_square = Fl.is_square(rep.multiplier);
  MatFF base = MatFF::identity(Fl, N);
  for (std::size_t i = 0; i < g; ++i) base(i, i) = qm;
  const MatFF g0 = wedge_matrix(base, static_cast<std::size_t>(n));
  const MatFF minus = MatFF::identity(Fl, V.dim()).scaled(Fl.neg(1));
  const bool symplectic = rep.prediction.label == GroupLabel::SP;
  rep.minus_id_in_group = symplectic || in_group(rep.prediction.label, kernel_class(V, minus));

  // Frobenius side.
  ZetaOptions zopts;
  zopts.count = opts.count;
  zopts.allow_symplectic_half = true;
  const auto F = FieldCache::global().get(p, k);
  std::map<PolyKey, std::size_t> frob_counts;
  std::vector<PolyKey> normalized;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto arr = random_arrangement(n, m, F, derive_seed(seed, "distribution", s));
    const auto rec = frobenius_charpoly(arr, zopts);
    ++frob_counts[detail::key_of(poly_reduce_mod(rec.P, Fl))];
    if (rep.multiplier_square) normalized.push_back(detail::key_of(normalize_mod_ell(rec, Fl)));
  }

  // Group side.
  std::vector<MatFF> gens;
  BigInt over;
  const auto space_rng_seed = derive_seed(seed, "distribution-group");
  if (symplectic) {
    if (n == 1) {
      for (const auto& t : standard_transvection_generators(V)) gens.push_back(t.mat());
    } else {
      Rng rng(space_rng_seed);
      while (gens.size() < 2 * V.dim() + 4) {
        Vec v(V.dim());
        for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, ell));
        if (!detail::is_zero_vec(v)) gens.push_back(transvection(V, v, 1).mat());
      }
    }
    over = group_order({GroupLabel::SP, V.dim(), ell});
  } else {
    for (const auto& r : random_reflections(V, 2 * V.dim() + 4, space_rng_seed)) gens.push_back(r.mat());
    over = group_order(group_spec_for(V, GroupLabel::O_FULL));
  }
  rep.overgroup_order = over;
  Bsgs::Options bopts;
  bopts.order_bound = over;
  const auto B = Bsgs::build(Fl, V.dim(), gens, derive_seed(seed, "distribution-bsgs"), bopts);
  if (B.order() != over) fail(ErrorKind::InvalidArgument, "group-side generators do not generate the overgroup");

  std::map<PolyKey, std::size_t> coset_counts;
  std::map<PolyKey, bool> plain;
  auto take = [&](const MatFF& gamma) {
    ++rep.group_draws;
    if (!symplectic && !in_group(rep.prediction.label, kernel_class(V, gamma))) return false;
    ++rep.group_accepted;
    bool fresh = false;
    auto add = [&](const MatFF& h) {
      auto [it, inserted] = coset_counts.emplace(detail::key_of(char_poly_ff(g0 * h)), 0);
      ++it->second;
      fresh = fresh || inserted;
      if (rep.multiplier_square) plain[detail::key_of(char_poly_ff(h))] = true;
    };
    add(gamma);
    if (!rep.minus_id_in_group) add(minus * gamma);
    return fresh;
  };
  if (over <= BigInt(opts.exhaustive_limit)) {
    rep.exhaustive = true;
    const auto lens = B.orbit_lengths();
    std::vector<std::size_t> idx(lens.size(), 0);
    while (true) {
      take(B.element(idx));
      std::size_t j = 0;
      for (; j < idx.size(); ++j) {
        if (++idx[j] < lens[j]) break;
        idx[j] = 0;
      }
      if (j == idx.size()) break;
    }
  } else {
    Rng rng(derive_seed(seed, "distribution-sample"));
    std::size_t since_new = 0;
    auto all_seen = [&] {
      for (const auto& [key, c] : frob_counts)
        if (!coset_counts.count(key)) return false;
      return true;
    };
    while (rep.group_draws < opts.group_cap) {
      const std::size_t before = rep.group_accepted;
      const bool fresh = take(B.sample(rng));
      if (rep.group_accepted == before) continue;
      since_new = fresh ? 0 : since_new + 1;
      if (rep.group_accepted >= opts.group_min && since_new >= opts.group_window && all_seen()) break;
    }
  }

  std::size_t group_total = 0;
  for (const auto& [key, c] : coset_counts) group_total += c;
  for (const auto& [key, c] : frob_counts) rep.frobenius[key] = static_cast<double>(c) / static_cast<double>(samples);
  for (const auto& [key, c] : coset_counts) rep.group[key] = static_cast<double>(c) / static_cast<double>(group_total);
  double tv = 0.0;
  for (const auto& [key, f] : rep.frobenius) {
    auto it = rep.group.find(key);
    tv += std::abs(f - (it == rep.group.end() ? 0.0 : it->second));
  }
  for (const auto& [key, gval] : rep.group)
    if (!rep.frobenius.count(key)) tv += gval;
  rep.tv = tv / 2;
  rep.tv_below_threshold = rep.tv <= opts.tv_threshold;
  for (const auto& [key, f] : rep.frobenius)
    if (!rep.group.count(key)) rep.missing.push_back(key);
  rep.containment = samples > 0 && rep.missing.empty();
  if (rep.multiplier_square) {
    bool ok = true;
    for (const auto& key : normalized) ok = ok && plain.count(key);
    rep.normalized_containment = ok;
  }
  return rep;
}

}  // namespace arrmono
