#pragma once

#include <json.hpp>
#include <limits>
#include <string>

#include "arrmono/monodromy.hpp"

namespace arrmono {

using Json = nlohmann::ordered_json;

/// Integers that fit in int64 become JSON numbers, larger ones strings.
inline Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

/// Coefficients, constant term first.
inline Json poly_json(const PolyZ& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs) a.push_back(big_json(c));
  return a;
}

inline Json poly_json(const PolyKey& k) { return Json(k); }

inline Json kernel_json(KernelClass kc) { return {{"theta", kc.theta}, {"det", kc.det}}; }

inline Json arrangement_json(const Arrangement& arr) {
  const auto& F = *arr.field();
  Json rows = Json::array();
  for (int i = 0; i <= arr.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < arr.m(); ++j) row.push_back(F.to_packed(arr.at(i, j)));
    rows.push_back(row);
  }
  return {{"n", arr.n()}, {"m", arr.m()}, {"q", F.order()}, {"rows", rows}};
}

inline Json to_json(const Prediction& p) {
  return {{"n", p.n}, {"ell", p.ell}, {"label", to_string(p.label)}, {"reason", p.reason}};
}

inline Json to_json(const CaseSplitReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.params.n},
                    {"m", row.params.m},
                    {"ell", row.params.ell},
                    {"label", to_string(row.prediction.label)},
                    {"reason", row.prediction.reason},
                    {"space_dim", row.space_dim},
                    {"delta_norm", row.delta_norm},
                    {"norm_is_square", row.norm_is_square},
                    {"reflection", kernel_json(row.reflection)},
                    {"consistent", row.consistent},
                    {"minus_id", kernel_json(row.minus_id)},
                    {"minus_id_in_predicted", row.minus_id_in_predicted}});
  return {{"rows", rows}, {"all_consistent", r.all_consistent}, {"minus_id_always_in_predicted", r.minus_id_always_in_predicted}};
}

inline Json to_json(const GenerationReport& r) {
  Json chain = Json::array();
  for (const auto& c : r.chain)
    chain.push_back({{"subgroup", to_string(c.label)},
                     {"order", big_json(c.order)},
                     {"index", big_json(c.index)},
                     {"expected_index", c.expected_index},
                     {"ok", c.ok}});
  Json j{{"family", to_string(r.family)},
         {"dim", r.dim},
         {"ell", r.ell},
         {"generators", r.generators},
         {"order", big_json(r.order)},
         {"expected", big_json(r.expected)},
         {"certified_by_bound", r.certified_by_bound}};
  if (r.family == Family::O) {
    j["disc_square"] = r.disc_square;
    j["chain"] = chain;
  }
  j["ok"] = r.ok;
  return j;
}

inline Json to_json(const ZetaRecord& r) {
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(big_json(t));
  return {{"arrangement", arrangement_json(r.arr)},
          {"q", r.q},
          {"degree", r.d},
          {"counts", r.counts},
          {"traces", traces},
          {"P", poly_json(r.P)},
          {"symplectic_half", r.half},
          {"degree_ok", r.degree_ok},
          {"weil_ok", r.weil_ok},
          {"funceq_ok", r.funceq_ok},
          {"sign", r.sign}};
}

inline Json to_json(const HyperellipticReport& r) {
  Json pts = Json::array();
  for (const auto& [a, b] : r.points) pts.push_back({a, b});
  return {{"n", r.n},
          {"q", r.q},
          {"points", pts},
          {"P_C", poly_json(r.curve)},
          {"P_X", poly_json(r.variety)},
          {"wedge_P_C", poly_json(r.wedge)},
          {"equal", r.equal}};
}

inline Json to_json(const SurveyReport& r) {
  Json levels = Json::array();
  for (const auto& L : r.per_level) {
    Json recs = Json::array();
    for (const auto& s : L.records)
      recs.push_back({{"P", poly_json(s.P)}, {"irreducible", s.irreducible}, {"method", to_string(s.method)}});
    levels.push_back({{"level", L.level},
                      {"field_order", L.field_order},
                      {"samples", L.samples},
                      {"irreducible", L.irreducible},
                      {"fraction", L.fraction},
                      {"mod_prime_certified", L.certified},
                      {"exhaustive", L.exhaustive},
                      {"symplectic_half", L.symplectic_half},
                      {"records", recs}});
  }
  return {{"n", r.n}, {"m", r.m}, {"q", r.q}, {"levels", r.levels}, {"samples", r.samples}, {"seed", r.seed}, {"per_level", levels}};
}

inline Json to_json(const DistributionReport& r) {
  auto hist = [](const std::map<PolyKey, double>& h) {
    Json a = Json::array();
    for (const auto& [k, v] : h) a.push_back({{"charpoly", poly_json(k)}, {"frequency", v}});
    return a;
  };
  Json missing = Json::array();
  for (const auto& k : r.missing) missing.push_back(poly_json(k));
  Json j{{"n", r.n},
         {"m", r.m},
         {"q", r.q},
         {"ell", r.ell},
         {"samples", r.samples},
         {"seed", r.seed},
         {"prediction", to_json(r.prediction)},
         {"dim", r.dim},
         {"multiplier", r.multiplier},
         {"multiplier_square", r.multiplier_square},
         {"minus_id_in_group", r.minus_id_in_group},
         {"group_side", r.exhaustive ? "exhaustive" : "sampled"},
         {"overgroup_order", big_json(r.overgroup_order)},
         {"group_draws", r.group_draws},
         {"group_accepted", r.group_accepted},
         {"frobenius_classes", r.frobenius.size()},
         {"group_classes", r.group.size()},
         {"tv_distance", r.tv},
         {"tv_below_threshold", r.tv_below_threshold},
         {"containment", r.containment},
         {"missing", missing}};
  j["normalized_containment"] = r.normalized_containment ? Json(*r.normalized_containment) : Json(nullptr);
  j["frobenius_histogram"] = hist(r.frobenius);
  j["group_histogram"] = hist(r.group);
  return j;
}

}  // namespace arrmono
