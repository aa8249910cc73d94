#include "superpose/serialize.hpp"

#include "json.hpp"
#include "superpose/matrix_io.hpp"

namespace superpose {

namespace {

using Json = nlohmann::ordered_json;

const char* mode_name(GeometryMode m) { return m == GeometryMode::Construction ? "construction" : "norm_bounded"; }

}  // namespace

std::string to_json(const RecoveryReport& r) {
  Json j;
  j["k"] = r.k;
  j["max_error"] = r.max_error;
  j["argmax_feature"] = r.argmax_feature;
  j["per_feature_error"] = r.per_feature_error;
  return j.dump();
}

std::string to_json(const CoherenceSummary& c) {
  Json j;
  j["diag_min"] = c.diag_min;
  j["diag_max"] = c.diag_max;
  j["mu"] = c.mu;
  j["argmax_pair"] = {c.argmax_pair.first, c.argmax_pair.second};
  return j.dump();
}

std::string to_json(const GeometryReport& r) {
  Json j;
  j["mode"] = mode_name(r.mode);
  if (r.mode == GeometryMode::Construction) {
    j["delta"] = r.param_1;
    j["tol"] = r.param_2;
  } else {
    j["epsilon"] = r.param_1;
    j["gamma"] = r.param_2;
  }
  j["max_self_cosine"] = r.max_self_cosine;
  j["min_self_cosine"] = r.min_self_cosine;
  j["min_rep_pair_cosine"] = r.min_rep_pair_cosine;
  j["max_rep_pair_cosine"] = r.max_rep_pair_cosine;
  j["min_probe_pair_cosine"] = r.min_probe_pair_cosine;
  j["max_probe_pair_cosine"] = r.max_probe_pair_cosine;
  Json clauses = Json::array();
  for (const auto& c : r.clauses)
    clauses.push_back({{"name", c.name}, {"relation", c.relation}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  j["bounds_checked"] = clauses;
  j["all_pass"] = r.all_pass();
  return j.dump();
}

std::string to_json(const MarginReport& r) {
  Json j;
  j["k"] = r.k;
  j["separable"] = r.separable;
  j["k_at_least_sqrt_m"] = r.k_at_least_sqrt_m;
  Json per = Json::array();
  for (const auto& f : r.per_feature)
    per.push_back({{"min_active", f.min_active}, {"max_inactive", f.max_inactive}, {"margin", f.margin}});
  j["per_feature"] = per;
  j["witness_thresholds"] = r.witness_thresholds ? Json(*r.witness_thresholds) : Json(nullptr);
  j["midpoint_thresholds"] = r.midpoint_thresholds ? Json(*r.midpoint_thresholds) : Json(nullptr);
  return j.dump();
}

std::string to_json(const PhaseScanResult& r) {
  Json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["epsilon"] = r.epsilon;
  j["trials"] = r.trials;
  j["success_threshold"] = r.success_threshold;
  j["d_star"] = r.d_star ? Json(*r.d_star) : Json("not found");
  j["in_lower_bound_regime"] = r.in_lower_bound_regime;
  Json per = Json::object();
  for (const auto& [d, s] : r.per_d_success) per[std::to_string(d)] = s;
  j["per_d_success"] = per;
  return j.dump();
}

std::string to_json(const DecodeResult& r) {
  Json j;
  j["z_hat"] = r.z_hat;
  j["residual_norm"] = r.residual_norm;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["pinv_fallback"] = r.pinv_fallback;
  return j.dump();
}

std::string to_json(const InterferenceSummary& s) {
  Json j;
  j["m"] = s.m;
  j["tau"] = s.tau;
  j["edge_count"] = s.edges.size();
  Json edges = Json::array();
  for (const auto& [a, b] : s.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["max_row"] = {{"row", s.max_row.row}, {"count", s.max_row.count}};
  j["greedy_independent_set"] = s.greedy_set;
  j["exact_alpha"] = s.exact_alpha ? Json(*s.exact_alpha) : Json(nullptr);
  j["turan_floor"] = s.turan ? Json{{"r", s.turan->r}, {"floor", s.turan->floor}} : Json(nullptr);
  return j.dump();
}

std::string to_json(const ShiftedPair& p) {
  Json j;
  j["d"] = p.a.rows();
  j["m"] = p.a.cols();
  j["lambda"] = p.lambda;
  j["mu_target"] = p.mu_target;
  j["mu_achieved"] = p.mu_achieved;
  j["seed_used"] = p.seed_used;
  j["attempts"] = p.attempts;
  return j.dump();
}

std::string to_json(const std::vector<GapRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"d", r.d},
                   {"omp_success", r.omp_success()},
                   {"linear_success", r.linear_success()},
                   {"trials", r.trials}});
  return Json{{"rows", out}}.dump();
}

std::string scan_csv(const PhaseScanResult& r) {
  std::string out = "d,successes,trials\n";
  for (const auto& [d, s] : r.per_d_success)
    out += std::to_string(d) + "," + std::to_string(s) + "," + std::to_string(r.trials) + "\n";
  return out;
}

std::string gap_csv(const std::vector<GapRow>& rows) {
  std::string out = "d,omp_success,linear_success,trials\n";
  for (const auto& r : rows)
    out += std::to_string(r.d) + "," + format_double(r.omp_success()) + "," + format_double(r.linear_success()) + "," +
           std::to_string(r.trials) + "\n";
  return out;
}

}  // namespace superpose
