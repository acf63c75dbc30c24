// Copyright 2026 The waylimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "waylimit/cli/report.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "waylimit/tolerances.h"

#ifndef WAYLIMIT_VERSION_STRING
#define WAYLIMIT_VERSION_STRING "0.0.0"
#endif

namespace waylimit::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general,
                           17);
  return std::string(buf, res.ptr);
}

Json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

Json optional_json(const std::optional<double>& x) {
  return x ? number_json(*x) : Json(nullptr);
}

Json environment_json(std::optional<std::uint64_t> seed) {
  Json env;
  env["tool_version"] = WAYLIMIT_VERSION_STRING;
  env["seed"] = seed ? Json(*seed) : Json(nullptr);
  env["tolerances"] = {
      {"structure", tol::kStructure},
      {"norm", tol::kNorm},
      {"degeneracy", tol::kDegeneracy},
      {"conservation", tol::kConservation},
      {"conservation_precondition", tol::kConservationPrecondition},
      {"yanase", tol::kYanase},
      {"bound", tol::kBound},
      {"denominator", tol::kDenominator},
  };
  return env;
}

Json bound_report_json(const BoundReport& r) {
  Json j;
  j["eps_sq"] = number_json(r.eps_sq);
  j["delta_noise_sq"] = number_json(r.delta_noise_sq);
  j["fundamental_bound"] = number_json(r.fundamental_bound);
  j["yanase_bound"] = optional_json(r.yanase_bound);
  j["spin_bound"] = optional_json(r.spin_bound);
  j["acl_residual"] = number_json(r.acl_residual);
  j["invariance_residual"] = number_json(r.invariance_residual);
  j["yanase_residual"] = number_json(r.yanase_residual);
  j["commutator_identity_residual"] =
      optional_json(r.commutator_identity_residual);
  j["uncertainty_lhs"] = number_json(r.uncertainty_lhs);
  j["uncertainty_rhs"] = number_json(r.uncertainty_rhs);
  j["variance_additivity_residual"] =
      number_json(r.variance_additivity_residual);
  j["conservation_holds"] = r.conservation_holds();
  j["yanase_holds"] = r.yanase_holds();
  j["violations"] = r.violations();
  return j;
}

namespace {

std::string cell(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

std::string join(const std::vector<std::string>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

// Quotes a CSV field when it contains a separator or quote.
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string bound_report_csv_header() {
  return "model,state,eps_sq,delta_noise_sq,fundamental_bound,yanase_bound,"
         "spin_bound,acl_residual,invariance_residual,yanase_residual,"
         "commutator_identity_residual,uncertainty_lhs,uncertainty_rhs,"
         "variance_additivity_residual,violations";
}

std::string bound_report_csv_row(const std::string& model,
                                 const std::string& state,
                                 const BoundReport& r) {
  std::vector<std::string> cells = {
      csv_text(model),
      csv_text(state),
      format_number(r.eps_sq),
      format_number(r.delta_noise_sq),
      format_number(r.fundamental_bound),
      cell(r.yanase_bound),
      cell(r.spin_bound),
      format_number(r.acl_residual),
      format_number(r.invariance_residual),
      format_number(r.yanase_residual),
      cell(r.commutator_identity_residual),
      format_number(r.uncertainty_lhs),
      format_number(r.uncertainty_rhs),
      format_number(r.variance_additivity_residual),
      join(r.violations(), ';'),
  };
  return join(cells, ',');
}

std::string sweep_csv_header() {
  return "family,size,var_mz,bound,achieved,gap_ratio,seed";
}

std::string sweep_csv_row(const SweepRow& row) {
  return join({to_string(row.family), format_number(row.size),
               format_number(row.var_mz), format_number(row.bound),
               format_number(row.achieved), format_number(row.gap_ratio),
               std::to_string(row.seed)},
              ',');
}

Json optimization_run_json(const OptimizationRun& run) {
  Json j;
  j["seed"] = run.seed;
  j["objective"] = number_json(run.objective);
  j["eps_sq"] = number_json(run.eps_sq);
  j["bound_value"] = number_json(run.bound_value);
  j["converged"] = run.converged;
  j["bound_violations"] = run.bound_violations;
  j["theta"] = run.theta;
  j["xi"] = to_json(run.xi.amplitudes());
  Json trace = Json::array();
  for (double x : run.objective_trace) trace.push_back(number_json(x));
  j["objective_trace"] = std::move(trace);
  Json restarts = Json::array();
  for (const RestartResult& r : run.restarts) {
    restarts.push_back({{"index", r.index},
                        {"seed", r.seed},
                        {"objective", number_json(r.objective)},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"bound_violations", r.bound_violations}});
  }
  j["restarts"] = std::move(restarts);
  j["result_model"] = model_to_json(
      {"optimized", "best interaction found by the optimizer",
       run.result_model, run.pair});
  return j;
}

}  // namespace waylimit::cli
