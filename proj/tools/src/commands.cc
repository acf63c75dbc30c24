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

#include "waylimit/cli/commands.h"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "waylimit/cli/json_io.h"
#include "waylimit/cli/report.h"
#include "waylimit/conservation.h"
#include "waylimit/errors.h"
#include "waylimit/measurement.h"
#include "waylimit/optimizer.h"
#include "waylimit/oscillator.h"
#include "waylimit/random.h"
#include "waylimit/spin.h"
#include "waylimit/tolerances.h"

namespace waylimit::cli {
namespace {

// Runs a command body; input problems become exit 1 with a message.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInput;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write " + path);
  file << text;
  file.flush();
  if (!file) throw InputError("cannot write " + path);
}

Json outcomes_json(const OutcomeDistribution& dist) {
  Json out = Json::array();
  for (const Outcome& o : dist) {
    out.push_back({{"value", number_json(o.value)},
                   {"probability", number_json(o.probability)}});
  }
  return out;
}

int verify_yw(const YWModel& yw, const VerifyOptions& opts,
              const std::string& name, std::ostream& out) {
  const double eps_y = yw_eps_y(yw);
  const double err_y = yw_error_at_alpha_y(yw);
  const bool relation = 2.0 * err_y <= eps_y + tol::kStructure;
  std::optional<YWBoundCheck> check;
  if (opts.probe_variance) check = yw_check_bound(yw, *opts.probe_variance);
  std::vector<std::string> violations;
  if (!relation) violations.push_back("yw_relation");
  if (check && !check->pass) violations.push_back("yw_bound");

  if (opts.format == Format::kCsv) {
    out << "model,eps_y_sq,error_at_alpha_y,rhs,violations\n"
        << name << "," << format_number(eps_y) << "," << format_number(err_y)
        << "," << (check ? format_number(check->rhs) : "") << ",";
    for (std::size_t i = 0; i < violations.size(); ++i)
      out << (i ? ";" : "") << violations[i];
    out << "\n";
  } else {
    Json j;
    j["model"] = name;
    j["kind"] = "yw";
    j["eps_y_sq"] = number_json(eps_y);
    j["error_at_alpha_y"] = number_json(err_y);
    j["probe_variance"] =
        opts.probe_variance ? number_json(*opts.probe_variance) : Json(nullptr);
    j["rhs"] = check ? number_json(check->rhs) : Json(nullptr);
    j["violations"] = violations;
    j["environment"] = environment_json(std::nullopt);
    out << j.dump(2) << "\n";
  }
  return violations.empty() ? kExitOk : kExitViolation;
}

}  // namespace

std::vector<std::string> demo_names() {
  return {"swap", "trivial", "cnot", "yw-sample"};
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    Json doc = read_document(opts.model_path);
    if (is_yw_document(doc)) {
      std::string name = opts.model_path;
      return verify_yw(yw_from_json(doc), opts, name, out);
    }
    ModelFile file = model_from_json(doc);
    Ket psi = parse_state(opts.state, file.model.object_dim());
    BoundReport r = evaluate_bounds(file.model, file.pair, psi);
    const std::string name = file.name.empty() ? opts.model_path : file.name;

    if (opts.format == Format::kCsv) {
      out << bound_report_csv_header() << "\n"
          << bound_report_csv_row(name, opts.state, r) << "\n";
    } else {
      Json j;
      j["model"] = name;
      j["state"] = opts.state;
      j["report"] = bound_report_json(r);
      j["sup_noise"] = number_json(sup_noise(file.model));
      j["bsf_deviation"] = number_json(bsf_deviation(file.model, psi));
      OutcomeDistribution dist = outcome_distribution(file.model, psi);
      j["outcomes"] = outcomes_json(dist);
      if (opts.interval) {
        j["interval"] = {
            {"lo", opts.interval->first},
            {"hi", opts.interval->second},
            {"probability",
             number_json(interval_probability(dist, opts.interval->first,
                                              opts.interval->second))}};
      }
      j["environment"] = environment_json(std::nullopt);
      out << j.dump(2) << "\n";
    }
    return r.violations().empty() ? kExitOk : kExitViolation;
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProbeFamily family;
    if (opts.family == "spin_ladder") {
      family = ProbeFamily::kSpinLadder;
    } else if (opts.family == "oscillator") {
      family = ProbeFamily::kOscillator;
    } else {
      throw InputError("unknown family \"" + opts.family +
                       "\" (expected spin_ladder or oscillator)");
    }
    if (opts.sizes.empty()) throw InputError("no sizes given");
    OptimizerConfig config;
    config.seed = opts.seed;
    config.restarts = opts.restarts;
    config.max_iters = opts.max_iters;
    config.optimize_xi = opts.optimize_xi;
    std::vector<SweepRow> rows = sweep_probe_size(family, opts.sizes, config);

    std::ostringstream csv;
    csv << sweep_csv_header() << "\n";
    bool violated = false;
    for (const SweepRow& row : rows) {
      csv << sweep_csv_row(row) << "\n";
      if (!row.error.empty()) {
        err << "size " << format_number(row.size) << ": " << row.error << "\n";
      }
      if (row.achieved < row.bound - tol::kBound) violated = true;
      if (row.error.find("below the bound") != std::string::npos)
        violated = true;
    }
    emit(csv.str(), opts.out_path, out);
    return violated ? kExitViolation : kExitOk;
  });
}

namespace {

struct RunSetup {
  NoiseProblem problem;
  OptimizerConfig config;
  Json echo;
};

RunSetup parse_run_config(const Json& j) {
  if (!j.is_object()) throw InputError("config root must be an object");
  static const char* kKnown[] = {
      "schema",    "restarts",    "max_iters",     "grad_step",
      "tol",       "seed",        "objective",     "optimize_xi",
      "init_scale", "threads",    "family",        "size",
      "n_max",     "observable",  "record",        "initial_theta"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || item.key() == k;
    if (!known) throw InputError("unknown config field \"" + item.key() + "\"");
  }
  auto get = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
      return it->template get<T>();
    } catch (const Json::exception&) {
      throw InputError(std::string("config field \"") + key +
                       "\": wrong type");
    }
  };

  OptimizerConfig c;
  c.restarts = get("restarts", c.restarts);
  c.max_iters = get("max_iters", c.max_iters);
  c.grad_step = get("grad_step", c.grad_step);
  c.tol = get("tol", c.tol);
  c.seed = get("seed", c.seed);
  c.optimize_xi = get("optimize_xi", c.optimize_xi);
  c.init_scale = get("init_scale", c.init_scale);
  c.threads = get("threads", c.threads);
  if (c.restarts < 1) throw InputError("config field \"restarts\": must be >= 1");
  if (c.max_iters < 0) throw InputError("config field \"max_iters\": must be >= 0");
  if (!(c.grad_step > 0.0))
    throw InputError("config field \"grad_step\": must be positive");
  const std::string objective = get("objective", std::string("state"));
  if (objective == "state") {
    c.objective = NoiseObjective::kState;
  } else if (objective == "sup") {
    c.objective = NoiseObjective::kSup;
  } else {
    throw InputError("config field \"objective\": expected \"state\" or \"sup\"");
  }

  const std::string family = get("family", std::string("spin_ladder"));
  const double size = get("size", 2.0);
  ProbeSetup probe = [&] {
    if (family == "spin_ladder") {
      if (size < 2.0 || size != std::floor(size) || size > 16.0)
        throw InputError("config field \"size\": spin_ladder needs an integer "
                         "probe dimension in [2, 16]");
      return spin_ladder_probe(static_cast<int>(size));
    }
    if (family == "oscillator") {
      const int n_max = get("n_max", 2);
      if (n_max < 1 || n_max > 5)
        throw InputError("config field \"n_max\": oscillator optimization "
                         "supports cutoffs 1..5");
      try {
        return oscillator_probe(size, n_max);
      } catch (const std::exception& e) {
        throw InputError(std::string("config field \"size\": ") + e.what());
      }
    }
    throw InputError("config field \"family\": expected \"spin_ladder\" or "
                     "\"oscillator\"");
  }();

  NoiseProblem problem = spin_measurement_problem(probe);
  const std::string observable = get("observable", std::string("Sx"));
  if (observable == "Sz") {
    problem.observable = spin_half().z;
  } else if (observable != "Sx") {
    throw InputError("config field \"observable\": expected \"Sx\" or \"Sz\"");
  }
  const std::string record = get("record", std::string("parity"));
  if (record == "l2") {
    problem.probe_observable = default_probe_observable(probe.l2);
  } else if (record != "parity") {
    throw InputError("config field \"record\": expected \"parity\" or \"l2\"");
  }

  Json echo;
  echo["restarts"] = c.restarts;
  echo["max_iters"] = c.max_iters;
  echo["grad_step"] = c.grad_step;
  echo["tol"] = c.tol;
  echo["seed"] = c.seed;
  echo["objective"] = objective;
  echo["optimize_xi"] = c.optimize_xi;
  echo["init_scale"] = c.init_scale;
  echo["family"] = family;
  echo["size"] = size;
  if (family == "oscillator") echo["n_max"] = get("n_max", 2);
  echo["observable"] = observable;
  echo["record"] = record;

  auto it = j.find("initial_theta");
  if (it == j.end() || (it->is_string() && *it == "zero")) {
    echo["initial_theta"] = "zero";
  } else if (it->is_string() && *it == "swap") {
    if (probe.l2.dim() != 2)
      throw InputError("config field \"initial_theta\": \"swap\" needs a "
                       "qubit probe");
    CommutantBasis basis = commutant_basis(problem.pair.total());
    c.initial_theta = theta_from_unitary(basis, swap_gate(2));
    echo["initial_theta"] = "swap";
  } else if (it->is_array()) {
    try {
      c.initial_theta = it->get<std::vector<double>>();
    } catch (const Json::exception&) {
      throw InputError("config field \"initial_theta\": expected numbers");
    }
    echo["initial_theta"] = c.initial_theta;
  } else {
    throw InputError("config field \"initial_theta\": expected \"zero\", "
                     "\"swap\" or an array");
  }
  return {std::move(problem), std::move(c), std::move(echo)};
}

}  // namespace

int cmd_optimize(const OptimizeOptions& opts, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    Json cfg = opts.config_path.empty() ? Json::object()
                                        : read_document(opts.config_path);
    RunSetup setup = parse_run_config(cfg);
    OptimizationRun run = optimize_noise(setup.problem, setup.config);
    Json j;
    j["config"] = setup.echo;
    j["run"] = optimization_run_json(run);
    j["environment"] = environment_json(setup.config.seed);
    emit(j.dump(2) + "\n", opts.out_path, out);
    if (run.bound_violations > 0) {
      err << "bound violated by " << run.bound_violations
          << " accepted iterates\n";
      return kExitViolation;
    }
    return kExitOk;
  });
}

int cmd_demo(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<DemoModel> demo;
    if (name == "swap") demo = swap_demo_model();
    if (name == "trivial") demo = trivial_demo_model();
    if (name == "cnot") demo = cnot_demo_model();
    if (demo) {
      out << model_to_json({demo->name, demo->description, demo->model,
                            demo->pair})
                 .dump(2)
          << "\n";
      return kExitOk;
    }
    if (name == "yw-sample") {
      out << yw_to_json(yw_sample_model()).dump(2) << "\n";
      return kExitOk;
    }
    std::string list;
    for (const std::string& n : demo_names()) list += (list.empty() ? "" : ", ") + n;
    throw InputError("unknown demo \"" + name + "\"; available: " + list);
  });
}

int cmd_variance_law(const VarianceLawOptions& opts, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    if (opts.n_max < 1 || opts.n_max > 60)
      throw InputError("--n-max must be in [1, 60]");
    FockSpace space(opts.n_max);
    Operator mz = m_z_operator(space);
    Rng rng(opts.seed);
    std::ostringstream csv;
    csv << "n_max,re_alpha,im_alpha,re_beta,im_beta,var_mz,var_law_error,"
           "bound\n";
    constexpr double kTwoPi = 6.283185307179586;
    for (double ra : opts.magnitudes) {
      for (double rb : opts.magnitudes) {
        if (ra < 0.0 || rb < 0.0) throw InputError("magnitudes must be >= 0");
        CoherentAmplitudes amp{std::polar(ra, kTwoPi * rng.uniform()),
                               std::polar(rb, kTwoPi * rng.uniform())};
        double var = variance(mz, two_mode_coherent_state(amp, space));
        csv << opts.n_max << "," << format_number(amp.alpha.real()) << ","
            << format_number(amp.alpha.imag()) << ","
            << format_number(amp.beta.real()) << ","
            << format_number(amp.beta.imag()) << "," << format_number(var)
            << "," << format_number(std::abs(var - amp.mean_quanta())) << ","
            << format_number(oscillator_bound(amp)) << "\n";
      }
    }
    emit(csv.str(), opts.out_path, out);
    return kExitOk;
  });
}

}  // namespace waylimit::cli
