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

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "waylimit/cli/commands.h"

namespace cli = waylimit::cli;

int main(int argc, char** argv) {
  CLI::App app{"waylimit: accuracy limits for conservative quantum measurements"};
  app.set_version_flag("--version", std::string(WAYLIMIT_VERSION_STRING));
  app.require_subcommand(1);

  cli::VerifyOptions verify;
  bool verify_json = false, verify_csv = false;
  std::vector<double> interval;
  auto* v = app.add_subcommand("verify", "Check bounds and identities for a model file");
  v->add_option("model", verify.model_path, "Model JSON file")->required();
  v->add_option("--state", verify.state,
                "Object state: alpha_x|alpha_y|alpha_z|beta_* or a JSON amplitude array");
  auto* json_flag = v->add_flag("--json", verify_json, "JSON report (default)");
  v->add_flag("--csv", verify_csv, "CSV report")->excludes(json_flag);
  v->add_option("--interval", interval, "Outcome interval LO HI")->expected(2);
  v->add_option("--probe-variance", verify.probe_variance,
                "Probe variance of m_z for YW files");

  cli::SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "Bound versus probe size");
  s->add_option("--family", sweep.family, "spin_ladder or oscillator")->required();
  s->add_option("--sizes", sweep.sizes, "Probe sizes")->required()->delimiter(',');
  s->add_option("--out", sweep.out_path, "CSV output path (default stdout)");
  s->add_option("--seed", sweep.seed, "Master seed");
  s->add_option("--restarts", sweep.restarts, "Optimizer restarts");
  s->add_option("--max-iters", sweep.max_iters, "Optimizer iterations");
  s->add_flag("--optimize-xi", sweep.optimize_xi, "Also optimize the probe state");

  cli::OptimizeOptions optimize;
  auto* o = app.add_subcommand("optimize", "Minimize noise over conservative unitaries");
  o->add_option("--config", optimize.config_path, "Run config JSON");
  o->add_option("--out", optimize.out_path, "Output path (default stdout)");

  std::string demo_name;
  auto* d = app.add_subcommand("demo", "Print a built-in model file");
  d->add_option("name", demo_name, "swap, trivial, cnot or yw-sample")->required();

  cli::VarianceLawOptions law;
  auto* l = app.add_subcommand("variance-law", "Oscillator m_z variance against |α|²+|β|²");
  l->add_option("--n-max", law.n_max, "Fock cutoff per mode");
  l->add_option("--magnitudes", law.magnitudes, "Amplitude magnitudes")->delimiter(',');
  l->add_option("--seed", law.seed, "Phase seed");
  l->add_option("--out", law.out_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInput;
  }

  try {
    if (*v) {
      verify.format = verify_csv ? cli::Format::kCsv : cli::Format::kJson;
      if (!interval.empty()) verify.interval = std::pair{interval[0], interval[1]};
      return cli::cmd_verify(verify, std::cout, std::cerr);
    }
    if (*s) return cli::cmd_sweep(sweep, std::cout, std::cerr);
    if (*o) return cli::cmd_optimize(optimize, std::cout, std::cerr);
    if (*d) return cli::cmd_demo(demo_name, std::cout, std::cerr);
    if (*l) return cli::cmd_variance_law(law, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return cli::kExitInput;
}
