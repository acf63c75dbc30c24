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

#ifndef WAYLIMIT_CLI_COMMANDS_H_
#define WAYLIMIT_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace waylimit::cli {

// Exit codes. 2 is reserved for a violated inequality or identity.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;

enum class Format { kJson, kCsv };

struct VerifyOptions {
  std::string model_path;
  std::string state = "alpha_y";
  Format format = Format::kJson;
  std::optional<std::pair<double, double>> interval;
  // Probe variance for the ε_Y² ≥ 1/(2 + 8v) check on YW files.
  std::optional<double> probe_variance;
};

struct SweepOptions {
  std::string family;
  std::vector<double> sizes;
  std::string out_path;  // empty: write to out
  std::uint64_t seed = 0;
  int restarts = 16;
  int max_iters = 200;
  bool optimize_xi = false;
};

struct OptimizeOptions {
  std::string config_path;  // empty: default config
  std::string out_path;
};

struct VarianceLawOptions {
  int n_max = 40;
  std::vector<double> magnitudes = {0.0, 0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_optimize(const OptimizeOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_demo(const std::string& name, std::ostream& out, std::ostream& err);
int cmd_variance_law(const VarianceLawOptions& opts, std::ostream& out,
                     std::ostream& err);

std::vector<std::string> demo_names();

}  // namespace waylimit::cli

#endif  // WAYLIMIT_CLI_COMMANDS_H_
