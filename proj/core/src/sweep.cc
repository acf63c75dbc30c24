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

#include <cmath>
#include <limits>
#include <sstream>

#include "waylimit/errors.h"
#include "waylimit/optimizer.h"
#include "waylimit/oscillator.h"
#include "waylimit/spin.h"

namespace waylimit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Largest cutoff for which the dense two-mode m_z is built in a sweep.
constexpr int kMaxSweepCutoff = 40;

SweepRow spin_ladder_row(double size, const OptimizerConfig& config) {
  SweepRow row{ProbeFamily::kSpinLadder, size, kNaN, kNaN, kNaN, kNaN,
               config.seed, ""};
  if (!(size >= 2.0) || size != std::floor(size)) {
    row.error = "spin_ladder size must be an integer probe dimension >= 2";
    return row;
  }
  ProbeSetup probe = spin_ladder_probe(static_cast<int>(size));
  row.var_mz = variance(probe.l2, probe.xi);
  row.bound = optimal_spin_bound(row.var_mz);
  OptimizationRun run = optimize_noise(spin_measurement_problem(probe), config);
  row.achieved = run.eps_sq;
  row.gap_ratio = row.achieved / row.bound;
  if (run.bound_violations > 0) {
    std::ostringstream os;
    os << run.bound_violations << " iterates fell below the bound";
    row.error = os.str();
  }
  return row;
}

SweepRow oscillator_row(double size) {
  SweepRow row{ProbeFamily::kOscillator, size, kNaN, kNaN, kNaN, kNaN, 0, ""};
  if (!(size >= 0.0)) {
    row.error = "oscillator size (mean quanta) must be non-negative";
    return row;
  }
  const double amp = std::sqrt(0.5 * size);
  row.bound = oscillator_bound({amp, amp});
  const int n_max = std::max(kMaxSweepCutoff, static_cast<int>(std::ceil(4.0 * size)));
  if (n_max > kMaxSweepCutoff) {
    row.error = "mean quanta too large for the dense truncated variance";
    return row;
  }
  try {
    FockSpace space(n_max);
    row.var_mz = variance(m_z_operator(space),
                          two_mode_coherent_state({amp, amp}, space));
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::string to_string(ProbeFamily family) {
  switch (family) {
    case ProbeFamily::kSpinLadder:
      return "spin_ladder";
    case ProbeFamily::kOscillator:
      return "oscillator";
  }
  return "unknown";
}

ProbeSetup spin_ladder_probe(int dim) {
  if (dim < 2) throw DimensionError("spin ladder probe needs dimension >= 2");
  Operator l2 = spin_ladder_z(dim);
  Operator record = parity_record(l2);
  return {std::move(l2), std::move(record), spin_coherent_x(dim)};
}

ProbeSetup oscillator_probe(double quanta, int n_max) {
  FockSpace space(n_max);
  const double amp = std::sqrt(0.5 * quanta);
  Operator l2 = m_z_operator(space);
  Operator record = parity_record(l2);
  return {std::move(l2), std::move(record),
          two_mode_coherent_state({amp, amp}, space)};
}

NoiseProblem spin_measurement_problem(const ProbeSetup& probe) {
  const SpinOperators& s = spin_half();
  return {s.x, ConservationPair(s.z, probe.l2), probe.record, probe.xi,
          alpha(Axis::kY)};
}

std::vector<SweepRow> sweep_probe_size(ProbeFamily family,
                                       const std::vector<double>& sizes,
                                       const OptimizerConfig& config) {
  std::vector<SweepRow> rows;
  rows.reserve(sizes.size());
  for (double size : sizes) {
    try {
      rows.push_back(family == ProbeFamily::kSpinLadder
                         ? spin_ladder_row(size, config)
                         : oscillator_row(size));
    } catch (const std::exception& e) {
      SweepRow row{family, size, kNaN, kNaN, kNaN, kNaN, config.seed, e.what()};
      rows.push_back(std::move(row));
    }
    if (family == ProbeFamily::kOscillator) rows.back().seed = config.seed;
  }
  return rows;
}

}  // namespace waylimit
