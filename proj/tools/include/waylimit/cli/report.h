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

#ifndef WAYLIMIT_CLI_REPORT_H_
#define WAYLIMIT_CLI_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waylimit/cli/json_io.h"
#include "waylimit/conservation.h"
#include "waylimit/optimizer.h"

namespace waylimit::cli {

// 17 significant digits, '.' separator, "inf"/"-inf"/"nan" for non-finite.
std::string format_number(double x);

// Finite values stay numbers; non-finite ones become the strings above.
Json number_json(double x);
Json optional_json(const std::optional<double>& x);

Json environment_json(std::optional<std::uint64_t> seed);

Json bound_report_json(const BoundReport& r);

// CSV header and row for a single report.
std::string bound_report_csv_header();
std::string bound_report_csv_row(const std::string& model,
                                 const std::string& state,
                                 const BoundReport& r);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

Json optimization_run_json(const OptimizationRun& run);

}  // namespace waylimit::cli

#endif  // WAYLIMIT_CLI_REPORT_H_
