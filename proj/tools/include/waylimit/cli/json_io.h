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

#ifndef WAYLIMIT_CLI_JSON_IO_H_
#define WAYLIMIT_CLI_JSON_IO_H_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "waylimit/conservation.h"
#include "waylimit/measurement.h"
#include "waylimit/operator.h"
#include "waylimit/spin.h"

namespace waylimit::cli {

using Json = nlohmann::ordered_json;

// Bad input: unreadable file, malformed JSON, schema or invariant failure.
// Commands map it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchemaVersion = "v1";

// Complex scalars are [re, im]; matrices are nested row-major arrays.
Json to_json(Complex z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

Complex complex_from_json(const Json& j, const std::string& path);
Vector vector_from_json(const Json& j, int dim, const std::string& path);
Matrix matrix_from_json(const Json& j, int dim, const std::string& path);

struct ModelFile {
  std::string name;
  std::string description;
  MeasurementModel model;
  ConservationPair pair;
};

Json model_to_json(const ModelFile& file);
ModelFile model_from_json(const Json& j);

Json yw_to_json(const YWModel& yw);
YWModel yw_from_json(const Json& j);
bool is_yw_document(const Json& j);

// Parse errors carry "source:line:column".
Json parse_document(const std::string& text, const std::string& source);
std::string read_text_file(const std::string& path);
Json read_document(const std::string& path);

// alpha_x|alpha_y|alpha_z|beta_x|beta_y|beta_z, or an inline JSON array of
// complex amplitudes.
Ket parse_state(const std::string& spec, int dim);

}  // namespace waylimit::cli

#endif  // WAYLIMIT_CLI_JSON_IO_H_
