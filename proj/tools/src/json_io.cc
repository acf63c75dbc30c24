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

#include "waylimit/cli/json_io.h"

#include <fstream>
#include <sstream>

namespace waylimit::cli {
namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

int positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string("field \"") + key +
                     "\": expected a positive integer");
  }
  return v.get<int>();
}

void check_schema(const Json& j) {
  if (!j.is_object()) throw InputError("document root must be an object");
  auto it = j.find("schema");
  if (it == j.end()) throw InputError("missing field \"schema\"");
  if (!it->is_string() || it->get<std::string>() != kSchemaVersion) {
    throw InputError(std::string("field \"schema\": expected \"") +
                     kSchemaVersion + "\"");
  }
}

// Runs a structural constructor and names the offending field on failure.
template <typename F>
auto validated(const std::string& name, F&& make) {
  try {
    return make();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError("field \"" + name + "\": " + e.what());
  }
}

Operator hermitian_field(const Json& j, const char* key, int dim) {
  Matrix m = matrix_from_json(field(j, key), dim, key);
  return validated(key, [&] { return Operator::hermitian(std::move(m), key); });
}

Ket ket_field(const Json& j, const char* key, int dim, bool normalized) {
  Vector v = vector_from_json(field(j, key), dim, key);
  return validated(key, [&] {
    return normalized ? Ket::normalized(std::move(v))
                      : Ket::unnormalized(std::move(v));
  });
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("field \"" + path + "\": expected [re, im]");
}

Vector vector_from_json(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    std::ostringstream os;
    os << "field \"" << path << "\": expected " << dim << " amplitudes";
    if (j.is_array()) os << ", got " << j.size();
    throw InputError(os.str());
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_from_json(j[i], at(path, i));
  return v;
}

Matrix matrix_from_json(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    std::ostringstream os;
    os << "field \"" << path << "\": expected " << dim << "x" << dim
       << " matrix";
    if (j.is_array()) os << ", got " << j.size() << " rows";
    throw InputError(os.str());
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      std::ostringstream os;
      os << "field \"" << at(path, r) << "\": expected " << dim << " entries";
      throw InputError(os.str());
    }
    for (int c = 0; c < dim; ++c) {
      m(r, c) = complex_from_json(row[c], at(at(path, r), c));
    }
  }
  return m;
}

Json model_to_json(const ModelFile& file) {
  const MeasurementModel& m = file.model;
  Json j;
  j["schema"] = kSchemaVersion;
  j["object_dim"] = m.object_dim();
  j["probe_dim"] = m.probe_dim();
  j["A"] = to_json(m.observable().matrix());
  j["L1"] = to_json(file.pair.object_part().matrix());
  j["L2"] = to_json(file.pair.probe_part().matrix());
  j["M"] = to_json(m.probe_observable().matrix());
  j["U"] = to_json(m.interaction().matrix());
  j["xi"] = to_json(m.probe_state().amplitudes());
  j["metadata"] = {{"name", file.name}, {"description", file.description}};
  return j;
}

ModelFile model_from_json(const Json& j) {
  check_schema(j);
  const int d1 = positive_int(j, "object_dim");
  const int d2 = positive_int(j, "probe_dim");
  Operator a = hermitian_field(j, "A", d1);
  Operator l1 = hermitian_field(j, "L1", d1);
  Operator l2 = hermitian_field(j, "L2", d2);
  Operator m = hermitian_field(j, "M", d2);
  Matrix u_raw = matrix_from_json(field(j, "U"), d1 * d2, "U");
  Operator u =
      validated("U", [&] { return Operator::unitary(std::move(u_raw), "U"); });
  Ket xi = ket_field(j, "xi", d2, true);
  std::string name, description;
  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw InputError("field \"metadata\": expected object");
    name = it->value("name", "");
    description = it->value("description", "");
  }
  return {std::move(name), std::move(description),
          MeasurementModel(std::move(a), std::move(xi), std::move(u),
                           std::move(m)),
          ConservationPair(std::move(l1), std::move(l2))};
}

Json yw_to_json(const YWModel& yw) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["probe_dim"] = yw.probe_dim();
  j["xi"] = to_json(yw.probe_state().amplitudes());
  j["xi_plus"] = to_json(yw.xi_plus().amplitudes());
  j["xi_minus"] = to_json(yw.xi_minus().amplitudes());
  j["eta_plus"] = to_json(yw.eta_plus().amplitudes());
  j["eta_minus"] = to_json(yw.eta_minus().amplitudes());
  j["M"] = to_json(yw.probe_observable().matrix());
  return j;
}

YWModel yw_from_json(const Json& j) {
  check_schema(j);
  const int d = positive_int(j, "probe_dim");
  Ket xi = ket_field(j, "xi", d, true);
  Ket xp = ket_field(j, "xi_plus", d, false);
  Ket xm = ket_field(j, "xi_minus", d, false);
  Ket ep = ket_field(j, "eta_plus", d, false);
  Ket em = ket_field(j, "eta_minus", d, false);
  Operator m = hermitian_field(j, "M", d);
  return validated("yw", [&] {
    return YWModel(std::move(xi), std::move(xp), std::move(xm), std::move(ep),
                   std::move(em), std::move(m));
  });
}

bool is_yw_document(const Json& j) {
  return j.is_object() && j.contains("eta_plus");
}

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(
        e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": malformed JSON";
    throw InputError(os.str());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_document(const std::string& path) {
  return parse_document(read_text_file(path), path);
}

Ket parse_state(const std::string& spec, int dim) {
  static const std::pair<const char*, std::pair<Axis, bool>> kNamed[] = {
      {"alpha_x", {Axis::kX, true}},  {"alpha_y", {Axis::kY, true}},
      {"alpha_z", {Axis::kZ, true}},  {"beta_x", {Axis::kX, false}},
      {"beta_y", {Axis::kY, false}},  {"beta_z", {Axis::kZ, false}},
  };
  for (const auto& [name, which] : kNamed) {
    if (spec != name) continue;
    if (dim != 2) {
      throw InputError("state \"" + spec + "\" needs a qubit object, got dim " +
                       std::to_string(dim));
    }
    return which.second ? alpha(which.first) : beta(which.first);
  }
  Json j = parse_document(spec, "--state");
  Vector v = vector_from_json(j, dim, "state");
  return validated("state", [&] { return Ket::normalized(std::move(v)); });
}

}  // namespace waylimit::cli
