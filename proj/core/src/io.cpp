// Copyright 2026 The schmidt authors
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

#include "schmidt/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "schmidt/errors.hpp"

namespace schmidt {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

std::vector<std::size_t> read_dims(const Json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) throw ParseError("missing dims list");
  std::vector<std::size_t> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw ParseError("dims must be positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

CVector read_complex_list(const Json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be a list of [re, im] pairs");
  CVector out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(std::string(field) + " entries must be [re, im] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Json complex_list(const CVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(Json::array({x.real(), x.imag()}));
  return out;
}

}  // namespace

StateTensor load_state(const std::string& text, const Tolerance& tol) {
  const Json j = parse(text);
  const auto dims = read_dims(j);
  if (!j.contains("amps")) throw ParseError("missing amps");
  CVector amps = read_complex_list(j["amps"], "amps");
  bool normalize = false;
  if (j.contains("normalize")) {
    if (!j["normalize"].is_boolean()) throw ParseError("normalize must be a boolean");
    normalize = j["normalize"].get<bool>();
  }
  return StateTensor(dims, std::move(amps),
                     normalize ? StateTensor::Normalization::Auto
                               : StateTensor::Normalization::Require,
                     tol);
}

std::string save_state(const StateTensor& psi) {
  Json j;
  j["dims"] = psi.dims();
  j["amps"] = complex_list(psi.amps());
  j["normalize"] = false;
  return j.dump(2) + "\n";
}

DecompositionDocument load_decomposition(const std::string& text) {
  const Json j = parse(text);
  DecompositionDocument doc;
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw ParseError("missing coeffs");
  for (const auto& c : j["coeffs"]) {
    if (!c.is_number()) throw ParseError("coeffs must be numbers");
    doc.decomposition.coeffs.push_back(c.get<double>());
  }
  if (!j.contains("vectors") || !j["vectors"].is_array()) throw ParseError("missing vectors");
  for (const auto& sub : j["vectors"]) {
    if (!sub.is_array()) throw ParseError("vectors must be nested lists");
    std::vector<CVector> list;
    for (const auto& v : sub) list.push_back(read_complex_list(v, "vectors"));
    doc.decomposition.vectors.push_back(std::move(list));
  }
  if (j.contains("rank") &&
      j["rank"].get<std::size_t>() != doc.decomposition.coeffs.size()) {
    throw ParseError("rank does not match coeffs length");
  }
  for (const auto& sub : doc.decomposition.vectors) {
    if (sub.size() != doc.decomposition.coeffs.size()) {
      throw ParseError("vector count does not match rank");
    }
  }
  if (j.contains("residual")) doc.residual = j["residual"].get<double>();
  return doc;
}

std::string save_decomposition(const SchmidtDecomposition& d, double residual) {
  Json j;
  j["rank"] = d.rank();
  j["coeffs"] = d.coeffs;
  Json vectors = Json::array();
  for (const auto& sub : d.vectors) {
    Json list = Json::array();
    for (const auto& v : sub) list.push_back(complex_list(v));
    vectors.push_back(std::move(list));
  }
  j["vectors"] = std::move(vectors);
  j["residual"] = residual;
  return j.dump(2) + "\n";
}

DensityDocument load_density(const std::string& text, const Tolerance& tol) {
  const Json j = parse(text);
  auto dims = read_dims(j);
  if (!j.contains("density")) throw ParseError("missing density");
  CVector entries = read_complex_list(j["density"], "density");
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (entries.size() != total * total) {
    throw DimensionMismatch("density needs " + std::to_string(total * total) + " entries, got " +
                            std::to_string(entries.size()));
  }
  ComplexMatrix m(total, total, std::move(entries));
  return {std::move(dims), DensityMatrix(std::move(m), tol)};
}

std::string save_density(const std::vector<std::size_t>& dims, const DensityMatrix& rho) {
  Json j;
  j["dims"] = dims;
  j["density"] = complex_list(rho.entries().entries());
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out.flush()) throw ParseError("cannot write " + path);
}

}  // namespace schmidt
