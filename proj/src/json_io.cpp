// Copyright 2026 The povmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "povmlab/json_io.hpp"

#include <cstdio>
#include <utility>
#include <vector>

#include "povmlab/errors.hpp"
#include "povmlab/hermitian.hpp"

namespace povmlab {

namespace {

using nlohmann::json;

// Library validation failures on parsed inputs are schema problems from the
// batch user's point of view; keep the path in front of the message.
template <typename F>
auto reframe(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
  return *it;
}

int dim_field(const json& j, const std::string& where) {
  const json& d = field(j, "dim", where);
  if (!d.is_number_integer() || d.get<int>() <= 0)
    throw SchemaError(where + ".dim: expected a positive integer");
  return d.get<int>();
}

std::string label_field(const json& j, const std::string& where) {
  const json& l = field(j, "label", where);
  if (!l.is_string()) throw SchemaError(where + ".label: expected a string");
  return l.get<std::string>();
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(where + ": expected an [re, im] pair");
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

json cvector_to_json(const cvector& v) {
  json out = json::array();
  for (const cdouble& z : v) out.push_back(complex_to_json(z));
  return out;
}

cvector cvector_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw SchemaError(where + ": expected a nonempty array of [re, im] pairs");
  cvector v;
  v.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw SchemaError(where + ": expected a nonempty array of rows");
  const size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw SchemaError(where + "[0]: expected a nonempty row array");
  const size_t cols = j[0].size();
  ComplexMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols)
      throw SchemaError(row_where + ": rows must all have " +
                        std::to_string(cols) + " entries");
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<int>(i), static_cast<int>(k)) =
          complex_from_json(j[i][k], row_where + "[" + std::to_string(k) + "]");
  }
  return m;
}

json state_to_json(const DensityOperator& state) {
  json out;
  out["dim"] = state.rho().dim();
  out["rho"] = matrix_to_json(state.matrix());
  out["intensity"] = state.intensity();
  return out;
}

DensityOperator state_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  double intensity = 1.0;
  if (j.contains("intensity"))
    intensity = number_at(j["intensity"], where + ".intensity");
  if (j.contains("psi")) {
    const cvector psi = cvector_from_json(j["psi"], where + ".psi");
    return reframe(where,
                   [&] { return pure_state(StateVector(psi), intensity); });
  }
  const int d = dim_field(j, where);
  const ComplexMatrix rho = matrix_from_json(field(j, "rho", where), where + ".rho");
  if (rho.rows() != d || rho.cols() != d)
    throw SchemaError(where + ".rho: matrix is " + std::to_string(rho.rows()) +
                      "x" + std::to_string(rho.cols()) + " but dim is " +
                      std::to_string(d));
  return reframe(where, [&] {
    return DensityOperator(HermitianOperator(rho), intensity);
  });
}

json povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (int k = 0; k < povm.size(); ++k) {
    json e;
    e["label"] = povm.label(k);
    e["matrix"] = matrix_to_json(povm.element(k).matrix());
    elements.push_back(std::move(e));
  }
  json out;
  out["dim"] = povm.dim();
  out["elements"] = std::move(elements);
  return out;
}

Povm povm_from_json(const json& j, const std::string& where) {
  const int d = dim_field(j, where);
  const json& elements = field(j, "elements", where);
  if (!elements.is_array() || elements.empty())
    throw SchemaError(where + ".elements: expected a nonempty array");
  std::vector<std::pair<std::string, HermitianOperator>> parsed;
  parsed.reserve(elements.size());
  for (size_t k = 0; k < elements.size(); ++k) {
    const std::string e_where = where + ".elements[" + std::to_string(k) + "]";
    const std::string label = label_field(elements[k], e_where);
    const ComplexMatrix m =
        matrix_from_json(field(elements[k], "matrix", e_where), e_where + ".matrix");
    if (m.rows() != d || m.cols() != d)
      throw SchemaError(e_where + ".matrix: expected " + std::to_string(d) +
                        "x" + std::to_string(d));
    reframe(e_where + ".matrix", [&] {
      parsed.emplace_back(label, HermitianOperator(m));
      return 0;
    });
  }
  return reframe(where, [&] { return Povm(parsed); });
}

json scale_to_json(const Scale& scale) {
  json values = json::array();
  for (int k = 0; k < scale.size(); ++k) {
    json v;
    v["label"] = scale.label(k);
    v["a"] = cvector_to_json(scale.value(k));
    values.push_back(std::move(v));
  }
  json out;
  out["values"] = std::move(values);
  return out;
}

Scale scale_from_json(const json& j, const std::string& where) {
  const json& values = field(j, "values", where);
  if (!values.is_array() || values.empty())
    throw SchemaError(where + ".values: expected a nonempty array");
  std::vector<std::pair<std::string, cvector>> parsed;
  parsed.reserve(values.size());
  for (size_t k = 0; k < values.size(); ++k) {
    const std::string v_where = where + ".values[" + std::to_string(k) + "]";
    parsed.emplace_back(
        label_field(values[k], v_where),
        cvector_from_json(field(values[k], "a", v_where), v_where + ".a"));
  }
  return reframe(where, [&] { return Scale(parsed); });
}

json stokes_to_json(const StokesVector& s) {
  return json::array({s.s0, s.s1, s.s2, s.s3});
}

StokesVector stokes_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw SchemaError(where + ": expected [s0, s1, s2, s3]");
  double c[4];
  for (size_t i = 0; i < 4; ++i)
    c[i] = number_at(j[i], where + "[" + std::to_string(i) + "]");
  return reframe(where, [&] { return StokesVector(c[0], c[1], c[2], c[3]); });
}

json quantity_to_json(const QuantityVector& x) {
  json components = json::array();
  for (const ComplexMatrix& m : x.components()) components.push_back(matrix_to_json(m));
  json out;
  out["components"] = std::move(components);
  return out;
}

QuantityVector quantity_from_json(const json& j, const std::string& where) {
  if (j.is_array()) {
    // Bare matrix: single-component quantity.
    return reframe(where, [&] {
      return QuantityVector::scalar(matrix_from_json(j, where));
    });
  }
  const json& components = field(j, "components", where);
  if (!components.is_array() || components.empty())
    throw SchemaError(where + ".components: expected a nonempty array of matrices");
  std::vector<ComplexMatrix> parsed;
  parsed.reserve(components.size());
  for (size_t i = 0; i < components.size(); ++i)
    parsed.push_back(matrix_from_json(
        components[i], where + ".components[" + std::to_string(i) + "]"));
  return reframe(where, [&] { return QuantityVector(parsed); });
}

Generator generator_from_json(const json& j, const std::string& where) {
  const json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw SchemaError(where + ".kind: expected a string");
  const std::string k = kind.get<std::string>();
  const ComplexMatrix m =
      matrix_from_json(field(j, "matrix", where), where + ".matrix");
  if (m.rows() != m.cols())
    throw SchemaError(where + ".matrix: generator matrix must be square");

  if (k == "raw_k" || k == "hamiltonian") {
    if (j.contains("jumps"))
      throw SchemaError(where + ".jumps: only valid for kind \"lindblad\"");
    return k == "raw_k" ? Generator::raw_k(m) : Generator::hamiltonian(m);
  }
  if (k == "lindblad") {
    std::vector<Jump> jumps;
    if (j.contains("jumps")) {
      const json& arr = j["jumps"];
      if (!arr.is_array())
        throw SchemaError(where + ".jumps: expected an array");
      for (size_t i = 0; i < arr.size(); ++i) {
        const std::string j_where = where + ".jumps[" + std::to_string(i) + "]";
        const ComplexMatrix op =
            matrix_from_json(field(arr[i], "op", j_where), j_where + ".op");
        const double rate =
            number_at(field(arr[i], "rate", j_where), j_where + ".rate");
        if (rate < 0.0)
          throw SchemaError(j_where + ".rate: must be nonnegative");
        jumps.push_back({op, rate});
      }
    }
    return Generator::lindblad(m, std::move(jumps));
  }
  throw SchemaError(where + ".kind: unknown kind \"" + k +
                    "\" (use raw_k, hamiltonian or lindblad)");
}

}  // namespace povmlab
