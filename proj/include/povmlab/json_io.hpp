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

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "povmlab/dynamics.hpp"
#include "povmlab/optics.hpp"
#include "povmlab/povm.hpp"
#include "povmlab/states.hpp"

namespace povmlab {

// Wire formats. Complex numbers are [re, im] pairs; complex matrices are
// nested arrays of those pairs, row-major. All readers take a `where` path
// used to prefix SchemaError diagnostics ("state.rho[1][0]: ...").

std::string fnv1a64_hex(std::string_view bytes);

nlohmann::json complex_to_json(cdouble z);
cdouble complex_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json cvector_to_json(const cvector& v);
cvector cvector_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);

// {"dim": d, "rho": matrix, "intensity": s0}; readers also accept the pure
// form {"psi": [[re,im],...], "intensity": s0} with intensity optional.
nlohmann::json state_to_json(const DensityOperator& state);
DensityOperator state_from_json(const nlohmann::json& j, const std::string& where);

// {"dim": d, "elements": [{"label": "...", "matrix": ...}, ...]}
nlohmann::json povm_to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j, const std::string& where);

// {"values": [{"label": "...", "a": [[re,im],...]}, ...]}
nlohmann::json scale_to_json(const Scale& scale);
Scale scale_from_json(const nlohmann::json& j, const std::string& where);

// Plain array [s0, s1, s2, s3].
nlohmann::json stokes_to_json(const StokesVector& s);
StokesVector stokes_from_json(const nlohmann::json& j, const std::string& where);

// {"components": [matrix, ...]}; a bare matrix reads as one component.
nlohmann::json quantity_to_json(const QuantityVector& x);
QuantityVector quantity_from_json(const nlohmann::json& j, const std::string& where);

// {"kind": "hamiltonian"|"lindblad"|"raw_k", "matrix": ...,
//  "jumps": [{"op": matrix, "rate": g}, ...]} (jumps: lindblad only)
Generator generator_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace povmlab
