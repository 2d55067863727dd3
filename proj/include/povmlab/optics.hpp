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

#include <array>
#include <optional>

#include "povmlab/states.hpp"

namespace povmlab {

// Polarization state of a light beam: total intensity s0 and the three
// polarization components, all in the same units. Physical vectors satisfy
// s0 >= |(s1, s2, s3)|.
struct StokesVector {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  StokesVector() = default;
  StokesVector(double s0_, double s1_, double s2_, double s3_);

  double polarized_norm() const;  // |(s1, s2, s3)|
};

// rho = (s0 I + s . sigma)/2, handed back normalized with intensity s0.
DensityOperator stokes_to_coherence(const StokesVector& s);

// s_k = tr(intensity * rho * sigma_k); inverse of stokes_to_coherence.
StokesVector coherence_to_stokes(const DensityOperator& state);

// |s|/s0 in [0, 1]; 1 exactly for pure (fully polarized) beams.
double degree_of_polarization(const StokesVector& s);

struct JonesResult {
  bool absorbed = false;                // intensity ratio fell below 1e-12
  double intensity = 0.0;               // output beam intensity
  std::optional<DensityOperator> state; // absent when absorbed
};

// Instrument action rho -> T rho T^dag on the unnormalized coherence matrix.
JonesResult apply_jones(const ComplexMatrix& t, const DensityOperator& state);

// Transmitted fraction |phi^dag psi|^2 of psi through an ideal polarizer
// along phi.
double malus(const StateVector& phi, const StateVector& psi);

using MuellerMatrix = std::array<std::array<double, 4>, 4>;

// M_ij = tr(sigma_i T sigma_j T^dag)/2, the Stokes-space matrix of the
// instrument: coherence_to_stokes(T rho T^dag) = M * coherence_to_stokes(rho).
MuellerMatrix mueller_from_jones(const ComplexMatrix& t);

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s);

}  // namespace povmlab
