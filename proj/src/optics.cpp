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

#include "povmlab/optics.hpp"

#include <cmath>
#include <string>

#include "povmlab/errors.hpp"
#include "povmlab/hermitian.hpp"

namespace povmlab {

namespace {

constexpr double kStokesTol = 1e-10;

// Intensity ratios below this count as total absorption.
constexpr double kAbsorptionRatio = 1e-12;

void check_qubit(const DensityOperator& state, const char* where) {
  if (state.rho().dim() != 2) {
    throw ShapeError(std::string(where) + " expects a qubit state, got dim " +
                     std::to_string(state.rho().dim()));
  }
}

}  // namespace

StokesVector::StokesVector(double s0_, double s1_, double s2_, double s3_)
    : s0(s0_), s1(s1_), s2(s2_), s3(s3_) {
  if (!std::isfinite(s0) || !std::isfinite(s1) || !std::isfinite(s2) ||
      !std::isfinite(s3)) {
    throw ValidationError("Stokes components must be finite");
  }
  // Polarized power cannot exceed the total beam power.
  if (s0 < polarized_norm() - kStokesTol) {
    throw ValidationError("unphysical Stokes vector: |s| = " +
                          std::to_string(polarized_norm()) + " exceeds s0 = " +
                          std::to_string(s0));
  }
}

double StokesVector::polarized_norm() const {
  return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

DensityOperator stokes_to_coherence(const StokesVector& s) {
  if (s.s0 <= 0.0) {
    throw ValidationError("Stokes vector carries no intensity (s0 = " +
                          std::to_string(s.s0) + ")");
  }
  ComplexMatrix coherence = pauli(0);
  coherence *= cdouble(s.s0, 0.0);
  const double components[3] = {s.s1, s.s2, s.s3};
  for (int k = 0; k < 3; ++k) {
    coherence += cdouble(components[k], 0.0) * pauli(k + 1);
  }
  coherence *= cdouble(0.5, 0.0);
  return DensityOperator::from_unnormalized(HermitianOperator(coherence));
}

StokesVector coherence_to_stokes(const DensityOperator& state) {
  check_qubit(state, "coherence_to_stokes");
  const ComplexMatrix unnormalized = state.unnormalized();
  double s[4];
  for (int k = 0; k < 4; ++k) {
    s[k] = trace_product(unnormalized, pauli(k)).real();
  }
  return StokesVector(s[0], s[1], s[2], s[3]);
}

double degree_of_polarization(const StokesVector& s) {
  if (s.s0 <= 0.0) {
    throw ValidationError("degree of polarization undefined for s0 = " +
                          std::to_string(s.s0));
  }
  return s.polarized_norm() / s.s0;
}

JonesResult apply_jones(const ComplexMatrix& t, const DensityOperator& state) {
  const int d = state.rho().dim();
  if (t.rows() != d || t.cols() != d) {
    throw ShapeError("Jones matrix is " + std::to_string(t.rows()) + "x" +
                     std::to_string(t.cols()) + ", state has dim " +
                     std::to_string(d));
  }
  const ComplexMatrix out = t * state.unnormalized() * t.adjoint();
  double out_intensity = out.trace().real();
  if (out_intensity < 0.0) out_intensity = 0.0;

  JonesResult result;
  result.intensity = out_intensity;
  if (out_intensity <= kAbsorptionRatio * state.intensity()) {
    result.absorbed = true;
    return result;
  }
  result.state = DensityOperator::from_unnormalized(HermitianOperator(out));
  return result;
}

double malus(const StateVector& phi, const StateVector& psi) {
  if (phi.dim() != psi.dim()) {
    throw ShapeError("polarizer axis and beam state differ in dimension");
  }
  return std::norm(inner(phi.psi(), psi.psi()));
}

MuellerMatrix mueller_from_jones(const ComplexMatrix& t) {
  if (t.rows() != 2 || t.cols() != 2) {
    throw ShapeError("Mueller construction needs a 2x2 Jones matrix");
  }
  const ComplexMatrix t_adj = t.adjoint();
  MuellerMatrix m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // tr(sigma_i T sigma_j T^dag) is real: the argument equals its adjoint
      // under the trace.
      m[i][j] =
          0.5 * (pauli(i) * t * pauli(j) * t_adj).trace().real();
    }
  }
  return m;
}

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s) {
  const double in[4] = {s.s0, s.s1, s.s2, s.s3};
  double out[4] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[i] += m[i][j] * in[j];
    }
  }
  return StokesVector(out[0], out[1], out[2], out[3]);
}

}  // namespace povmlab
