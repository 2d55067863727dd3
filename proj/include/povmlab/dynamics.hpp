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

#include <functional>
#include <utility>
#include <vector>

#include "povmlab/states.hpp"

namespace povmlab {

// Time-indexed generator matrix. Units use hbar = 1 throughout.
using TimeDependentMatrix = std::function<ComplexMatrix(double)>;

struct Jump {
  ComplexMatrix op;
  double rate = 0.0;
};

// Bundled evolution description for callers that dispatch on kind (the CLI
// does); the evolve_* functions below are the direct API.
struct Generator {
  enum class Kind { RawK, Hamiltonian, Lindblad };

  Kind kind = Kind::Hamiltonian;
  TimeDependentMatrix matrix;  // K(t) for RawK, H(t) otherwise
  std::vector<Jump> jumps;     // Lindblad only

  static Generator raw_k(TimeDependentMatrix k);
  static Generator raw_k(const ComplexMatrix& k);
  static Generator hamiltonian(TimeDependentMatrix h);
  static Generator hamiltonian(const ComplexMatrix& h);
  static Generator lindblad(TimeDependentMatrix h, std::vector<Jump> jumps);
  static Generator lindblad(const ComplexMatrix& h, std::vector<Jump> jumps);
};

// Density-operator trajectory. Attenuation shows up in the per-sample
// intensity; each stored state is normalized.
struct DensityTrajectory {
  std::vector<double> times;
  std::vector<DensityOperator> states;
};

// Pure-state trajectory. norms records the raw (pre-normalization) vector
// norm per sample as the integrator drift diagnostic.
struct PureTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> norms;
};

// d/dt rho~ = K(t) rho~ + rho~ K(t)^dag on the unnormalized operator,
// integrated with classical fixed-step RK4 (substeps of at most `step` per
// sample gap) and re-symmetrized each substep.
DensityTrajectory evolve_liouville(const TimeDependentMatrix& k, const DensityOperator& rho0,
                                   const std::vector<double>& times, double step);

// d/dt psi = -i H(t) psi. H(t) is validated Hermitian at every evaluation.
PureTrajectory evolve_schrodinger(const TimeDependentMatrix& h, const StateVector& psi0,
                                  const std::vector<double>& times, double step);

// d/dt rho = -i[H, rho] + sum_j rate_j (L rho L^dag - {L^dag L, rho}/2).
DensityTrajectory evolve_lindblad(const TimeDependentMatrix& h, const std::vector<Jump>& jumps,
                                  const DensityOperator& rho0, const std::vector<double>& times,
                                  double step);

// Dispatch on the generator kind; Hamiltonian runs as K = -iH.
DensityTrajectory evolve(const Generator& generator, const DensityOperator& rho0,
                         const std::vector<double>& times, double step);

// All positive pairwise eigenvalue differences of H, ascending, deduplicated
// at 1e-9. Empty for degenerate spectra.
std::vector<double> spectral_lines(const HermitianOperator& h);

struct SpectrumMembership {
  bool member = false;
  double min_value = 0.0;  // smallest eigenvalue of sum (X_j - xi_j)^dag (X_j - xi_j)
};

// xi lies in the joint spectrum iff some state concentrates |X - xi|^2 below
// tol; in finite dimension that infimum is an eigenvalue.
SpectrumMembership spectrum_membership(const QuantityVector& x, const cvector& xi,
                                       double tol = 1e-9);

// The minimizing state itself together with the value it achieves.
std::pair<StateVector, double> min_uncertainty_state(const QuantityVector& x, const cvector& xi);

}  // namespace povmlab
