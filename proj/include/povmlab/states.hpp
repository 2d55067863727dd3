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
#include <vector>

#include "povmlab/hermitian.hpp"

namespace povmlab {

struct StateTolerances {
  double trace = 1e-10;     // |tr rho - 1| allowed
  double psd_floor = 1e-10; // eigenvalues allowed down to -psd_floor
};

// Normalized density operator plus a separate beam intensity. The operator
// convexity data (PSD, trace 1) is validated at construction; attenuation
// lives entirely in the intensity scalar.
class DensityOperator {
 public:
  explicit DensityOperator(const HermitianOperator& rho, double intensity = 1.0,
                           const StateTolerances& tol = {});

  // Normalizes trace to 1 and keeps the trace as intensity.
  static DensityOperator from_unnormalized(const HermitianOperator& m,
                                           const StateTolerances& tol = {});
  static DensityOperator maximally_mixed(int d);

  int dim() const noexcept { return rho_.dim(); }
  const HermitianOperator& rho() const noexcept { return rho_; }
  const ComplexMatrix& matrix() const noexcept { return rho_.matrix(); }
  double intensity() const noexcept { return intensity_; }
  // intensity * rho.
  ComplexMatrix unnormalized() const;

 private:
  HermitianOperator rho_;
  double intensity_;
};

// Unit vector in C^d.
class StateVector {
 public:
  explicit StateVector(cvector psi, double norm_tol = 1e-10);
  // Normalizes whatever it is given (zero vector rejected).
  static StateVector normalized(const cvector& psi);

  int dim() const noexcept { return static_cast<int>(psi_.size()); }
  const cvector& psi() const noexcept { return psi_; }

 private:
  cvector psi_;
};

// rho = psi psi^dagger with the given intensity.
DensityOperator pure_state(const StateVector& psi, double intensity = 1.0);

// Vector of operator components on a common space. Components are general
// complex square matrices: complex detector scales produce non-Hermitian
// quantities, and trace evaluation is well-defined for them.
class QuantityVector {
 public:
  explicit QuantityVector(std::vector<ComplexMatrix> components);
  QuantityVector(std::initializer_list<ComplexMatrix> components);
  static QuantityVector scalar(const ComplexMatrix& x);
  static QuantityVector scalar(const HermitianOperator& x);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(components_.size()); }
  const ComplexMatrix& component(int j) const { return components_.at(static_cast<size_t>(j)); }
  const std::vector<ComplexMatrix>& components() const noexcept { return components_; }

  bool all_hermitian(double tol = kHermiticityTol) const;

 private:
  int dim_;
  std::vector<ComplexMatrix> components_;
};

// <X_j> = tr rho X_j, one entry per component. Real within rounding when the
// component is Hermitian.
cvector q_expectation(const DensityOperator& state, const QuantityVector& x);
cdouble q_expectation(const DensityOperator& state, const ComplexMatrix& x);

// sigma_X = sqrt(<(X - Xbar)^dagger (X - Xbar)>), computed with centered
// moments (the raw-moment form loses digits to cancellation).
double q_uncertainty(const DensityOperator& state, const QuantityVector& x);
double q_uncertainty(const DensityOperator& state, const ComplexMatrix& x);

// C_jk = <(X_j - Xbar_j)(X_k - Xbar_k)^dagger>. Hermitian PSD m x m matrix;
// its trace is sigma_X^2.
ComplexMatrix q_covariance(const DensityOperator& state, const QuantityVector& x);

struct RobertsonCheck {
  double lhs;  // sigma_A sigma_B
  double rhs;  // |<[A,B]>| / 2
  bool holds(double slack = 1e-12) const { return lhs >= rhs - slack; }
};

RobertsonCheck robertson_check(const DensityOperator& state, const HermitianOperator& a,
                               const HermitianOperator& b);

}  // namespace povmlab
