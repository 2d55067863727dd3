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

#include <vector>

#include "povmlab/complex_matrix.hpp"

namespace povmlab {

// Relative hermiticity tolerance: ||M - M^dagger||_F <= tol * max(1, ||M||_F).
inline constexpr double kHermiticityTol = 1e-12;

// A square matrix certified Hermitian. Construction symmetrizes (M+M^dagger)/2
// when the defect is within tolerance and refuses anything worse.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator identity(int d);
  static HermitianOperator zero(int d);

  int dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// Pauli matrix sigma_k, k in {0,1,2,3}; sigma_0 is the 2x2 identity.
const ComplexMatrix& pauli(int k);

// Eigenvalues ascending; eigenvectors_ columns orthonormal, column i paired
// with eigenvalues[i]. reconstruct() rebuilds V diag(lambda) V^dagger.
struct EigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
  double min_eigenvalue() const;
  cvector eigenvector(int i) const;
};

// Cyclic complex Jacobi diagonalization. Adequate and dependency-free for the
// dimensions this library works at (d <= 64).
EigenSystem eig_hermitian(const HermitianOperator& h);

// Nearest positive semidefinite operator in Frobenius norm (negative
// eigenvalues clipped to zero).
HermitianOperator psd_project(const HermitianOperator& h);

double min_eigenvalue(const HermitianOperator& h);

// AB - BA. Anti-Hermitian for Hermitian inputs, so returned as a plain matrix.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormal basis of the real vector space of Hermitian d x d matrices and
// coordinates with respect to it. Round-trips exactly up to rounding.
std::vector<double> hermitian_coordinates(const ComplexMatrix& h);
ComplexMatrix hermitian_from_coordinates(int d, const std::vector<double>& x);

}  // namespace povmlab
