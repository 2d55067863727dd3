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

#include <complex>
#include <vector>

namespace povmlab {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

// Dense complex matrix, row-major. Small and dumb on purpose: everything in
// this library lives at d <= 64.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<cdouble> entries);

  static ComplexMatrix identity(int d);
  static ComplexMatrix zero(int rows, int cols);
  // Column vector psi as a d x 1 matrix.
  static ComplexMatrix column(const cvector& psi);
  // psi phi^dagger.
  static ComplexMatrix outer(const cvector& psi, const cvector& phi);
  static ComplexMatrix diagonal(const std::vector<double>& d);
  static ComplexMatrix diagonal(const cvector& d);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool same_shape(const ComplexMatrix& o) const noexcept {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  cdouble& operator()(int i, int j) { return entries_[idx(i, j)]; }
  const cdouble& operator()(int i, int j) const { return entries_[idx(i, j)]; }

  const std::vector<cdouble>& entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cdouble trace() const;
  double frobenius_norm() const;
  // Frobenius norm of the strictly off-diagonal part.
  double off_diagonal_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cdouble s);

  // Matrix-vector product (this must be rows x n, v of length n).
  cvector apply(const cvector& v) const;

 private:
  int idx(int i, int j) const { return i * cols_ + j; }

  int rows_, cols_;
  std::vector<cdouble> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cdouble s);

// tr(A B): contraction without forming the product.
cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
// tr(A^dagger B): the Frobenius inner product <A, B>.
cdouble frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// ||M - M^dagger||_F.
double hermiticity_defect(const ComplexMatrix& m);

double norm(const cvector& v);
cdouble inner(const cvector& a, const cvector& b);  // a^dagger b

}  // namespace povmlab
