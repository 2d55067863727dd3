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

#include "povmlab/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "povmlab/errors.hpp"

namespace povmlab {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be nonnegative");
  entries_.assign(static_cast<size_t>(rows) * cols, cdouble(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be nonnegative");
  if (entries_.size() != static_cast<size_t>(rows) * cols)
    throw ShapeError("entry count does not match matrix shape");
}

ComplexMatrix ComplexMatrix::identity(int d) {
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::column(const cvector& psi) {
  ComplexMatrix m(static_cast<int>(psi.size()), 1);
  for (size_t i = 0; i < psi.size(); ++i) m(static_cast<int>(i), 0) = psi[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const cvector& psi, const cvector& phi) {
  ComplexMatrix m(static_cast<int>(psi.size()), static_cast<int>(phi.size()));
  for (size_t i = 0; i < psi.size(); ++i)
    for (size_t j = 0; j < phi.size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = psi[i] * std::conj(phi[j]);
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const cvector& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

cdouble ComplexMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace requires a square matrix");
  cdouble t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::off_diagonal_norm() const {
  double s = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (i != j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (!same_shape(o)) throw ShapeError("matrix addition shape mismatch");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (!same_shape(o)) throw ShapeError("matrix subtraction shape mismatch");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
  for (cdouble& z : entries_) z *= s;
  return *this;
}

cvector ComplexMatrix::apply(const cvector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ShapeError("matrix-vector shape mismatch");
  cvector out(static_cast<size_t>(rows_), cdouble(0.0));
  for (int i = 0; i < rows_; ++i) {
    cdouble acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator-(const ComplexMatrix& a) {
  ComplexMatrix m = a;
  m *= cdouble(-1.0);
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  ComplexMatrix m(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cdouble aik = a(i, k);
      if (aik == cdouble(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cdouble s) { return a *= s; }

cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw ShapeError("trace_product shape mismatch");
  cdouble t = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

cdouble frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw ShapeError("frobenius_inner shape mismatch");
  cdouble t = 0.0;
  for (size_t i = 0; i < a.entries().size(); ++i)
    t += std::conj(a.entries()[i]) * b.entries()[i];
  return t;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("hermiticity defect requires a square matrix");
  return frobenius_distance(m, m.adjoint());
}

double norm(const cvector& v) {
  double s = 0.0;
  for (const cdouble& z : v) s += std::norm(z);
  return std::sqrt(s);
}

cdouble inner(const cvector& a, const cvector& b) {
  if (a.size() != b.size()) throw ShapeError("inner product length mismatch");
  cdouble t = 0.0;
  for (size_t i = 0; i < a.size(); ++i) t += std::conj(a[i]) * b[i];
  return t;
}

}  // namespace povmlab
