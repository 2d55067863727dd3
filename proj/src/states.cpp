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

#include "povmlab/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "povmlab/errors.hpp"

namespace povmlab {

DensityOperator::DensityOperator(const HermitianOperator& rho, double intensity,
                                 const StateTolerances& tol)
    : rho_(rho), intensity_(intensity) {
  if (!(intensity >= 0.0))
    throw ValidationError("state intensity must be nonnegative, got " + std::to_string(intensity));
  const double tr = rho_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol.trace)
    throw ValidationError("density operator trace " + std::to_string(tr) +
                          " is not 1 within tolerance");
  const double min_eig = min_eigenvalue(rho_);
  if (min_eig < -tol.psd_floor)
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(min_eig));
}

DensityOperator DensityOperator::from_unnormalized(const HermitianOperator& m,
                                                   const StateTolerances& tol) {
  const double tr = m.matrix().trace().real();
  if (!(tr > 0.0)) throw ValidationError("unnormalized state must have positive trace");
  ComplexMatrix scaled = m.matrix();
  scaled *= cdouble(1.0 / tr);
  return DensityOperator(HermitianOperator(scaled), tr, tol);
}

DensityOperator DensityOperator::maximally_mixed(int d) {
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= cdouble(1.0 / d);
  return DensityOperator(HermitianOperator(m));
}

ComplexMatrix DensityOperator::unnormalized() const {
  ComplexMatrix m = rho_.matrix();
  m *= cdouble(intensity_);
  return m;
}

StateVector::StateVector(cvector psi, double norm_tol) : psi_(std::move(psi)) {
  if (psi_.empty()) throw ShapeError("state vector must be nonempty");
  const double n = norm(psi_);
  if (std::abs(n - 1.0) > norm_tol)
    throw ValidationError("state vector norm " + std::to_string(n) + " is not 1 within tolerance");
}

StateVector StateVector::normalized(const cvector& psi) {
  const double n = norm(psi);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  cvector out = psi;
  for (cdouble& z : out) z *= (1.0 / n);
  return StateVector(std::move(out));
}

DensityOperator pure_state(const StateVector& psi, double intensity) {
  return DensityOperator(HermitianOperator(ComplexMatrix::outer(psi.psi(), psi.psi())),
                         intensity);
}

QuantityVector::QuantityVector(std::vector<ComplexMatrix> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ShapeError("quantity vector must have at least one component");
  dim_ = components_.front().rows();
  for (const ComplexMatrix& c : components_)
    if (!c.is_square() || c.rows() != dim_)
      throw ShapeError("quantity components must be square with a common dimension");
}

QuantityVector::QuantityVector(std::initializer_list<ComplexMatrix> components)
    : QuantityVector(std::vector<ComplexMatrix>(components)) {}

QuantityVector QuantityVector::scalar(const ComplexMatrix& x) {
  return QuantityVector(std::vector<ComplexMatrix>{x});
}

QuantityVector QuantityVector::scalar(const HermitianOperator& x) {
  return QuantityVector(std::vector<ComplexMatrix>{x.matrix()});
}

bool QuantityVector::all_hermitian(double tol) const {
  for (const ComplexMatrix& c : components_)
    if (hermiticity_defect(c) > tol * std::max(1.0, c.frobenius_norm())) return false;
  return true;
}

cvector q_expectation(const DensityOperator& state, const QuantityVector& x) {
  if (x.dim() != state.dim()) throw ShapeError("quantity and state dimensions differ");
  cvector out;
  out.reserve(static_cast<size_t>(x.size()));
  for (const ComplexMatrix& c : x.components()) out.push_back(trace_product(state.matrix(), c));
  return out;
}

cdouble q_expectation(const DensityOperator& state, const ComplexMatrix& x) {
  if (x.rows() != state.dim() || !x.is_square())
    throw ShapeError("quantity and state dimensions differ");
  return trace_product(state.matrix(), x);
}

namespace {

// Allowed negative rounding slop in a variance radicand.
constexpr double kVarianceFloor = -1e-10;

double centered_second_moment(const DensityOperator& state, const QuantityVector& x,
                              const cvector& mean) {
  double total = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    ComplexMatrix m = x.component(j);
    for (int i = 0; i < m.rows(); ++i) m(i, i) -= mean[static_cast<size_t>(j)];
    // <M^dagger M> = tr rho M^dagger M, real and >= 0 for PSD rho.
    total += trace_product(state.matrix(), m.adjoint() * m).real();
  }
  return total;
}

}  // namespace

double q_uncertainty(const DensityOperator& state, const QuantityVector& x) {
  const cvector mean = q_expectation(state, x);
  double radicand = centered_second_moment(state, x, mean);
  if (radicand < kVarianceFloor)
    throw NumericError("variance radicand " + std::to_string(radicand) +
                       " is negative beyond rounding");
  if (radicand < 0.0) radicand = 0.0;
  return std::sqrt(radicand);
}

double q_uncertainty(const DensityOperator& state, const ComplexMatrix& x) {
  return q_uncertainty(state, QuantityVector::scalar(x));
}

ComplexMatrix q_covariance(const DensityOperator& state, const QuantityVector& x) {
  const cvector mean = q_expectation(state, x);
  std::vector<ComplexMatrix> centered;
  centered.reserve(static_cast<size_t>(x.size()));
  for (int j = 0; j < x.size(); ++j) {
    ComplexMatrix m = x.component(j);
    for (int i = 0; i < m.rows(); ++i) m(i, i) -= mean[static_cast<size_t>(j)];
    centered.push_back(std::move(m));
  }
  const int m_count = x.size();
  ComplexMatrix cov(m_count, m_count);
  for (int j = 0; j < m_count; ++j)
    for (int k = 0; k < m_count; ++k)
      cov(j, k) = trace_product(state.matrix(),
                                centered[static_cast<size_t>(j)] *
                                    centered[static_cast<size_t>(k)].adjoint());
  return cov;
}

RobertsonCheck robertson_check(const DensityOperator& state, const HermitianOperator& a,
                               const HermitianOperator& b) {
  const double sa = q_uncertainty(state, QuantityVector::scalar(a));
  const double sb = q_uncertainty(state, QuantityVector::scalar(b));
  const cdouble comm_mean = trace_product(state.matrix(), commutator(a.matrix(), b.matrix()));
  return RobertsonCheck{sa * sb, 0.5 * std::abs(comm_mean)};
}

}  // namespace povmlab
