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

#include "povmlab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povmlab/errors.hpp"

namespace povmlab {

namespace {

constexpr double kJacobiOffTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("Hermitian operator must be square");
  const double defect = hermiticity_defect(m);
  const double tol = kHermiticityTol * std::max(1.0, m.frobenius_norm());
  if (defect > tol)
    throw HermiticityError("matrix is not Hermitian: defect " + std::to_string(defect) +
                           " exceeds tolerance " + std::to_string(tol));
  // Exactly Hermitian matrices pass through untouched; near-Hermitian input
  // is replaced by (M + M^dagger)/2.
  if (defect == 0.0) {
    matrix_ = m;
  } else {
    ComplexMatrix sym = m + m.adjoint();
    sym *= cdouble(0.5);
    matrix_ = sym;
  }
  // Keep the diagonal exactly real; symmetrization leaves rounding residue.
  for (int i = 0; i < matrix_.rows(); ++i) matrix_(i, i) = cdouble(matrix_(i, i).real(), 0.0);
}

HermitianOperator HermitianOperator::identity(int d) {
  return HermitianOperator(ComplexMatrix::identity(d));
}

HermitianOperator HermitianOperator::zero(int d) {
  return HermitianOperator(ComplexMatrix::zero(d, d));
}

const ComplexMatrix& pauli(int k) {
  static const ComplexMatrix s0 = ComplexMatrix::identity(2);
  static const ComplexMatrix s1(2, 2, {0.0, 1.0, 1.0, 0.0});
  static const ComplexMatrix s2(2, 2, {0.0, cdouble(0.0, -1.0), cdouble(0.0, 1.0), 0.0});
  static const ComplexMatrix s3(2, 2, {1.0, 0.0, 0.0, -1.0});
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw ShapeError("pauli index must be in 0..3");
  }
}

ComplexMatrix EigenSystem::reconstruct() const {
  ComplexMatrix lam = ComplexMatrix::diagonal(eigenvalues);
  return eigenvectors * lam * eigenvectors.adjoint();
}

double EigenSystem::min_eigenvalue() const {
  return *std::min_element(eigenvalues.begin(), eigenvalues.end());
}

cvector EigenSystem::eigenvector(int i) const {
  cvector v(static_cast<size_t>(eigenvectors.rows()));
  for (int r = 0; r < eigenvectors.rows(); ++r) v[r] = eigenvectors(r, i);
  return v;
}

EigenSystem eig_hermitian(const HermitianOperator& h) {
  const int d = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(d);
  if (d == 0) return EigenSystem{{}, v};

  const double norm_f = a.frobenius_norm();
  const double off_tol = kJacobiOffTol * std::max(1.0, norm_f);
  // Pivots below this leave total leftover mass well under off_tol.
  const double skip_tol = off_tol / (10.0 * d);

  bool converged = a.off_diagonal_norm() <= off_tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const cdouble z = a(p, q);
        const double r = std::abs(z);
        if (r <= skip_tol) continue;

        // Phase factor turning the pivot real, then a real Jacobi rotation.
        const cdouble phase = z / r;  // e^{i phi}
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G restricted to the (p,q) plane:
        //   [ c            s           ]
        //   [ -s e^{-iphi} c e^{-iphi} ]
        const cdouble g_pp = c;
        const cdouble g_pq = s;
        const cdouble g_qp = -s * std::conj(phase);
        const cdouble g_qq = c * std::conj(phase);

        // A <- G^dagger A G: columns p,q from the right, rows p,q from the left.
        for (int i = 0; i < d; ++i) {
          const cdouble aip = a(i, p);
          const cdouble aiq = a(i, q);
          a(i, p) = aip * g_pp + aiq * g_qp;
          a(i, q) = aip * g_pq + aiq * g_qq;
        }
        for (int j = 0; j < d; ++j) {
          const cdouble apj = a(p, j);
          const cdouble aqj = a(q, j);
          a(p, j) = std::conj(g_pp) * apj + std::conj(g_qp) * aqj;
          a(q, j) = std::conj(g_pq) * apj + std::conj(g_qq) * aqj;
        }
        // The pivot is annihilated by construction; pin it to keep the
        // off-diagonal norm honest against rounding residue.
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cdouble(a(p, p).real(), 0.0);
        a(q, q) = cdouble(a(q, q).real(), 0.0);

        for (int i = 0; i < d; ++i) {
          const cdouble vip = v(i, p);
          const cdouble viq = v(i, q);
          v(i, p) = vip * g_pp + viq * g_qp;
          v(i, q) = vip * g_pq + viq * g_qq;
        }
      }
    }
    converged = a.off_diagonal_norm() <= off_tol;
  }
  if (!converged)
    throw NumericError("jacobi eigensolver did not reach tolerance within sweep cap");

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(static_cast<size_t>(d));
  es.eigenvectors = ComplexMatrix(d, d);
  for (int i = 0; i < d; ++i) {
    es.eigenvalues[static_cast<size_t>(i)] = a(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
    for (int r = 0; r < d; ++r) es.eigenvectors(r, i) = v(r, order[static_cast<size_t>(i)]);
  }
  return es;
}

HermitianOperator psd_project(const HermitianOperator& h) {
  EigenSystem es = eig_hermitian(h);
  bool clipped = false;
  for (double& lam : es.eigenvalues) {
    if (lam < 0.0) {
      lam = 0.0;
      clipped = true;
    }
  }
  if (!clipped) return h;
  return HermitianOperator(es.reconstruct());
}

double min_eigenvalue(const HermitianOperator& h) {
  return eig_hermitian(h).min_eigenvalue();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !a.same_shape(b)) throw ShapeError("commutator shape mismatch");
  return a * b - b * a;
}

std::vector<double> hermitian_coordinates(const ComplexMatrix& h) {
  if (!h.is_square()) throw ShapeError("hermitian coordinates require a square matrix");
  const int d = h.rows();
  const double rt2 = std::sqrt(2.0);
  std::vector<double> x;
  x.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) x.push_back(h(i, i).real());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      x.push_back(rt2 * h(i, j).real());
      x.push_back(rt2 * h(i, j).imag());
    }
  return x;
}

ComplexMatrix hermitian_from_coordinates(int d, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != d * d)
    throw ShapeError("hermitian coordinate vector must have length d^2");
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix h(d, d);
  size_t idx = 0;
  for (int i = 0; i < d; ++i) h(i, i) = x[idx++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = x[idx++] * inv_rt2;
      const double im = x[idx++] * inv_rt2;
      h(i, j) = cdouble(re, im);
      h(j, i) = cdouble(re, -im);
    }
  return h;
}

}  // namespace povmlab
