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

#include "povmlab/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "povmlab/errors.hpp"
#include "povmlab/hermitian.hpp"

namespace povmlab {

namespace {

using RealMatrix = std::vector<std::vector<double>>;

void check_frequency_row(const std::vector<double>& row, size_t expected) {
  if (row.size() != expected)
    throw ShapeError("tomography: got " + std::to_string(row.size()) + " frequencies for " +
                     std::to_string(expected) + " outcomes");
  double sum = 0.0;
  for (double f : row) {
    if (f < -1e-9 || f > 1.0 + 1e-9)
      throw ValidationError("tomography: frequency " + std::to_string(f) + " outside [0, 1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw ValidationError("tomography: frequencies sum to " + std::to_string(sum));
}

// design * x for a row-major real design matrix.
std::vector<double> apply_design(const RealMatrix& design, const std::vector<double>& x) {
  std::vector<double> y(design.size(), 0.0);
  for (size_t r = 0; r < design.size(); ++r)
    y[r] = std::inner_product(design[r].begin(), design[r].end(), x.begin(), 0.0);
  return y;
}

std::vector<double> apply_design_t(const RealMatrix& design, const std::vector<double>& y) {
  std::vector<double> x(design.front().size(), 0.0);
  for (size_t r = 0; r < design.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c) x[c] += design[r][c] * y[r];
  return x;
}

// Normal matrix D^T D as a Hermitian operator for spectral queries.
HermitianOperator normal_matrix(const RealMatrix& design) {
  const int n = static_cast<int>(design.front().size());
  ComplexMatrix g(n, n);
  for (const auto& row : design)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) += row[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
  return HermitianOperator(g);
}

// Minimum-norm least-squares solution via the normal-matrix eigensystem.
std::vector<double> min_norm_solve(const RealMatrix& design, const EigenSystem& es,
                                   const std::vector<double>& rhs, double rank_threshold) {
  const size_t n = design.front().size();
  const std::vector<double> dtr = apply_design_t(design, rhs);
  const double lambda_max = std::max(es.eigenvalues.back(), 0.0);
  std::vector<double> x(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues[i];
    if (lambda <= rank_threshold * std::max(lambda_max, 1e-300)) continue;
    double proj = 0.0;
    for (size_t r = 0; r < n; ++r)
      proj += es.eigenvectors(static_cast<int>(r), static_cast<int>(i)).real() * dtr[r];
    proj /= lambda;
    for (size_t r = 0; r < n; ++r)
      x[r] += proj * es.eigenvectors(static_cast<int>(r), static_cast<int>(i)).real();
  }
  return x;
}

double objective_value(const RealMatrix& design, const std::vector<double>& x,
                       const std::vector<double>& rhs) {
  const std::vector<double> y = apply_design(design, x);
  double s = 0.0;
  for (size_t r = 0; r < y.size(); ++r) s += (y[r] - rhs[r]) * (y[r] - rhs[r]);
  return s;
}

// Euclidean projection of a spectrum onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

// Exact Frobenius projection onto {rho PSD, tr rho = 1}.
ComplexMatrix project_density(const ComplexMatrix& m) {
  EigenSystem es = eig_hermitian(HermitianOperator(m));
  const std::vector<double> clipped = project_simplex(es.eigenvalues);
  const int d = m.rows();
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    if (clipped[static_cast<size_t>(i)] == 0.0) continue;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        out(r, c) += clipped[static_cast<size_t>(i)] * es.eigenvectors(r, i) *
                     std::conj(es.eigenvectors(c, i));
  }
  return out;
}

}  // namespace

StateTomographyResult state_tomography(const Povm& povm, const std::vector<double>& frequencies,
                                       const TomographyOptions& options) {
  check_frequency_row(frequencies, static_cast<size_t>(povm.size()));

  const int d = povm.dim();
  const size_t n = static_cast<size_t>(d) * static_cast<size_t>(d);
  RealMatrix design;
  design.reserve(static_cast<size_t>(povm.size()));
  for (int k = 0; k < povm.size(); ++k)
    design.push_back(hermitian_coordinates(povm.element(k).matrix()));

  const HermitianOperator normal = normal_matrix(design);
  const EigenSystem es = eig_hermitian(normal);
  const double lambda_max = std::max(es.eigenvalues.back(), 1e-300);
  int rank = 0;
  for (double lambda : es.eigenvalues)
    if (lambda > options.rank_threshold * lambda_max) ++rank;

  StateTomographyResult result{DensityOperator::maximally_mixed(d), 0.0, 0, false, {}};
  result.non_unique = rank < static_cast<int>(n);

  std::vector<double> x = hermitian_coordinates(
      project_density(hermitian_from_coordinates(
          d, min_norm_solve(design, es, frequencies, options.rank_threshold))));
  const double step = 1.0 / (2.0 * lambda_max);

  double objective = objective_value(design, x, frequencies);
  result.objective_log.push_back(objective);
  int iter = 0;
  bool stationary = false;
  for (; iter < options.max_iterations; ++iter) {
    const std::vector<double> fitted = apply_design(design, x);
    std::vector<double> residual_vec(fitted.size());
    for (size_t r = 0; r < fitted.size(); ++r)
      residual_vec[r] = fitted[r] - frequencies[static_cast<size_t>(r)];
    const std::vector<double> grad = apply_design_t(design, residual_vec);

    std::vector<double> next = x;
    for (size_t c = 0; c < n; ++c) next[c] -= 2.0 * step * grad[c];
    next = hermitian_coordinates(project_density(hermitian_from_coordinates(d, next)));

    const double next_objective = objective_value(design, next, frequencies);
    result.objective_log.push_back(next_objective);
    x = std::move(next);
    if (objective - next_objective < options.objective_tolerance) {
      objective = next_objective;
      stationary = true;
      ++iter;
      break;
    }
    objective = next_objective;
  }
  if (!stationary)
    throw IterationCapError("state_tomography: no stationary point within " +
                            std::to_string(options.max_iterations) + " iterations");

  result.iterations = iter;
  result.residual = std::sqrt(std::max(objective, 0.0));
  result.state = DensityOperator(
      HermitianOperator(project_density(hermitian_from_coordinates(d, x))));
  return result;
}

DetectorTomographyResult detector_tomography(const std::vector<DensityOperator>& states,
                                             const std::vector<std::string>& labels,
                                             const std::vector<std::vector<double>>& frequencies,
                                             const TomographyOptions& options) {
  if (states.empty()) throw ValidationError("detector_tomography: no calibration states");
  if (labels.empty()) throw ValidationError("detector_tomography: no outcome labels");
  if (frequencies.size() != states.size())
    throw ShapeError("detector_tomography: " + std::to_string(frequencies.size()) +
                     " frequency rows for " + std::to_string(states.size()) + " states");
  const int d = states.front().dim();
  const size_t n = static_cast<size_t>(d) * static_cast<size_t>(d);
  const size_t m = labels.size();
  for (const DensityOperator& state : states)
    if (state.dim() != d) throw ShapeError("detector_tomography: states of mixed dimension");
  for (const auto& row : frequencies) check_frequency_row(row, m);

  RealMatrix design;
  design.reserve(states.size());
  for (const DensityOperator& state : states)
    design.push_back(hermitian_coordinates(state.matrix()));

  const HermitianOperator normal = normal_matrix(design);
  const EigenSystem es = eig_hermitian(normal);
  const double lambda_max = std::max(es.eigenvalues.back(), 1e-300);
  int rank = 0;
  for (double lambda : es.eigenvalues)
    if (lambda > options.rank_threshold * lambda_max) ++rank;
  if (rank < static_cast<int>(n))
    throw RankDeficiencyError("detector_tomography: calibration states span only " +
                                  std::to_string(rank) + " of " + std::to_string(n) +
                                  " dimensions",
                              rank);

  // Dykstra projection onto {each element PSD} ∩ {elements sum to identity}.
  const auto project_povm = [&](std::vector<ComplexMatrix> p) {
    std::vector<ComplexMatrix> correction(m, ComplexMatrix(d, d));
    for (int pass = 0; pass < 500; ++pass) {
      // affine half: distribute the completeness defect evenly
      ComplexMatrix defect(d, d);
      for (const auto& pk : p) defect += pk;
      defect -= ComplexMatrix::identity(d);
      defect *= cdouble(1.0 / static_cast<double>(m));
      for (auto& pk : p) pk -= defect;

      // cone half with Dykstra correction memory
      for (size_t k = 0; k < m; ++k) {
        const ComplexMatrix shifted = p[k] + correction[k];
        const ComplexMatrix projected = psd_project(HermitianOperator(shifted)).matrix();
        correction[k] = shifted - projected;
        p[k] = projected;
      }

      ComplexMatrix check(d, d);
      for (const auto& pk : p) check += pk;
      check -= ComplexMatrix::identity(d);
      if (check.frobenius_norm() <= 1e-12) break;
    }
    return p;
  };

  // Independent per-element least-squares start, then feasibility projection.
  std::vector<std::vector<double>> rhs(m, std::vector<double>(states.size()));
  for (size_t s = 0; s < states.size(); ++s)
    for (size_t k = 0; k < m; ++k) rhs[k][s] = frequencies[s][k];

  std::vector<ComplexMatrix> elements;
  for (size_t k = 0; k < m; ++k)
    elements.push_back(hermitian_from_coordinates(
        d, min_norm_solve(design, es, rhs[k], options.rank_threshold)));
  elements = project_povm(std::move(elements));

  const auto total_objective = [&](const std::vector<ComplexMatrix>& p) {
    double s = 0.0;
    for (size_t k = 0; k < m; ++k)
      s += objective_value(design, hermitian_coordinates(p[k]), rhs[k]);
    return s;
  };

  const double step = 1.0 / (2.0 * lambda_max);
  DetectorTomographyResult result{Povm({{labels.front(), HermitianOperator::identity(d)}}), 0.0, 0, {}};
  double objective = total_objective(elements);
  result.objective_log.push_back(objective);
  int iter = 0;
  bool stationary = false;
  for (; iter < options.max_iterations; ++iter) {
    std::vector<ComplexMatrix> next;
    next.reserve(m);
    for (size_t k = 0; k < m; ++k) {
      std::vector<double> coords = hermitian_coordinates(elements[k]);
      const std::vector<double> fitted = apply_design(design, coords);
      std::vector<double> residual_vec(fitted.size());
      for (size_t r = 0; r < fitted.size(); ++r) residual_vec[r] = fitted[r] - rhs[k][r];
      const std::vector<double> grad = apply_design_t(design, residual_vec);
      for (size_t c = 0; c < n; ++c) coords[c] -= 2.0 * step * grad[c];
      next.push_back(hermitian_from_coordinates(d, coords));
    }
    next = project_povm(std::move(next));

    const double next_objective = total_objective(next);
    result.objective_log.push_back(next_objective);
    elements = std::move(next);
    if (objective - next_objective < options.objective_tolerance) {
      objective = next_objective;
      stationary = true;
      ++iter;
      break;
    }
    objective = next_objective;
  }
  if (!stationary)
    throw IterationCapError("detector_tomography: no stationary point within " +
                            std::to_string(options.max_iterations) + " iterations");

  std::vector<std::pair<std::string, HermitianOperator>> labeled;
  for (size_t k = 0; k < m; ++k)
    labeled.emplace_back(labels[k], HermitianOperator(elements[k]));
  result.povm = Povm(std::move(labeled));
  result.iterations = iter;
  result.residual = std::sqrt(std::max(objective, 0.0));
  return result;
}

}  // namespace povmlab
