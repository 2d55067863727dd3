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

#include "povmlab/uncertainty.hpp"

#include <cmath>
#include <string>

#include "povmlab/errors.hpp"

namespace povmlab {

namespace {

double squared_distance(const cvector& a, const cvector& b) {
  double s = 0.0;
  for (size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return s;
}

}  // namespace

HolevoGap holevo_gap(const Detector& detector, const DensityOperator& state) {
  const std::vector<double> p = response_probabilities(detector, state);
  const cvector mean = statistical_expectation(detector, state);
  HolevoGap result;
  for (int k = 0; k < detector.size(); ++k)
    result.statistical +=
        p[static_cast<size_t>(k)] * squared_distance(detector.scale().value(k), mean);
  const double sigma = q_uncertainty(state, detector.quantity());
  result.theoretical = sigma * sigma;
  return result;
}

HermitianOperator excess_noise_operator(const Detector& detector, const ComplexMatrix& g) {
  const int m = detector.scale().m();
  if (g.rows() != m || g.cols() != m)
    throw ShapeError("excess_noise_operator: weight is " + std::to_string(g.rows()) + "x" +
                     std::to_string(g.cols()) + " for value dimension " + std::to_string(m));
  HermitianOperator gh(g);  // validates Hermiticity
  if (min_eigenvalue(gh) < -1e-10)
    throw ValidationError("excess_noise_operator: weight must be positive semidefinite");

  const int d = detector.dim();
  ComplexMatrix weighted(d, d);
  for (int k = 0; k < detector.size(); ++k) {
    const cvector& a = detector.scale().value(k);
    cdouble w = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        w += std::conj(a[static_cast<size_t>(i)]) * gh.matrix()(i, j) * a[static_cast<size_t>(j)];
    weighted += w * detector.povm().element(k).matrix();
  }

  const QuantityVector quantity = detector.quantity();
  ComplexMatrix quadratic(d, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      quadratic += gh.matrix()(i, j) * (quantity.component(i).adjoint() * quantity.component(j));

  return HermitianOperator(weighted - quadratic);
}

UncertaintyReport error_report(const Detector& detector, const DensityOperator& state,
                               const QuantityVector& x) {
  if (x.dim() != detector.dim())
    throw ShapeError("error_report: quantity dim " + std::to_string(x.dim()) +
                     " vs detector dim " + std::to_string(detector.dim()));
  if (x.size() != detector.scale().m())
    throw ShapeError("error_report: quantity has " + std::to_string(x.size()) +
                     " components for value dimension " + std::to_string(detector.scale().m()));

  const std::vector<double> p = response_probabilities(detector, state);
  const cvector x_mean = q_expectation(state, x);
  const cvector a_mean = statistical_expectation(detector, state);

  UncertaintyReport report;
  for (int k = 0; k < detector.size(); ++k)
    report.e_term +=
        p[static_cast<size_t>(k)] * squared_distance(detector.scale().value(k), x_mean);
  report.sigma_x = q_uncertainty(state, x);
  report.sigma_a = q_uncertainty(state, detector.quantity());
  report.bias = std::sqrt(squared_distance(a_mean, x_mean));
  report.rmse = std::sqrt(report.e_term);
  const double correction =
      std::max(0.0, report.sigma_x * report.sigma_x - report.sigma_a * report.sigma_a);
  report.delta_x = std::sqrt(report.e_term + correction);
  return report;
}

double tuning_objective(const Povm& povm, const Scale& scale, const QuantityVector& x,
                        const std::vector<DensityOperator>& calibration_states, double ridge) {
  if (calibration_states.empty())
    throw ValidationError("tuning_objective: need at least one calibration state");
  double objective = 0.0;
  for (const DensityOperator& state : calibration_states) {
    const std::vector<double> p = response_probabilities(povm, state);
    const cvector x_mean = q_expectation(state, x);
    for (int k = 0; k < povm.size(); ++k)
      objective +=
          p[static_cast<size_t>(k)] * squared_distance(scale.value(povm.label(k)), x_mean);
  }
  objective /= static_cast<double>(calibration_states.size());
  if (ridge > 0.0)
    for (int k = 0; k < scale.size(); ++k)
      for (const cdouble& v : scale.value(k)) objective += ridge * std::norm(v);
  return objective;
}

Scale tune_scale(const Povm& povm, const QuantityVector& x,
                 const std::vector<DensityOperator>& calibration_states, double ridge) {
  if (calibration_states.empty())
    throw ValidationError("tune_scale: need at least one calibration state");
  if (ridge < 0.0) throw ValidationError("tune_scale: ridge must be nonnegative");

  const size_t m = static_cast<size_t>(x.size());
  const size_t outcomes = static_cast<size_t>(povm.size());
  const double n_states = static_cast<double>(calibration_states.size());

  // Objective separates per outcome: sum_s p_k^s |a_k - xbar^s|^2 / S + ridge |a_k|^2
  // minimized by a weighted average of the calibration means.
  std::vector<double> weight(outcomes, 0.0);
  std::vector<cvector> moment(outcomes, cvector(m, 0.0));
  for (const DensityOperator& state : calibration_states) {
    const std::vector<double> p = response_probabilities(povm, state);
    const cvector x_mean = q_expectation(state, x);
    for (size_t k = 0; k < outcomes; ++k) {
      weight[k] += p[k] / n_states;
      for (size_t j = 0; j < m; ++j) moment[k][j] += (p[k] / n_states) * x_mean[j];
    }
  }

  // The normal equations are diagonal; rank = outcomes with nonzero weight.
  int determined = 0;
  for (size_t k = 0; k < outcomes; ++k)
    if (weight[k] + ridge > 1e-14) ++determined;
  if (determined < static_cast<int>(outcomes)) {
    for (size_t k = 0; k < outcomes; ++k) {
      if (weight[k] + ridge <= 1e-14)
        throw RankDeficiencyError("tune_scale: outcome '" + povm.label(static_cast<int>(k)) +
                                      "' never responds over the calibration states",
                                  determined);
    }
  }

  std::vector<std::pair<std::string, cvector>> values;
  for (size_t k = 0; k < outcomes; ++k) {
    cvector a(m);
    for (size_t j = 0; j < m; ++j) a[j] = moment[k][j] / (weight[k] + ridge);
    values.emplace_back(povm.label(static_cast<int>(k)), std::move(a));
  }
  return Scale(std::move(values));
}

}  // namespace povmlab
