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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "povmlab/detector.hpp"
#include "povmlab/errors.hpp"
#include "povmlab/tomography.hpp"
#include "test_support.hpp"

using namespace povmlab;

namespace {

Povm six_outcome_povm() {
  std::vector<std::pair<std::string, HermitianOperator>> elements;
  const char* names[3] = {"x", "y", "z"};
  for (int k = 1; k <= 3; ++k) {
    ComplexMatrix p = (pauli(0) + pauli(k)) * cdouble(1.0 / 6.0);
    ComplexMatrix m = (pauli(0) - pauli(k)) * cdouble(1.0 / 6.0);
    elements.emplace_back(std::string(names[k - 1]) + "+", HermitianOperator(p));
    elements.emplace_back(std::string(names[k - 1]) + "-", HermitianOperator(m));
  }
  return Povm(std::move(elements));
}

// Four pure states spanning the qubit Hermitian space: up, down, +x, +y.
std::vector<DensityOperator> spanning_qubit_states() {
  const double r = 1.0 / std::sqrt(2.0);
  return {pure_state(StateVector(cvector{1.0, 0.0})),
          pure_state(StateVector(cvector{0.0, 1.0})),
          pure_state(StateVector(cvector{r, r})),
          pure_state(StateVector(cvector{r, cdouble(0.0, 1.0) * r}))};
}

std::vector<std::vector<double>> exact_frequency_matrix(
    const std::vector<DensityOperator>& states, const Povm& povm) {
  std::vector<std::vector<double>> rows;
  rows.reserve(states.size());
  for (const DensityOperator& s : states) rows.push_back(response_probabilities(povm, s));
  return rows;
}

void check_monotone(const std::vector<double>& log) {
  for (size_t i = 1; i < log.size(); ++i)
    CHECK(log[i] <= log[i - 1] + 1e-12 * std::max(1.0, log[i - 1]));
}

}  // namespace

TEST_CASE("state tomography recovers a qubit from exact six-outcome probabilities") {
  Povm povm = six_outcome_povm();
  ComplexMatrix rho_true =
      (pauli(0) + cdouble(0.3) * pauli(1) + cdouble(0.4) * pauli(3)) * cdouble(0.5);
  DensityOperator truth{HermitianOperator(rho_true)};
  std::vector<double> p = response_probabilities(povm, truth);

  StateTomographyResult r = state_tomography(povm, p);
  CHECK(frobenius_distance(r.state.matrix(), rho_true) <= 1e-7);
  CHECK(r.residual <= 1e-7);
  CHECK_FALSE(r.non_unique);
  check_monotone(r.objective_log);
}

TEST_CASE("state tomography maps uniform six-outcome frequencies to the mixed state") {
  Povm povm = six_outcome_povm();
  std::vector<double> uniform(6, 1.0 / 6.0);
  StateTomographyResult r = state_tomography(povm, uniform);
  CHECK(frobenius_distance(r.state.matrix(), ComplexMatrix::identity(2) * cdouble(0.5)) <= 1e-7);
}

TEST_CASE("state tomography round-trips random states across dimensions") {
  SplitMix64 rng(163);
  for (int d = 2; d <= 4; ++d) {
    auto elements = testing::random_povm_elements(rng, d, d * d + 2);
    std::vector<std::pair<std::string, HermitianOperator>> labeled;
    for (size_t k = 0; k < elements.size(); ++k)
      labeled.emplace_back("e" + std::to_string(k), HermitianOperator(elements[k]));
    Povm povm(std::move(labeled));
    REQUIRE(informational_completeness(povm).complete);

    DensityOperator truth(HermitianOperator(testing::random_density(rng, d)));
    StateTomographyResult r = state_tomography(povm, response_probabilities(povm, truth));
    CHECK(frobenius_distance(r.state.matrix(), truth.matrix()) <= 1e-7);
    check_monotone(r.objective_log);
  }
}

TEST_CASE("state tomography from sampled frequencies lands near the truth") {
  Povm povm = six_outcome_povm();
  std::vector<std::pair<std::string, cvector>> values;
  for (int k = 0; k < 6; ++k) values.emplace_back(povm.label(k), cvector{cdouble(k)});
  Detector det(povm, Scale(std::move(values)));

  SplitMix64 rng(167);
  int hits = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    DensityOperator truth(HermitianOperator(testing::random_density(rng, 2)));
    SampleRecord rec = sample(det, truth, 1000000, rng.next_u64());
    std::vector<double> freq;
    for (const auto& [label, count] : rec.counts)
      freq.push_back(static_cast<double>(count) / static_cast<double>(rec.total));
    StateTomographyResult r = state_tomography(povm, freq);
    if (frobenius_distance(r.state.matrix(), truth.matrix()) <= 5e-3) ++hits;
  }
  CHECK(hits >= 19);
}

TEST_CASE("state tomography flags a non-IC design instead of failing") {
  ComplexMatrix up = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
  ComplexMatrix down = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  Povm povm({{"up", HermitianOperator(up)}, {"down", HermitianOperator(down)}});
  StateTomographyResult r = state_tomography(povm, {0.7, 0.3});
  CHECK(r.non_unique);
  // The fit still reproduces the observed diagonal.
  CHECK(r.state.matrix()(0, 0).real() == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(r.residual <= 1e-7);
}

TEST_CASE("state tomography validates its frequency vector") {
  Povm povm = six_outcome_povm();
  CHECK_THROWS_AS(state_tomography(povm, {0.5, 0.5}), ShapeError);
  CHECK_THROWS_AS(state_tomography(povm, {1.2, -0.2, 0.0, 0.0, 0.5, 0.5}), ValidationError);
  std::vector<double> short_sum(6, 0.1);
  CHECK_THROWS_AS(state_tomography(povm, short_sum), ValidationError);
}

TEST_CASE("detector tomography recovers an unsharp qubit pair exactly") {
  ComplexMatrix plus = (pauli(0) + cdouble(0.8) * pauli(3)) * cdouble(0.5);
  ComplexMatrix minus = (pauli(0) - cdouble(0.8) * pauli(3)) * cdouble(0.5);
  Povm truth({{"plus", HermitianOperator(plus)}, {"minus", HermitianOperator(minus)}});

  std::vector<DensityOperator> states = spanning_qubit_states();
  DetectorTomographyResult r =
      detector_tomography(states, truth.labels(), exact_frequency_matrix(states, truth));

  REQUIRE(r.povm.size() == 2);
  CHECK(frobenius_distance(r.povm.element(r.povm.index_of("plus")).matrix(), plus) <= 1e-6);
  CHECK(frobenius_distance(r.povm.element(r.povm.index_of("minus")).matrix(), minus) <= 1e-6);
  check_monotone(r.objective_log);

  // forward consistency: the recovered POVM reproduces the data
  for (const DensityOperator& s : states) {
    std::vector<double> fitted = response_probabilities(r.povm, s);
    std::vector<double> given = response_probabilities(truth, s);
    for (size_t k = 0; k < fitted.size(); ++k)
      CHECK(std::abs(fitted[k] - given[k]) <= std::max(r.residual, 1e-8));
  }
}

TEST_CASE("detector tomography of the trivial detector returns the identity") {
  std::vector<DensityOperator> states = spanning_qubit_states();
  std::vector<std::vector<double>> ones(states.size(), std::vector<double>{1.0});
  DetectorTomographyResult r = detector_tomography(states, {"all"}, ones);
  CHECK(frobenius_distance(r.povm.element(0).matrix(), ComplexMatrix::identity(2)) <= 1e-8);
}

TEST_CASE("detector tomography keeps projective structure detectable") {
  ProjectiveDecomposition pd = projective_from_operator(HermitianOperator(pauli(1)));
  std::vector<DensityOperator> states = spanning_qubit_states();
  DetectorTomographyResult r =
      detector_tomography(states, pd.povm.labels(), exact_frequency_matrix(states, pd.povm));
  CHECK(is_projective(r.povm, 1e-5));
  for (int k = 0; k < 2; ++k)
    CHECK(frobenius_distance(r.povm.element(k).matrix(), pd.povm.element(k).matrix()) <= 1e-6);
}

TEST_CASE("detector tomography round-trips a random qutrit POVM") {
  SplitMix64 rng(173);
  auto elements = testing::random_povm_elements(rng, 3, 4);
  std::vector<std::pair<std::string, HermitianOperator>> labeled;
  for (size_t k = 0; k < elements.size(); ++k)
    labeled.emplace_back("e" + std::to_string(k), HermitianOperator(elements[k]));
  Povm truth(std::move(labeled));

  std::vector<DensityOperator> states;
  for (int s = 0; s < 12; ++s)
    states.push_back(DensityOperator(HermitianOperator(testing::random_density(rng, 3))));

  DetectorTomographyResult r =
      detector_tomography(states, truth.labels(), exact_frequency_matrix(states, truth));
  for (int k = 0; k < truth.size(); ++k)
    CHECK(frobenius_distance(r.povm.element(k).matrix(), truth.element(k).matrix()) <= 1e-6);
  check_monotone(r.objective_log);
}

TEST_CASE("detector tomography is invariant under permuting calibration states") {
  ComplexMatrix plus = (pauli(0) + cdouble(0.8) * pauli(3)) * cdouble(0.5);
  ComplexMatrix minus = (pauli(0) - cdouble(0.8) * pauli(3)) * cdouble(0.5);
  Povm truth({{"plus", HermitianOperator(plus)}, {"minus", HermitianOperator(minus)}});

  std::vector<DensityOperator> states = spanning_qubit_states();
  std::vector<std::vector<double>> freq = exact_frequency_matrix(states, truth);

  std::vector<DensityOperator> reversed(states.rbegin(), states.rend());
  std::vector<std::vector<double>> freq_reversed(freq.rbegin(), freq.rend());

  DetectorTomographyResult a = detector_tomography(states, truth.labels(), freq);
  DetectorTomographyResult b = detector_tomography(reversed, truth.labels(), freq_reversed);
  for (int k = 0; k < 2; ++k)
    CHECK(frobenius_distance(a.povm.element(k).matrix(), b.povm.element(k).matrix()) <= 1e-8);
}

TEST_CASE("detector tomography reports the achieved rank of deficient designs") {
  // Diagonal states only: they span 2 of the 4 Hermitian dimensions.
  std::vector<DensityOperator> states = {
      pure_state(StateVector(cvector{1.0, 0.0})), pure_state(StateVector(cvector{0.0, 1.0})),
      DensityOperator::maximally_mixed(2)};
  std::vector<std::vector<double>> freq(3, std::vector<double>{0.5, 0.5});
  freq[0] = {1.0, 0.0};
  freq[1] = {0.0, 1.0};
  try {
    detector_tomography(states, {"a", "b"}, freq);
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.spanned_dimension() == 2);
  }
}

TEST_CASE("detector tomography from sampled rates stays close to the truth") {
  ComplexMatrix plus = (pauli(0) + cdouble(0.8) * pauli(3)) * cdouble(0.5);
  ComplexMatrix minus = (pauli(0) - cdouble(0.8) * pauli(3)) * cdouble(0.5);
  Povm truth({{"plus", HermitianOperator(plus)}, {"minus", HermitianOperator(minus)}});
  Detector det(truth, Scale({{"plus", {1.0}}, {"minus", {-1.0}}}));

  std::vector<DensityOperator> states = spanning_qubit_states();
  std::vector<std::vector<double>> freq;
  SplitMix64 rng(179);
  for (const DensityOperator& s : states) {
    SampleRecord rec = sample(det, s, 1000000, rng.next_u64());
    std::vector<double> row;
    for (const auto& [label, count] : rec.counts)
      row.push_back(static_cast<double>(count) / static_cast<double>(rec.total));
    freq.push_back(std::move(row));
  }
  DetectorTomographyResult r = detector_tomography(states, truth.labels(), freq);
  for (int k = 0; k < 2; ++k)
    CHECK(frobenius_distance(r.povm.element(k).matrix(), truth.element(k).matrix()) <= 5e-3);
}
