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

#include "povmlab/errors.hpp"
#include "povmlab/states.hpp"
#include "test_support.hpp"

using namespace povmlab;

TEST_CASE("density operator validates trace and positivity") {
  CHECK_THROWS_AS(DensityOperator(HermitianOperator(ComplexMatrix::identity(2))),
                  ValidationError);  // trace 2
  ComplexMatrix m = ComplexMatrix::diagonal(std::vector<double>{1.1, -0.1});
  CHECK_THROWS_AS(DensityOperator(HermitianOperator(m)), ValidationError);  // eigenvalue -0.1

  // A -1e-12 eigenvalue is rounding noise and passes.
  ComplexMatrix ok = ComplexMatrix::diagonal(std::vector<double>{1.0 + 1e-12, -1e-12});
  CHECK_NOTHROW(DensityOperator(HermitianOperator(ok)));
}

TEST_CASE("from_unnormalized keeps the trace as intensity") {
  ComplexMatrix m = ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0});
  DensityOperator rho = DensityOperator::from_unnormalized(HermitianOperator(m));
  CHECK(rho.intensity() == doctest::Approx(4.0));
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.75));
  CHECK(frobenius_distance(rho.unnormalized(), m) <= 1e-14);
}

TEST_CASE("state vector validation") {
  CHECK_THROWS_AS(StateVector(cvector{0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(StateVector(cvector{}), ShapeError);
  CHECK_THROWS_AS(StateVector::normalized(cvector{0.0, 0.0}), ValidationError);
  StateVector s = StateVector::normalized(cvector{3.0, 4.0});
  CHECK(s.psi()[0].real() == doctest::Approx(0.6));
  CHECK(s.psi()[1].real() == doctest::Approx(0.8));
}

TEST_CASE("pure_state: up vector gives diag(1,0)") {
  DensityOperator rho = pure_state(StateVector(cvector{1.0, 0.0}));
  CHECK(frobenius_distance(rho.matrix(), ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0})) ==
        0.0);
  CHECK(rho.intensity() == 1.0);
}

TEST_CASE("pure_state is rank one with unit trace for random vectors") {
  SplitMix64 rng(23);
  for (int rep = 0; rep < 8; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 5);
    StateVector psi(testing::random_unit_vector(rng, d));
    DensityOperator rho = pure_state(psi);
    EigenSystem es = eig_hermitian(rho.rho());
    CHECK(es.eigenvalues.back() == doctest::Approx(1.0).epsilon(1e-10));
    for (size_t i = 0; i + 1 < es.eigenvalues.size(); ++i)
      CHECK(std::abs(es.eigenvalues[i]) <= 1e-10);
  }
}

TEST_CASE("q_expectation basics") {
  DensityOperator mixed = DensityOperator::maximally_mixed(2);
  CHECK(std::abs(q_expectation(mixed, pauli(1))) <= 1e-15);

  DensityOperator up = pure_state(StateVector(cvector{1.0, 0.0}));
  CHECK(q_expectation(up, pauli(3)).real() == doctest::Approx(1.0));
  CHECK(q_expectation(up, pauli(3)).imag() == 0.0);
}

TEST_CASE("q_expectation of a non-Hermitian component is plain trace evaluation") {
  // Lowering operator on a qubit: <0| only connects through the coherence.
  ComplexMatrix lower(2, 2, {0.0, 1.0, 0.0, 0.0});
  StateVector plus = StateVector::normalized(cvector{1.0, 1.0});
  cdouble v = q_expectation(pure_state(plus), lower);
  CHECK(v.real() == doctest::Approx(0.5));
  CHECK(std::abs(v.imag()) <= 1e-15);
}

TEST_CASE("q_expectation is real for Hermitian components on random states") {
  SplitMix64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 4);
    DensityOperator rho(HermitianOperator(testing::random_density(rng, d)));
    HermitianOperator x(testing::random_hermitian(rng, d));
    CHECK(std::abs(q_expectation(rho, x.matrix()).imag()) <= 1e-12);
  }
}

TEST_CASE("q_uncertainty: eigenstate has zero uncertainty") {
  DensityOperator up = pure_state(StateVector(cvector{1.0, 0.0}));
  CHECK(q_uncertainty(up, pauli(3)) <= 1e-12);
}

TEST_CASE("q_uncertainty: sigma1 in the maximally mixed state is 1") {
  DensityOperator mixed = DensityOperator::maximally_mixed(2);
  CHECK(q_uncertainty(mixed, pauli(1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-outcome quantity, 0.2/0.8 weights: mean 6.578 and sigma 0.004") {
  // Eigenbasis representation: exact weights in the state.
  DensityOperator rho(HermitianOperator(ComplexMatrix::diagonal(std::vector<double>{0.2, 0.8})));
  ComplexMatrix x = ComplexMatrix::diagonal(std::vector<double>{6.57, 6.58});
  CHECK(q_expectation(rho, x).real() == 6.578);  // bit-exact
  CHECK(std::abs(q_uncertainty(rho, x) - 0.004) <= 1e-12);

  // Same quantity written in the rotated basis where the state is pure "up":
  // A = [[6.578, 0.004], [0.004, 6.572]].
  ComplexMatrix a(2, 2, {6.578, 0.004, 0.004, 6.572});
  DensityOperator up = pure_state(StateVector(cvector{1.0, 0.0}));
  CHECK(q_expectation(up, a).real() == 6.578);
  CHECK(std::abs(q_uncertainty(up, a) - 0.004) <= 1e-12);
}

TEST_CASE("q_covariance: (sigma1, sigma2) in the maximally mixed state is the identity") {
  DensityOperator mixed = DensityOperator::maximally_mixed(2);
  QuantityVector x({pauli(1), pauli(2)});
  ComplexMatrix cov = q_covariance(mixed, x);
  CHECK(frobenius_distance(cov, ComplexMatrix::identity(2)) <= 1e-12);
}

TEST_CASE("q_covariance trace equals squared q_uncertainty; covariance is Hermitian PSD") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    DensityOperator rho(HermitianOperator(testing::random_density(rng, d)));
    QuantityVector x({testing::random_hermitian(rng, d), testing::random_hermitian(rng, d),
                      testing::random_hermitian(rng, d)});
    ComplexMatrix cov = q_covariance(rho, x);
    const double sigma = q_uncertainty(rho, x);
    CHECK(cov.trace().real() == doctest::Approx(sigma * sigma).epsilon(1e-10));
    CHECK(hermiticity_defect(cov) <= 1e-10 * std::max(1.0, cov.frobenius_norm()));
    CHECK(min_eigenvalue(HermitianOperator(cov)) >= -1e-10);
  }
}

TEST_CASE("robertson: sigma1/sigma2 in the up state achieve equality") {
  DensityOperator up = pure_state(StateVector(cvector{1.0, 0.0}));
  RobertsonCheck rc = robertson_check(up, HermitianOperator(pauli(1)), HermitianOperator(pauli(2)));
  CHECK(rc.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rc.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rc.holds());
}

TEST_CASE("robertson holds on random states and observables") {
  SplitMix64 rng(37);
  for (int rep = 0; rep < 25; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 4);
    DensityOperator rho(HermitianOperator(testing::random_density(rng, d)));
    HermitianOperator a(testing::random_hermitian(rng, d));
    HermitianOperator b(testing::random_hermitian(rng, d));
    RobertsonCheck rc = robertson_check(rho, a, b);
    CHECK(rc.holds(1e-10 * std::max(1.0, rc.rhs)));
  }
}

TEST_CASE("qubit q-expectations of the sigma basis determine the state") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    DensityOperator rho(HermitianOperator(testing::random_density(rng, 2)));
    ComplexMatrix rebuilt(2, 2);
    for (int k = 0; k < 4; ++k) {
      const cdouble mean = q_expectation(rho, pauli(k));
      rebuilt += cdouble(0.5) * mean * pauli(k);
    }
    CHECK(frobenius_distance(rebuilt, rho.matrix()) <= 1e-12);
  }
}

TEST_CASE("quantity vector shape validation") {
  CHECK_THROWS_AS(QuantityVector(std::vector<ComplexMatrix>{}), ShapeError);
  CHECK_THROWS_AS(QuantityVector({pauli(1), ComplexMatrix::identity(3)}), ShapeError);
  QuantityVector x({pauli(1), pauli(2)});
  CHECK(x.all_hermitian());
  ComplexMatrix lower(2, 2, {0.0, 1.0, 0.0, 0.0});
  CHECK_FALSE(QuantityVector({lower}).all_hermitian());
}
