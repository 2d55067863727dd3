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

#include "povmlab/detector.hpp"

namespace povmlab {

// Spread of the sampled values against the spread of the measured quantity.
// statistical = E(|a_k - mean|^2) can exceed theoretical = sigma_A^2; the two
// agree for projective detectors.
struct HolevoGap {
  double statistical = 0.0;
  double theoretical = 0.0;
  double gap() const { return statistical - theoretical; }
};

HolevoGap holevo_gap(const Detector& detector, const DensityOperator& state);

// P[a^dag G a] - A^dag G A for a PSD weight G on value space. Positive
// semidefinite for every detector; vanishes in the projective case.
HermitianOperator excess_noise_operator(const Detector& detector, const ComplexMatrix& g);

// How well the detector's readings stand in for a target quantity X on a
// given state. e_term = E(|a_k - mean(X)|^2) splits into the spread about the
// detector's own mean plus the squared bias; delta_x adds back any
// uncertainty of X the detector cannot see.
struct UncertaintyReport {
  double e_term = 0.0;
  double sigma_x = 0.0;
  double sigma_a = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
  double delta_x = 0.0;
};

UncertaintyReport error_report(const Detector& detector, const DensityOperator& state,
                               const QuantityVector& x);

// Mean squared reading error of the scale against X over the calibration
// states, plus ridge * sum |a_k|^2.
double tuning_objective(const Povm& povm, const Scale& scale, const QuantityVector& x,
                        const std::vector<DensityOperator>& calibration_states,
                        double ridge = 0.0);

// Scale minimizing tuning_objective. The problem separates per outcome into
// one-dimensional quadratics; an outcome that never responds over the
// calibration set leaves its value undetermined and is an error unless the
// ridge term pins it.
Scale tune_scale(const Povm& povm, const QuantityVector& x,
                 const std::vector<DensityOperator>& calibration_states, double ridge = 0.0);

}  // namespace povmlab
