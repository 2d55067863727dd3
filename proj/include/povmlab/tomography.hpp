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

#include <string>
#include <vector>

#include "povmlab/povm.hpp"
#include "povmlab/states.hpp"

namespace povmlab {

struct TomographyOptions {
  int max_iterations = 5000;
  double objective_tolerance = 1e-10;  // stop when the decrease falls below
  double rank_threshold = 1e-9;        // relative, for design-rank checks
};

struct StateTomographyResult {
  DensityOperator state;
  double residual = 0.0;   // sqrt of the final least-squares objective
  int iterations = 0;
  bool non_unique = false; // POVM not informationally complete
  std::vector<double> objective_log;  // objective at init and after each step
};

struct DetectorTomographyResult {
  Povm povm;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> objective_log;
};

// Least-squares fit of a density operator to outcome frequencies, solved by
// gradient steps of length 1/L projected exactly onto {PSD, trace 1}. A
// non-IC POVM still yields the minimum-norm fit, flagged non_unique.
StateTomographyResult state_tomography(const Povm& povm, const std::vector<double>& frequencies,
                                       const TomographyOptions& options = {});

// Least-squares fit of a POVM to per-state outcome frequencies. frequencies[s][k]
// is the rate of outcome k on calibration state s; labels name the outcomes.
// Projection onto {each PSD, summing to identity} runs Dykstra's alternation.
DetectorTomographyResult detector_tomography(const std::vector<DensityOperator>& states,
                                             const std::vector<std::string>& labels,
                                             const std::vector<std::vector<double>>& frequencies,
                                             const TomographyOptions& options = {});

}  // namespace povmlab
