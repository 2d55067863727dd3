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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "povmlab/povm.hpp"
#include "povmlab/rng.hpp"
#include "povmlab/states.hpp"

namespace povmlab {

// A detector pairs a POVM with a scale over the same outcome labels. The
// scale is stored realigned to the POVM's label order, so index k addresses
// the same outcome in both. Scale values must be pairwise distinct here:
// two outcomes reading the same value would be a single outcome.
class Detector {
 public:
  Detector(Povm povm, Scale scale);

  const Povm& povm() const { return povm_; }
  const Scale& scale() const { return scale_; }
  int size() const { return povm_.size(); }
  int dim() const { return povm_.dim(); }

  // P[a]: the quantity this detector measures.
  QuantityVector quantity() const { return povmlab::quantity(povm_, scale_); }

 private:
  Povm povm_;
  Scale scale_;
};

// Outcome tallies from a finite run. Counts follow the detector's label
// order and sum to total.
struct SampleRecord {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::uint64_t total = 0;
  std::uint64_t seed = 0;
};

struct EmpiricalStatistics {
  cvector mean;                    // per component of the scale
  std::vector<double> std_dev;     // population std per component
  std::vector<double> frequencies; // counts / total, label order
};

// p_k = Tr(rho P_k). Values below -1e-10 indicate a broken input and throw;
// small negatives are clipped and the vector renormalized.
std::vector<double> response_probabilities(const Povm& povm, const DensityOperator& state);

inline std::vector<double> response_probabilities(const Detector& detector,
                                                  const DensityOperator& state) {
  return response_probabilities(detector.povm(), state);
}

// N i.i.d. categorical draws via inverse CDF. Bit-reproducible for a given
// (seed, N): the stream consumes exactly one uniform per event.
SampleRecord sample(const Detector& detector, const DensityOperator& state, std::uint64_t n,
                    std::uint64_t seed);

// Exact expectation sum_k p_k f(a_k); no sampling involved. The default f is
// the identity, giving the mean scale value <A>.
cvector statistical_expectation(const Detector& detector, const DensityOperator& state,
                                const std::function<cvector(const cvector&)>& f = {});

// Sample mean, population standard deviation and frequencies of a finished
// run, evaluated on the given scale.
EmpiricalStatistics empirical_statistics(const SampleRecord& record, const Scale& scale);

}  // namespace povmlab
