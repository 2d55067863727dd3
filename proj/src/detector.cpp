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

#include "povmlab/detector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "povmlab/errors.hpp"

namespace povmlab {

Detector::Detector(Povm povm, Scale scale) : povm_(std::move(povm)), scale_(std::move(scale)) {
  if (scale_.size() != povm_.size())
    throw ValidationError("detector: scale has " + std::to_string(scale_.size()) +
                          " values for " + std::to_string(povm_.size()) + " POVM outcomes");
  std::vector<std::pair<std::string, cvector>> aligned;
  aligned.reserve(static_cast<size_t>(povm_.size()));
  for (const std::string& label : povm_.labels()) {
    if (scale_.index_of(label) < 0)
      throw ValidationError("detector: scale is missing outcome '" + label + "'");
    aligned.emplace_back(label, scale_.value(label));
  }
  scale_ = Scale(std::move(aligned));
  if (!scale_.distinct_values())
    throw ValidationError("detector: scale values must be pairwise distinct");
}

std::vector<double> response_probabilities(const Povm& povm, const DensityOperator& state) {
  if (state.dim() != povm.dim())
    throw ShapeError("response_probabilities: state dim " + std::to_string(state.dim()) +
                     " vs POVM dim " + std::to_string(povm.dim()));
  std::vector<double> p(static_cast<size_t>(povm.size()));
  double sum = 0.0;
  for (int k = 0; k < povm.size(); ++k) {
    const cdouble raw = trace_product(state.matrix(), povm.element(k).matrix());
    double pk = raw.real();
    if (pk < -1e-10) {
      std::ostringstream msg;
      msg << "response_probabilities: outcome '" << povm.label(k) << "' has probability " << pk;
      throw NumericError(msg.str());
    }
    pk = std::clamp(pk, 0.0, 1.0);
    p[static_cast<size_t>(k)] = pk;
    sum += pk;
  }
  // Truncated POVMs (coherent builder) resolve identity only up to their
  // recorded defect, so the unit-sum check scales with it.
  const double sum_tol = std::max(1e-9, 10.0 * povm.completeness_defect());
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg << "response_probabilities: probabilities sum to " << sum;
    throw NumericError(msg.str());
  }
  for (double& pk : p) pk /= sum;
  return p;
}

SampleRecord sample(const Detector& detector, const DensityOperator& state, std::uint64_t n,
                    std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample: need at least one event");
  const std::vector<double> p = response_probabilities(detector, state);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;  // guard against rounding: the last bucket absorbs u ~ 1

  std::vector<std::uint64_t> counts(p.size(), 0);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.next_double();
    const size_t k = static_cast<size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(k, p.size() - 1)];
  }

  SampleRecord record;
  record.total = n;
  record.seed = seed;
  for (size_t k = 0; k < counts.size(); ++k)
    record.counts.emplace_back(detector.povm().label(static_cast<int>(k)), counts[k]);
  return record;
}

cvector statistical_expectation(const Detector& detector, const DensityOperator& state,
                                const std::function<cvector(const cvector&)>& f) {
  const std::vector<double> p = response_probabilities(detector, state);
  const cvector first = f ? f(detector.scale().value(0)) : detector.scale().value(0);
  cvector result(first.size(), 0.0);
  for (int k = 0; k < detector.size(); ++k) {
    const cvector value = f ? f(detector.scale().value(k)) : detector.scale().value(k);
    if (value.size() != result.size())
      throw ShapeError("statistical_expectation: f changed the value dimension");
    for (size_t j = 0; j < result.size(); ++j)
      result[j] += p[static_cast<size_t>(k)] * value[j];
  }
  return result;
}

EmpiricalStatistics empirical_statistics(const SampleRecord& record, const Scale& scale) {
  if (record.total == 0) throw ValidationError("empirical_statistics: empty record");
  const size_t m = static_cast<size_t>(scale.m());
  EmpiricalStatistics stats;
  stats.mean.assign(m, 0.0);
  stats.std_dev.assign(m, 0.0);
  stats.frequencies.reserve(record.counts.size());

  std::uint64_t tallied = 0;
  for (const auto& [label, count] : record.counts) {
    if (scale.index_of(label) < 0)
      throw ValidationError("empirical_statistics: no scale value for outcome '" + label + "'");
    const double freq = static_cast<double>(count) / static_cast<double>(record.total);
    stats.frequencies.push_back(freq);
    const cvector& a = scale.value(label);
    for (size_t j = 0; j < m; ++j) stats.mean[j] += freq * a[j];
    tallied += count;
  }
  if (tallied != record.total)
    throw ValidationError("empirical_statistics: counts do not add up to the total");

  size_t idx = 0;
  for (const auto& [label, count] : record.counts) {
    (void)count;
    const cvector& a = scale.value(label);
    for (size_t j = 0; j < m; ++j)
      stats.std_dev[j] += stats.frequencies[idx] * std::norm(a[j] - stats.mean[j]);
    ++idx;
  }
  for (double& s : stats.std_dev) s = std::sqrt(std::max(0.0, s));
  return stats;
}

}  // namespace povmlab
