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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "povmlab/hermitian.hpp"
#include "povmlab/states.hpp"

namespace povmlab {

struct PovmTolerances {
  double completeness = 1e-9;   // || sum P_k - I ||_F allowed
  double psd_floor = 1e-10;     // eigenvalues allowed down to -psd_floor
  double zero_element = 1e-12;  // elements with smaller Frobenius norm count as zero
};

struct PovmValidationReport {
  struct Element {
    std::string label;
    double hermiticity_defect;
    double min_eigenvalue;
    double norm;
  };
  std::vector<Element> elements;
  double completeness_defect = 0.0;
  bool valid = false;
  PovmTolerances tolerances;
};

// Report-style check of a candidate element family; throws only on shape
// violations, everything else lands in the report.
PovmValidationReport validate_povm(
    const std::vector<std::pair<std::string, ComplexMatrix>>& candidate,
    const PovmTolerances& tol = {});

// Finite labeled family {P_k} of PSD Hermitian operators summing to the
// identity within tolerance. Element order is the insertion order and is the
// canonical outcome order everywhere downstream.
class Povm {
 public:
  Povm(std::vector<std::pair<std::string, HermitianOperator>> elements,
       const PovmTolerances& tol = {});

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::string& label(int k) const { return elements_.at(static_cast<size_t>(k)).first; }
  const HermitianOperator& element(int k) const {
    return elements_.at(static_cast<size_t>(k)).second;
  }
  int index_of(const std::string& label) const;  // -1 if absent
  std::vector<std::string> labels() const;

  // || sum P_k - I ||_F measured at construction.
  double completeness_defect() const noexcept { return completeness_defect_; }
  const PovmTolerances& tolerances() const noexcept { return tolerances_; }

 private:
  int dim_;
  std::vector<std::pair<std::string, HermitianOperator>> elements_;
  double completeness_defect_;
  PovmTolerances tolerances_;
};

// Assignment of complex value vectors (all of a common length m >= 1) to
// outcome labels. Detectors require pairwise distinct values; recovered
// scales (solve_scale, tune_scale) may carry duplicates, so distinctness is
// queried rather than enforced here.
class Scale {
 public:
  explicit Scale(std::vector<std::pair<std::string, cvector>> values);
  static Scale real_scalars(const std::vector<std::string>& labels,
                            const std::vector<double>& values);

  bool distinct_values() const;

  int m() const noexcept { return m_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }
  const std::string& label(int k) const { return values_.at(static_cast<size_t>(k)).first; }
  const cvector& value(int k) const { return values_.at(static_cast<size_t>(k)).second; }
  const cvector& value(const std::string& label) const;
  int index_of(const std::string& label) const;
  std::vector<std::string> labels() const;

 private:
  int m_;
  std::vector<std::pair<std::string, cvector>> values_;
};

// Nonnegative functions summing to one at every point of a sample grid, with
// quadrature weights. Real grids carry points on the real axis.
class PartitionOfUnity {
 public:
  PartitionOfUnity(cvector points, std::vector<double> weights,
                   std::vector<std::pair<std::string, std::vector<double>>> functions);

  static PartitionOfUnity on_real_grid(
      const std::vector<double>& points,
      std::vector<std::pair<std::string, std::vector<double>>> functions);

  int num_points() const noexcept { return static_cast<int>(points_.size()); }
  int num_functions() const noexcept { return static_cast<int>(functions_.size()); }
  const cvector& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::string& label(int k) const { return functions_.at(static_cast<size_t>(k)).first; }
  const std::vector<double>& values(int k) const {
    return functions_.at(static_cast<size_t>(k)).second;
  }

 private:
  cvector points_;
  std::vector<double> weights_;
  std::vector<std::pair<std::string, std::vector<double>>> functions_;
};

// Uniform midpoint grid covering the disc |alpha| <= radius; weight is the
// cell area. Used as the quadrature for coherent-state families.
std::pair<cvector, std::vector<double>> disc_grid(double radius, double spacing);

// max_k,j || P_j P_k - delta_jk P_k ||_F <= tol?
bool is_projective(const Povm& povm, double tol = 1e-10);

struct IcReport {
  bool complete = false;
  int spanned_dimension = 0;
  bool minimal = false;  // complete with exactly dim^2 outcomes
};

// Rank of the Gram matrix G_jk = tr(P_j P_k) over the real space of Hermitian
// operators; complete iff the elements span all dim^2 of it.
IcReport informational_completeness(const Povm& povm, double rank_threshold = 1e-9);

// P[x_k] = sum_k x_k P_k, componentwise; x need not have distinct values.
QuantityVector weighted_operator(const Povm& povm, const std::vector<cvector>& values);

// The quantity A = P[a_k] induced by a detector scale. Components are
// Hermitian exactly when all scale values are real.
QuantityVector quantity(const Povm& povm, const Scale& scale);

// Least-squares recovery of scale values from a quantity: solve
// sum_k a_k P_k = X_j per component. Requires informational completeness.
struct SolveScaleResult {
  Scale scale;
  double residual;  // Frobenius norm of the stacked reconstruction error
};
SolveScaleResult solve_scale(const Povm& povm, const QuantityVector& x,
                             double rank_threshold = 1e-9);

// Spectral decomposition of a Hermitian operator as a projective POVM plus
// the eigenvalue scale; eigenvalues within gap_tol share one projector.
struct ProjectiveDecomposition {
  Povm povm;
  Scale scale;
};
ProjectiveDecomposition projective_from_operator(const HermitianOperator& a,
                                                 double gap_tol = 1e-9);

// Filter-bank POVM P_k = c_k T_k^dagger T_k completed by P_0 = I - sum P_k.
// Labels "1".."n" for the filters, "0" for the remainder.
Povm filter_bank_povm(const std::vector<ComplexMatrix>& jones, const std::vector<double>& c);

// Diagonal POVM from a partition of unity sampled on a d-point grid.
Povm partition_povm_position(const PartitionOfUnity& partition);

// Coherent-state POVM on the truncated number basis {0..fock_cutoff}:
// P_k = pi^{-1} sum_i w_i e_k(alpha_i) |alpha_i><alpha_i| with truncated,
// unrenormalized coherent amplitudes. The family generally sums to the
// identity only up to a truncation defect, which is surfaced.
struct CoherentPovmResult {
  Povm povm;
  double completeness_defect;
};
CoherentPovmResult coherent_state_povm(const PartitionOfUnity& partition, int fock_cutoff,
                                       double defect_tolerance = 1e-6);

// Truncated coherent amplitudes <j|alpha> = e^{-|alpha|^2/2} alpha^j / sqrt(j!).
cvector coherent_amplitudes(cdouble alpha, int fock_cutoff);

}  // namespace povmlab
