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

#include "povmlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "povmlab/errors.hpp"

namespace povmlab {

PovmValidationReport validate_povm(
    const std::vector<std::pair<std::string, ComplexMatrix>>& candidate,
    const PovmTolerances& tol) {
  if (candidate.empty()) throw ShapeError("POVM candidate must have at least one element");
  const int d = candidate.front().second.rows();
  for (const auto& [label, m] : candidate)
    if (!m.is_square() || m.rows() != d)
      throw ShapeError("POVM elements must be square with a common dimension");

  PovmValidationReport report;
  report.tolerances = tol;
  ComplexMatrix sum(d, d);
  bool all_ok = true;
  std::set<std::string> seen;
  for (const auto& [label, m] : candidate) {
    if (!seen.insert(label).second) all_ok = false;  // duplicate label
    PovmValidationReport::Element e;
    e.label = label;
    e.hermiticity_defect = hermiticity_defect(m);
    e.norm = m.frobenius_norm();
    // Eigenvalues of the Hermitian part; for valid elements this is the
    // element itself.
    ComplexMatrix herm = m + m.adjoint();
    herm *= cdouble(0.5);
    e.min_eigenvalue = eig_hermitian(HermitianOperator(herm)).min_eigenvalue();
    sum += m;

    if (e.hermiticity_defect > kHermiticityTol * std::max(1.0, e.norm)) all_ok = false;
    if (e.min_eigenvalue < -tol.psd_floor) all_ok = false;
    if (e.norm <= tol.zero_element) all_ok = false;
    report.elements.push_back(std::move(e));
  }
  report.completeness_defect = frobenius_distance(sum, ComplexMatrix::identity(d));
  if (report.completeness_defect > tol.completeness) all_ok = false;
  report.valid = all_ok;
  return report;
}

Povm::Povm(std::vector<std::pair<std::string, HermitianOperator>> elements,
           const PovmTolerances& tol)
    : elements_(std::move(elements)), tolerances_(tol) {
  if (elements_.empty()) throw ShapeError("POVM must have at least one element");
  dim_ = elements_.front().second.dim();

  std::vector<std::pair<std::string, ComplexMatrix>> candidate;
  candidate.reserve(elements_.size());
  for (const auto& [label, h] : elements_) candidate.emplace_back(label, h.matrix());
  PovmValidationReport report = validate_povm(candidate, tol);
  completeness_defect_ = report.completeness_defect;
  if (!report.valid) {
    std::string why = "invalid POVM:";
    std::set<std::string> seen;
    for (const auto& e : report.elements) {
      if (!seen.insert(e.label).second) why += " duplicate label '" + e.label + "';";
      if (e.min_eigenvalue < -tol.psd_floor)
        why += " element '" + e.label + "' has eigenvalue " + std::to_string(e.min_eigenvalue) + ";";
      if (e.norm <= tol.zero_element) why += " element '" + e.label + "' is zero;";
    }
    if (report.completeness_defect > tol.completeness)
      why += " completeness defect " + std::to_string(report.completeness_defect);
    throw ValidationError(why);
  }
}

int Povm::index_of(const std::string& label) const {
  for (int k = 0; k < size(); ++k)
    if (elements_[static_cast<size_t>(k)].first == label) return k;
  return -1;
}

std::vector<std::string> Povm::labels() const {
  std::vector<std::string> out;
  out.reserve(elements_.size());
  for (const auto& [label, h] : elements_) out.push_back(label);
  return out;
}

Scale::Scale(std::vector<std::pair<std::string, cvector>> values) : values_(std::move(values)) {
  if (values_.empty()) throw ShapeError("scale must assign at least one value");
  m_ = static_cast<int>(values_.front().second.size());
  if (m_ < 1) throw ShapeError("scale values must have at least one component");
  std::set<std::string> labels;
  for (const auto& [label, a] : values_) {
    if (static_cast<int>(a.size()) != m_)
      throw ShapeError("scale values must share a common length");
    if (!labels.insert(label).second)
      throw ValidationError("duplicate scale label '" + label + "'");
  }
}

Scale Scale::real_scalars(const std::vector<std::string>& labels,
                          const std::vector<double>& values) {
  if (labels.size() != values.size()) throw ShapeError("label/value count mismatch");
  std::vector<std::pair<std::string, cvector>> v;
  v.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) v.emplace_back(labels[i], cvector{values[i]});
  return Scale(std::move(v));
}

const cvector& Scale::value(const std::string& label) const {
  const int k = index_of(label);
  if (k < 0) throw ShapeError("scale has no label '" + label + "'");
  return values_[static_cast<size_t>(k)].second;
}

int Scale::index_of(const std::string& label) const {
  for (int k = 0; k < size(); ++k)
    if (values_[static_cast<size_t>(k)].first == label) return k;
  return -1;
}

std::vector<std::string> Scale::labels() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [label, a] : values_) out.push_back(label);
  return out;
}

bool Scale::distinct_values() const {
  for (int j = 0; j < size(); ++j)
    for (int k = j + 1; k < size(); ++k)
      if (values_[static_cast<size_t>(j)].second == values_[static_cast<size_t>(k)].second)
        return false;
  return true;
}

PartitionOfUnity::PartitionOfUnity(
    cvector points, std::vector<double> weights,
    std::vector<std::pair<std::string, std::vector<double>>> functions)
    : points_(std::move(points)), weights_(std::move(weights)), functions_(std::move(functions)) {
  if (points_.empty()) throw ShapeError("partition grid must be nonempty");
  if (weights_.size() != points_.size()) throw ShapeError("one quadrature weight per grid point");
  if (functions_.empty()) throw ShapeError("partition must have at least one function");
  std::set<std::string> labels;
  for (const auto& [label, values] : functions_) {
    if (values.size() != points_.size())
      throw ShapeError("partition function '" + label + "' not sampled on the full grid");
    if (!labels.insert(label).second)
      throw ValidationError("duplicate partition label '" + label + "'");
    for (double v : values)
      if (v < 0.0)
        throw ValidationError("partition function '" + label + "' has a negative value");
  }
  for (double w : weights_)
    if (!(w > 0.0)) throw ValidationError("quadrature weights must be positive");
  for (size_t i = 0; i < points_.size(); ++i) {
    double s = 0.0;
    for (const auto& [label, values] : functions_) s += values[i];
    if (std::abs(s - 1.0) > 1e-12)
      throw ValidationError("partition functions sum to " + std::to_string(s) +
                            " at grid point " + std::to_string(i));
  }
}

PartitionOfUnity PartitionOfUnity::on_real_grid(
    const std::vector<double>& points,
    std::vector<std::pair<std::string, std::vector<double>>> functions) {
  cvector pts(points.size());
  for (size_t i = 0; i < points.size(); ++i) pts[i] = cdouble(points[i], 0.0);
  return PartitionOfUnity(std::move(pts), std::vector<double>(points.size(), 1.0),
                          std::move(functions));
}

std::pair<cvector, std::vector<double>> disc_grid(double radius, double spacing) {
  if (!(radius > 0.0) || !(spacing > 0.0))
    throw ShapeError("disc grid needs positive radius and spacing");
  const int n = static_cast<int>(std::ceil(2.0 * radius / spacing));
  cvector points;
  std::vector<double> weights;
  for (int i = 0; i < n; ++i) {
    const double x = -radius + (i + 0.5) * spacing;
    for (int j = 0; j < n; ++j) {
      const double y = -radius + (j + 0.5) * spacing;
      if (x * x + y * y <= radius * radius) {
        points.emplace_back(x, y);
        weights.push_back(spacing * spacing);
      }
    }
  }
  if (points.empty()) throw ShapeError("disc grid is empty; spacing too coarse");
  return {std::move(points), std::move(weights)};
}

bool is_projective(const Povm& povm, double tol) {
  for (int j = 0; j < povm.size(); ++j)
    for (int k = 0; k < povm.size(); ++k) {
      ComplexMatrix prod = povm.element(j).matrix() * povm.element(k).matrix();
      if (j == k) prod -= povm.element(k).matrix();
      if (prod.frobenius_norm() > tol) return false;
    }
  return true;
}

namespace {

// Real symmetric Gram matrix G_jk = tr(P_j P_k) and its eigensystem.
struct GramEig {
  std::vector<std::vector<double>> coords;  // hermitian coordinates per element
  EigenSystem eig;
  int rank;
};

GramEig gram_eig(const Povm& povm, double rank_threshold) {
  const int n = povm.size();
  GramEig g;
  g.coords.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    g.coords.push_back(hermitian_coordinates(povm.element(k).matrix()));
  ComplexMatrix gram(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double dot = 0.0;
      for (size_t i = 0; i < g.coords[static_cast<size_t>(j)].size(); ++i)
        dot += g.coords[static_cast<size_t>(j)][i] * g.coords[static_cast<size_t>(k)][i];
      gram(j, k) = dot;
      gram(k, j) = dot;
    }
  g.eig = eig_hermitian(HermitianOperator(gram));
  const double lam_max = std::abs(g.eig.eigenvalues.back());
  g.rank = 0;
  for (double lam : g.eig.eigenvalues)
    if (lam > rank_threshold * lam_max) ++g.rank;
  return g;
}

}  // namespace

IcReport informational_completeness(const Povm& povm, double rank_threshold) {
  GramEig g = gram_eig(povm, rank_threshold);
  IcReport r;
  r.spanned_dimension = g.rank;
  r.complete = (g.rank == povm.dim() * povm.dim());
  r.minimal = r.complete && (povm.size() == povm.dim() * povm.dim());
  return r;
}

QuantityVector weighted_operator(const Povm& povm, const std::vector<cvector>& values) {
  if (static_cast<int>(values.size()) != povm.size())
    throw ShapeError("one value vector per POVM element");
  const size_t m = values.front().size();
  for (const cvector& v : values)
    if (v.size() != m) throw ShapeError("value vectors must share a common length");
  std::vector<ComplexMatrix> components;
  components.reserve(m);
  for (size_t j = 0; j < m; ++j) {
    ComplexMatrix acc(povm.dim(), povm.dim());
    for (int k = 0; k < povm.size(); ++k)
      acc += values[static_cast<size_t>(k)][j] * povm.element(k).matrix();
    components.push_back(std::move(acc));
  }
  return QuantityVector(std::move(components));
}

QuantityVector quantity(const Povm& povm, const Scale& scale) {
  if (scale.size() != povm.size())
    throw ShapeError("scale and POVM must have the same outcome set");
  std::vector<cvector> values;
  values.reserve(static_cast<size_t>(povm.size()));
  for (int k = 0; k < povm.size(); ++k) values.push_back(scale.value(povm.label(k)));
  return weighted_operator(povm, values);
}

SolveScaleResult solve_scale(const Povm& povm, const QuantityVector& x, double rank_threshold) {
  if (x.dim() != povm.dim()) throw ShapeError("quantity dimension does not match POVM");
  const int n = povm.size();
  const int d2 = povm.dim() * povm.dim();
  GramEig g = gram_eig(povm, rank_threshold);
  if (g.rank < d2)
    throw RankDeficiencyError(
        "POVM is not informationally complete: spans " + std::to_string(g.rank) + " of " +
            std::to_string(d2) + " dimensions",
        g.rank);

  const double lam_max = g.eig.eigenvalues.back();
  // Minimal-norm least squares through the Gram eigensystem: for right-hand
  // side r_k = tr(P_k H), the coefficient vector is sum_i (w_i^T r / lam_i) w_i.
  auto solve_real = [&](const ComplexMatrix& h) {
    std::vector<double> r(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      r[static_cast<size_t>(k)] = trace_product(povm.element(k).matrix(), h).real();
    std::vector<double> u(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      const double lam = g.eig.eigenvalues[static_cast<size_t>(i)];
      if (lam <= rank_threshold * lam_max) continue;
      double proj = 0.0;
      for (int k = 0; k < n; ++k)
        proj += g.eig.eigenvectors(k, i).real() * r[static_cast<size_t>(k)];
      proj /= lam;
      for (int k = 0; k < n; ++k)
        u[static_cast<size_t>(k)] += proj * g.eig.eigenvectors(k, i).real();
    }
    return u;
  };

  std::vector<cvector> values(static_cast<size_t>(n), cvector(static_cast<size_t>(x.size())));
  double residual_sq = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    const ComplexMatrix& xj = x.component(j);
    ComplexMatrix h_re = xj + xj.adjoint();
    h_re *= cdouble(0.5);
    ComplexMatrix h_im = xj - xj.adjoint();
    h_im *= cdouble(0.0, -0.5);
    const std::vector<double> u_re = solve_real(h_re);
    const std::vector<double> u_im = solve_real(h_im);

    ComplexMatrix recon(povm.dim(), povm.dim());
    for (int k = 0; k < n; ++k) {
      const cdouble a(u_re[static_cast<size_t>(k)], u_im[static_cast<size_t>(k)]);
      values[static_cast<size_t>(k)][static_cast<size_t>(j)] = a;
      recon += a * povm.element(k).matrix();
    }
    const double r = frobenius_distance(recon, xj);
    residual_sq += r * r;
  }

  std::vector<std::pair<std::string, cvector>> scale_values;
  scale_values.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    scale_values.emplace_back(povm.label(k), values[static_cast<size_t>(k)]);
  return SolveScaleResult{Scale(std::move(scale_values)), std::sqrt(residual_sq)};
}

ProjectiveDecomposition projective_from_operator(const HermitianOperator& a, double gap_tol) {
  EigenSystem es = eig_hermitian(a);
  const int d = a.dim();

  std::vector<std::pair<std::string, HermitianOperator>> elements;
  std::vector<std::pair<std::string, cvector>> values;
  int cluster_start = 0;
  int cluster_index = 0;
  for (int i = 1; i <= d; ++i) {
    const bool boundary =
        (i == d) || (es.eigenvalues[static_cast<size_t>(i)] -
                         es.eigenvalues[static_cast<size_t>(i - 1)] >
                     gap_tol);
    if (!boundary) continue;
    ComplexMatrix proj(d, d);
    double mean = 0.0;
    for (int c = cluster_start; c < i; ++c) {
      const cvector v = es.eigenvector(c);
      proj += ComplexMatrix::outer(v, v);
      mean += es.eigenvalues[static_cast<size_t>(c)];
    }
    mean /= (i - cluster_start);
    const std::string label = std::to_string(cluster_index++);
    elements.emplace_back(label, HermitianOperator(proj));
    values.emplace_back(label, cvector{mean});
    cluster_start = i;
  }
  return ProjectiveDecomposition{Povm(std::move(elements)), Scale(std::move(values))};
}

Povm filter_bank_povm(const std::vector<ComplexMatrix>& jones, const std::vector<double>& c) {
  if (jones.empty()) throw ShapeError("filter bank needs at least one filter");
  if (jones.size() != c.size()) throw ShapeError("one constant per filter");
  const int d = jones.front().rows();
  for (const ComplexMatrix& t : jones)
    if (!t.is_square() || t.rows() != d)
      throw ShapeError("filters must be square with a common dimension");
  for (double ck : c)
    if (!(ck > 0.0)) throw ValidationError("filter constants must be positive");

  std::vector<std::pair<std::string, HermitianOperator>> elements;
  ComplexMatrix sum(d, d);
  for (size_t k = 0; k < jones.size(); ++k) {
    HermitianOperator tt(jones[k].adjoint() * jones[k]);
    const double min_eig = min_eigenvalue(tt);
    if (min_eig <= 1e-14 * std::max(1.0, tt.matrix().frobenius_norm()))
      throw ValidationError("filter " + std::to_string(k + 1) + " is singular");
    ComplexMatrix p = tt.matrix();
    p *= cdouble(c[k]);
    sum += p;
    elements.emplace_back(std::to_string(k + 1), HermitianOperator(p));
  }
  ComplexMatrix p0 = ComplexMatrix::identity(d) - sum;
  const HermitianOperator rem(p0);
  const double rem_min = min_eigenvalue(rem);
  if (rem_min < -1e-10)
    throw InfeasibleError("splitting arrangement infeasible: remainder eigenvalue " +
                          std::to_string(rem_min));
  // A vanishing remainder means the filters already resolve the identity;
  // a zero outcome that can never fire is not part of the family.
  if (rem.matrix().frobenius_norm() > 1e-12)
    elements.insert(elements.begin(), {"0", psd_project(rem)});
  return Povm(std::move(elements));
}

Povm partition_povm_position(const PartitionOfUnity& partition) {
  const int d = partition.num_points();
  std::vector<std::pair<std::string, HermitianOperator>> elements;
  for (int k = 0; k < partition.num_functions(); ++k) {
    cvector diag(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) diag[static_cast<size_t>(i)] = partition.values(k)[static_cast<size_t>(i)];
    elements.emplace_back(partition.label(k), HermitianOperator(ComplexMatrix::diagonal(diag)));
  }
  return Povm(std::move(elements));
}

cvector coherent_amplitudes(cdouble alpha, int fock_cutoff) {
  if (fock_cutoff < 0) throw ShapeError("fock cutoff must be nonnegative");
  cvector v(static_cast<size_t>(fock_cutoff) + 1);
  v[0] = std::exp(-0.5 * std::norm(alpha));
  for (int j = 1; j <= fock_cutoff; ++j)
    v[static_cast<size_t>(j)] = v[static_cast<size_t>(j - 1)] * alpha / std::sqrt(static_cast<double>(j));
  return v;
}

CoherentPovmResult coherent_state_povm(const PartitionOfUnity& partition, int fock_cutoff,
                                       double defect_tolerance) {
  const int d = fock_cutoff + 1;
  const double inv_pi = 1.0 / 3.14159265358979323846264338327950288;
  std::vector<ComplexMatrix> acc(static_cast<size_t>(partition.num_functions()),
                                 ComplexMatrix(d, d));
  for (int i = 0; i < partition.num_points(); ++i) {
    const cvector v = coherent_amplitudes(partition.points()[static_cast<size_t>(i)], fock_cutoff);
    const double w = partition.weights()[static_cast<size_t>(i)] * inv_pi;
    for (int k = 0; k < partition.num_functions(); ++k) {
      const double e = partition.values(k)[static_cast<size_t>(i)];
      if (e == 0.0) continue;
      const double coeff = w * e;
      ComplexMatrix& target = acc[static_cast<size_t>(k)];
      for (int r = 0; r < d; ++r)
        for (int col = 0; col < d; ++col)
          target(r, col) += coeff * v[static_cast<size_t>(r)] * std::conj(v[static_cast<size_t>(col)]);
    }
  }
  ComplexMatrix sum(d, d);
  for (const ComplexMatrix& p : acc) sum += p;
  const double defect = frobenius_distance(sum, ComplexMatrix::identity(d));
  if (defect > defect_tolerance)
    throw TruncationError("fock truncation insufficient: completeness defect " +
                              std::to_string(defect) + " exceeds tolerance " +
                              std::to_string(defect_tolerance),
                          defect);

  PovmTolerances tol;
  tol.completeness = std::max(tol.completeness, defect_tolerance);
  std::vector<std::pair<std::string, HermitianOperator>> elements;
  for (int k = 0; k < partition.num_functions(); ++k)
    elements.emplace_back(partition.label(k), HermitianOperator(acc[static_cast<size_t>(k)]));
  return CoherentPovmResult{Povm(std::move(elements), tol), defect};
}

}  // namespace povmlab
