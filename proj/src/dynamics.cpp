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

#include "povmlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povmlab/errors.hpp"

namespace povmlab {

namespace {

constexpr cdouble kMinusI(0.0, -1.0);

// Integrator drift can push eigenvalues slightly negative; trajectories
// tolerate more than freshly constructed states.
const StateTolerances kTrajectoryTolerances{1e-8, 1e-8};

void check_time_grid(const std::vector<double>& times, double step) {
  if (times.empty()) throw ValidationError("evolve: empty time grid");
  if (step <= 0.0) throw ValidationError("evolve: step must be positive");
  for (size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    if (gap <= 0.0) throw ValidationError("evolve: times must be strictly increasing");
    if (step > gap + 1e-12)
      throw ValidationError("evolve: step " + std::to_string(step) +
                            " exceeds the sample spacing " + std::to_string(gap));
  }
}

// One classical RK4 step of x' = f(t, x) over [t, t+h] for matrix-valued x.
template <typename F>
ComplexMatrix rk4_step(const F& f, double t, const ComplexMatrix& x, double h) {
  const ComplexMatrix k1 = f(t, x);
  const ComplexMatrix k2 = f(t + 0.5 * h, x + cdouble(0.5 * h) * k1);
  const ComplexMatrix k3 = f(t + 0.5 * h, x + cdouble(0.5 * h) * k2);
  const ComplexMatrix k4 = f(t + h, x + cdouble(h) * k3);
  return x + cdouble(h / 6.0) * (k1 + cdouble(2.0) * k2 + cdouble(2.0) * k3 + k4);
}

ComplexMatrix rehermitize(const ComplexMatrix& m) {
  return cdouble(0.5) * (m + m.adjoint());
}

template <typename F>
DensityTrajectory integrate_density(const F& f, const DensityOperator& rho0,
                                    const std::vector<double>& times, double step) {
  check_time_grid(times, step);
  DensityTrajectory trajectory;
  trajectory.times = times;
  trajectory.states.reserve(times.size());

  ComplexMatrix state = rho0.unnormalized();
  trajectory.states.push_back(DensityOperator::from_unnormalized(HermitianOperator(state),
                                                                 kTrajectoryTolerances));
  for (size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    const int substeps = std::max(1, static_cast<int>(std::ceil(gap / step - 1e-12)));
    const double h = gap / substeps;
    double t = times[i - 1];
    for (int s = 0; s < substeps; ++s) {
      state = rehermitize(rk4_step(f, t, state, h));
      t += h;
    }
    trajectory.states.push_back(DensityOperator::from_unnormalized(HermitianOperator(state),
                                                                   kTrajectoryTolerances));
  }
  return trajectory;
}

}  // namespace

Generator Generator::raw_k(TimeDependentMatrix k) {
  return Generator{Kind::RawK, std::move(k), {}};
}
Generator Generator::raw_k(const ComplexMatrix& k) {
  return raw_k([k](double) { return k; });
}
Generator Generator::hamiltonian(TimeDependentMatrix h) {
  return Generator{Kind::Hamiltonian, std::move(h), {}};
}
Generator Generator::hamiltonian(const ComplexMatrix& h) {
  return hamiltonian([h](double) { return h; });
}
Generator Generator::lindblad(TimeDependentMatrix h, std::vector<Jump> jumps) {
  return Generator{Kind::Lindblad, std::move(h), std::move(jumps)};
}
Generator Generator::lindblad(const ComplexMatrix& h, std::vector<Jump> jumps) {
  return lindblad([h](double) { return h; }, std::move(jumps));
}

DensityTrajectory evolve_liouville(const TimeDependentMatrix& k, const DensityOperator& rho0,
                                   const std::vector<double>& times, double step) {
  const auto f = [&k](double t, const ComplexMatrix& rho) {
    const ComplexMatrix kt = k(t);
    return kt * rho + rho * kt.adjoint();
  };
  return integrate_density(f, rho0, times, step);
}

PureTrajectory evolve_schrodinger(const TimeDependentMatrix& h, const StateVector& psi0,
                                  const std::vector<double>& times, double step) {
  check_time_grid(times, step);
  const auto f = [&h](double t, const ComplexMatrix& psi) {
    // HermitianOperator validates H(t) at every evaluation point.
    return kMinusI * (HermitianOperator(h(t)).matrix() * psi);
  };

  PureTrajectory trajectory;
  trajectory.times = times;

  ComplexMatrix psi = ComplexMatrix::column(psi0.psi());
  const auto record = [&trajectory](const ComplexMatrix& column) {
    cvector v(static_cast<size_t>(column.rows()));
    for (int r = 0; r < column.rows(); ++r) v[static_cast<size_t>(r)] = column(r, 0);
    trajectory.norms.push_back(norm(v));
    trajectory.states.push_back(StateVector::normalized(v));
  };
  record(psi);

  for (size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    const int substeps = std::max(1, static_cast<int>(std::ceil(gap / step - 1e-12)));
    const double h_sub = gap / substeps;
    double t = times[i - 1];
    for (int s = 0; s < substeps; ++s) {
      psi = rk4_step(f, t, psi, h_sub);
      t += h_sub;
    }
    record(psi);
  }
  return trajectory;
}

DensityTrajectory evolve_lindblad(const TimeDependentMatrix& h, const std::vector<Jump>& jumps,
                                  const DensityOperator& rho0, const std::vector<double>& times,
                                  double step) {
  for (const Jump& jump : jumps) {
    if (jump.rate < 0.0)
      throw ValidationError("evolve_lindblad: negative rate " + std::to_string(jump.rate));
    if (!jump.op.is_square() || jump.op.rows() != rho0.dim())
      throw ShapeError("evolve_lindblad: jump operator shape mismatch");
  }

  const auto f = [&](double t, const ComplexMatrix& rho) {
    const ComplexMatrix ht = HermitianOperator(h(t)).matrix();
    ComplexMatrix out = kMinusI * (ht * rho - rho * ht);
    for (const Jump& jump : jumps) {
      if (jump.rate == 0.0) continue;
      const ComplexMatrix ldag = jump.op.adjoint();
      const ComplexMatrix ldl = ldag * jump.op;
      out += cdouble(jump.rate) *
             (jump.op * rho * ldag - cdouble(0.5) * (ldl * rho + rho * ldl));
    }
    return out;
  };
  return integrate_density(f, rho0, times, step);
}

DensityTrajectory evolve(const Generator& generator, const DensityOperator& rho0,
                         const std::vector<double>& times, double step) {
  switch (generator.kind) {
    case Generator::Kind::RawK:
      return evolve_liouville(generator.matrix, rho0, times, step);
    case Generator::Kind::Hamiltonian: {
      const TimeDependentMatrix& h = generator.matrix;
      return evolve_liouville(
          [&h](double t) { return kMinusI * HermitianOperator(h(t)).matrix(); }, rho0, times,
          step);
    }
    case Generator::Kind::Lindblad:
      return evolve_lindblad(generator.matrix, generator.jumps, rho0, times, step);
  }
  throw ValidationError("evolve: unknown generator kind");
}

std::vector<double> spectral_lines(const HermitianOperator& h) {
  const EigenSystem es = eig_hermitian(h);
  std::vector<double> lines;
  const size_t d = es.eigenvalues.size();
  for (size_t j = 0; j < d; ++j)
    for (size_t k = 0; k < j; ++k) {
      const double omega = es.eigenvalues[j] - es.eigenvalues[k];
      if (omega > 1e-9) lines.push_back(omega);
    }
  std::sort(lines.begin(), lines.end());
  std::vector<double> unique;
  for (double omega : lines)
    if (unique.empty() || omega - unique.back() > 1e-9) unique.push_back(omega);
  return unique;
}

namespace {

HermitianOperator concentration_operator(const QuantityVector& x, const cvector& xi) {
  if (xi.size() != static_cast<size_t>(x.size()))
    throw ShapeError("spectrum: xi has " + std::to_string(xi.size()) + " entries for " +
                     std::to_string(x.size()) + " components");
  const int d = x.dim();
  ComplexMatrix b(d, d);
  for (int j = 0; j < x.size(); ++j) {
    const ComplexMatrix shifted =
        x.component(j) - ComplexMatrix::identity(d) * xi[static_cast<size_t>(j)];
    b += shifted.adjoint() * shifted;
  }
  return HermitianOperator(b);
}

}  // namespace

SpectrumMembership spectrum_membership(const QuantityVector& x, const cvector& xi, double tol) {
  SpectrumMembership result;
  result.min_value = min_eigenvalue(concentration_operator(x, xi));
  result.member = result.min_value <= tol;
  return result;
}

std::pair<StateVector, double> min_uncertainty_state(const QuantityVector& x, const cvector& xi) {
  const EigenSystem es = eig_hermitian(concentration_operator(x, xi));
  const int d = x.dim();
  cvector psi(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) psi[static_cast<size_t>(r)] = es.eigenvectors(r, 0);
  return {StateVector::normalized(psi), es.eigenvalues.front()};
}

}  // namespace povmlab
