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

// Release gate: one self-contained check per core guarantee, each printed as
// a single [PASS]/[FAIL] line with its runtime. Tolerances are pinned here
// on purpose; loosening one is a release decision, not a test edit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "povmlab/detector.hpp"
#include "povmlab/dynamics.hpp"
#include "povmlab/hermitian.hpp"
#include "povmlab/optics.hpp"
#include "povmlab/povm.hpp"
#include "povmlab/rng.hpp"
#include "povmlab/states.hpp"
#include "povmlab/tomography.hpp"
#include "povmlab/uncertainty.hpp"
#include "test_support.hpp"

using namespace povmlab;

namespace {

// ---------------------------------------------------------------------------
// shared builders

Povm pointer_povm() {
  ComplexMatrix low(2, 2), high(2, 2);
  low(0, 0) = 0.2;  low(0, 1) = -0.4;
  low(1, 0) = -0.4; low(1, 1) = 0.8;
  high(0, 0) = 0.8; high(0, 1) = 0.4;
  high(1, 0) = 0.4; high(1, 1) = 0.2;
  return Povm({{"low", HermitianOperator(low)}, {"high", HermitianOperator(high)}});
}

Detector random_detector(SplitMix64& rng, int d, int outcomes) {
  auto elements = testing::random_povm_elements(rng, d, outcomes);
  std::vector<std::pair<std::string, HermitianOperator>> labeled;
  std::vector<std::string> labels;
  std::vector<double> values;
  for (size_t k = 0; k < elements.size(); ++k) {
    labels.push_back(std::to_string(k));
    labeled.emplace_back(labels.back(), HermitianOperator(elements[k]));
    // Spaced offsets keep the readings pairwise distinct.
    values.push_back(static_cast<double>(k) + 0.6 * rng.next_double());
  }
  return Detector(Povm(std::move(labeled)), Scale::real_scalars(labels, values));
}

DensityOperator random_state(SplitMix64& rng, int d) {
  return DensityOperator(HermitianOperator(testing::random_density(rng, d)));
}

Povm six_outcome_povm() {
  std::vector<std::pair<std::string, HermitianOperator>> elements;
  const char* names[3][2] = {{"px", "mx"}, {"py", "my"}, {"pz", "mz"}};
  for (int k = 1; k <= 3; ++k) {
    for (int sign = 0; sign < 2; ++sign) {
      ComplexMatrix m = ComplexMatrix::identity(2);
      m += cdouble(sign == 0 ? 1.0 : -1.0, 0.0) * pauli(k);
      m *= cdouble(1.0 / 6.0, 0.0);
      elements.emplace_back(names[k - 1][sign], HermitianOperator(m));
    }
  }
  return Povm(elements);
}

std::vector<double> time_grid(double t_end, int samples) {
  std::vector<double> times;
  for (int i = 0; i <= samples; ++i)
    times.push_back(t_end * static_cast<double>(i) / samples);
  return times;
}

// ---------------------------------------------------------------------------
// criteria

// Two-outcome pointer reading (6.57, 6.58) at probabilities (0.2, 0.8):
// mean bit-exact, spread to 1e-12, operator eigenvalues to 1e-9.
bool worked_example(std::string& detail) {
  const Detector detector(pointer_povm(), Scale::real_scalars({"low", "high"}, {6.57, 6.58}));
  const DensityOperator state = pure_state(StateVector(cvector{1.0, 0.0}));

  const std::vector<double> p = response_probabilities(detector, state);
  if (std::abs(p[0] - 0.2) > 1e-12 || std::abs(p[1] - 0.8) > 1e-12) {
    detail = "response probabilities off (0.2, 0.8)";
    return false;
  }
  const cvector mean = statistical_expectation(detector, state);
  if (!(mean[0].real() == 6.578 && mean[0].imag() == 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "mean " << mean[0].real() << " is not exactly 6.578";
    detail = os.str();
    return false;
  }
  const double sigma_a = q_uncertainty(state, detector.quantity());
  if (std::abs(sigma_a - 0.004) > 1e-12) {
    detail = "sigma_A misses 0.004 by " + std::to_string(std::abs(sigma_a - 0.004));
    return false;
  }

  ComplexMatrix a(2, 2);
  a(0, 0) = 6.578; a(0, 1) = 0.004;
  a(1, 0) = 0.004; a(1, 1) = 6.572;
  const EigenSystem es = eig_hermitian(HermitianOperator(a));
  if (std::abs(es.eigenvalues[0] - 6.57) > 1e-9 ||
      std::abs(es.eigenvalues[1] - 6.58) > 1e-9) {
    detail = "eigenvalues are not {6.57, 6.58}";
    return false;
  }
  return true;
}

// E(a) = <A> exactly on 500 random pairs; sampled means at N=1e5 land within
// five standard errors in at least 99 of 100 seeded trials.
bool born_bridge(std::string& detail) {
  SplitMix64 rng(0xB0A2u);
  for (int rep = 0; rep < 500; ++rep) {
    const int d = 2 + rep % 3;
    const int outcomes = 2 + static_cast<int>(rng.next_u64() % 3);
    const Detector detector = random_detector(rng, d, outcomes);
    const DensityOperator state = random_state(rng, d);
    const cdouble lhs = statistical_expectation(detector, state)[0];
    const cdouble rhs = q_expectation(state, detector.quantity())[0];
    if (std::abs(lhs - rhs) > 1e-10) {
      detail = "pair " + std::to_string(rep) + ": |E(a) - <A>| = " +
               std::to_string(std::abs(lhs - rhs));
      return false;
    }
  }

  const std::uint64_t n = 100000;
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const Detector detector = random_detector(rng, d, 3);
    const DensityOperator state = random_state(rng, d);
    const SampleRecord record =
        sample(detector, state, n, static_cast<std::uint64_t>(trial));
    const EmpiricalStatistics stats = empirical_statistics(record, detector.scale());
    const double exact = statistical_expectation(detector, state)[0].real();
    const double se = stats.std_dev[0] / std::sqrt(static_cast<double>(n));
    if (std::abs(stats.mean[0].real() - exact) <= 5.0 * se) ++hits;
  }
  if (hits < 99) {
    detail = "only " + std::to_string(hits) + "/100 sampled means within 5 SE";
    return false;
  }
  return true;
}

// Statistical spread dominates the intrinsic one (1000 cases), matches it on
// projective detectors (100 cases), and the excess-noise operator stays PSD
// (200 weightings).
bool holevo_suite(std::string& detail) {
  SplitMix64 rng(0x401Eu);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 2 + rep % 3;
    const Detector detector = random_detector(rng, d, 2 + static_cast<int>(rng.next_u64() % 3));
    const HolevoGap gap = holevo_gap(detector, random_state(rng, d));
    if (gap.statistical < gap.theoretical - 1e-9) {
      detail = "case " + std::to_string(rep) + ": statistical term below sigma_A^2 by " +
               std::to_string(gap.theoretical - gap.statistical);
      return false;
    }
  }

  for (int rep = 0; rep < 100; ++rep) {
    const int d = 2 + rep % 3;
    ProjectiveDecomposition dec =
        projective_from_operator(HermitianOperator(testing::random_hermitian(rng, d)));
    const Detector detector(dec.povm, dec.scale);
    const HolevoGap gap = holevo_gap(detector, random_state(rng, d));
    if (std::abs(gap.gap()) > 1e-10) {
      detail = "projective case " + std::to_string(rep) + ": gap " +
               std::to_string(gap.gap());
      return false;
    }
  }

  for (int rep = 0; rep < 200; ++rep) {
    const int d = 2 + rep % 3;
    const Detector detector = random_detector(rng, d, 3);
    // Random PSD weight on the (scalar) value space.
    ComplexMatrix g(1, 1);
    const cdouble y(rng.next_normal(), rng.next_normal());
    g(0, 0) = std::norm(y);
    const double min_eig = min_eigenvalue(excess_noise_operator(detector, g));
    if (min_eig < -1e-9) {
      detail = "excess noise case " + std::to_string(rep) + ": min eigenvalue " +
               std::to_string(min_eig);
      return false;
    }
  }
  return true;
}

// sigma_A sigma_B >= |<[A,B]>|/2 on 1000 random triples; the sigma_1/sigma_2
// pair on a sigma_3 eigenstate achieves equality.
bool robertson(std::string& detail) {
  SplitMix64 rng(0x0B52u);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 2 + rep % 3;
    const RobertsonCheck check =
        robertson_check(random_state(rng, d),
                        HermitianOperator(testing::random_hermitian(rng, d)),
                        HermitianOperator(testing::random_hermitian(rng, d)));
    if (check.lhs < check.rhs - 1e-10) {
      detail = "triple " + std::to_string(rep) + ": lhs - rhs = " +
               std::to_string(check.lhs - check.rhs);
      return false;
    }
  }
  const RobertsonCheck equality =
      robertson_check(pure_state(StateVector(cvector{1.0, 0.0})),
                      HermitianOperator(pauli(1)), HermitianOperator(pauli(2)));
  if (std::abs(equality.lhs - equality.rhs) > 1e-10) {
    detail = "constructed case misses equality by " +
             std::to_string(std::abs(equality.lhs - equality.rhs));
    return false;
  }
  return true;
}

// Exact-data recovery at d in {2,3,4} (states) and for 3-outcome qubit
// detectors; sampled data at N=1e6 recovers to 5e-3 in at least 48/50 seeds.
bool tomography_round_trips(std::string& detail) {
  SplitMix64 rng(0x7040u);
  for (int d = 2; d <= 4; ++d) {
    for (int rep = 0; rep < 3; ++rep) {
      auto elements = testing::random_povm_elements(rng, d, d * d + 2);
      std::vector<std::pair<std::string, HermitianOperator>> labeled;
      for (size_t k = 0; k < elements.size(); ++k)
        labeled.emplace_back(std::to_string(k), HermitianOperator(elements[k]));
      const Povm povm(std::move(labeled));
      const DensityOperator truth = random_state(rng, d);
      const StateTomographyResult result =
          state_tomography(povm, response_probabilities(povm, truth));
      const double error = frobenius_distance(result.state.matrix(), truth.matrix());
      if (error > 1e-7) {
        detail = "state d=" + std::to_string(d) + ": error " + std::to_string(error);
        return false;
      }
    }
  }

  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<cvector> kets = {
      {1.0, 0.0}, {0.0, 1.0}, {s, s}, {s, cdouble(0.0, 1.0) * s}};
  std::vector<DensityOperator> calibration;
  for (const cvector& ket : kets) calibration.push_back(pure_state(StateVector(ket)));
  for (int rep = 0; rep < 5; ++rep) {
    auto elements = testing::random_povm_elements(rng, 2, 3);
    std::vector<std::pair<std::string, HermitianOperator>> labeled;
    std::vector<std::string> labels;
    for (size_t k = 0; k < elements.size(); ++k) {
      labels.push_back(std::to_string(k));
      labeled.emplace_back(labels.back(), HermitianOperator(elements[k]));
    }
    const Povm truth(std::move(labeled));
    std::vector<std::vector<double>> frequencies;
    for (const DensityOperator& state : calibration)
      frequencies.push_back(response_probabilities(truth, state));
    const DetectorTomographyResult result =
        detector_tomography(calibration, labels, frequencies);
    for (int k = 0; k < truth.size(); ++k) {
      const double error = frobenius_distance(result.povm.element(k).matrix(),
                                              truth.element(k).matrix());
      if (error > 1e-6) {
        detail = "detector rep " + std::to_string(rep) + " element " +
                 std::to_string(k) + ": error " + std::to_string(error);
        return false;
      }
    }
  }

  const Povm povm = six_outcome_povm();
  std::vector<std::string> labels = povm.labels();
  std::vector<double> readings;
  for (size_t k = 0; k < labels.size(); ++k) readings.push_back(static_cast<double>(k));
  const Detector detector(povm, Scale::real_scalars(labels, readings));
  int hits = 0;
  for (int seed = 0; seed < 50; ++seed) {
    SplitMix64 seed_rng(static_cast<std::uint64_t>(seed) + 1);
    const DensityOperator truth = random_state(seed_rng, 2);
    const SampleRecord record =
        sample(detector, truth, 1000000, static_cast<std::uint64_t>(seed));
    std::vector<double> frequencies;
    for (const auto& [label, count] : record.counts)
      frequencies.push_back(static_cast<double>(count) /
                            static_cast<double>(record.total));
    const StateTomographyResult result = state_tomography(povm, frequencies);
    if (frobenius_distance(result.state.matrix(), truth.matrix()) <= 5e-3) ++hits;
  }
  if (hits < 48) {
    detail = "sampled recovery hit 5e-3 in only " + std::to_string(hits) + "/50 seeds";
    return false;
  }
  return true;
}

// Precession law, pure-state consistency of the two integrators, amplitude
// damping decay, and trace/norm conservation per unit time.
bool dynamics_suite(std::string& detail) {
  const std::vector<double> times = time_grid(1.0, 10);
  const double dt = 1e-3;
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector plus(cvector{s, s});

  const DensityTrajectory precession =
      evolve(Generator::hamiltonian(pauli(3)), pure_state(plus), times, dt);
  for (size_t i = 0; i < times.size(); ++i) {
    const double x1 = q_expectation(precession.states[i], pauli(1)).real();
    if (std::abs(x1 - std::cos(2.0 * times[i])) > 1e-6) {
      detail = "precession at t=" + std::to_string(times[i]);
      return false;
    }
    if (std::abs(precession.states[i].intensity() - 1.0) > 1e-8) {
      detail = "trace drift above 1e-8 per unit time";
      return false;
    }
  }

  SplitMix64 rng(0xD74Au);
  const ComplexMatrix h = testing::random_hermitian(rng, 2);
  const StateVector psi0(testing::random_unit_vector(rng, 2));
  const auto h_of_t = [h](double) { return h; };
  const PureTrajectory pure = evolve_schrodinger(h_of_t, psi0, times, dt);
  const DensityTrajectory mixed =
      evolve(Generator::hamiltonian(h), pure_state(psi0), times, dt);
  for (size_t i = 0; i < times.size(); ++i) {
    const ComplexMatrix projector =
        ComplexMatrix::outer(pure.states[i].psi(), pure.states[i].psi());
    if (frobenius_distance(projector, mixed.states[i].matrix()) > 1e-6) {
      detail = "integrators disagree at t=" + std::to_string(times[i]);
      return false;
    }
    if (std::abs(pure.norms[i] - 1.0) > 1e-8) {
      detail = "state norm drift above 1e-8 per unit time";
      return false;
    }
  }

  const double gamma = 1.3;
  ComplexMatrix lower(2, 2);
  lower(0, 1) = 1.0;
  const DensityTrajectory damped =
      evolve(Generator::lindblad(ComplexMatrix(2, 2), {{lower, gamma}}),
             pure_state(plus), times, dt);
  for (size_t i = 0; i < times.size(); ++i) {
    const ComplexMatrix rho = damped.states[i].matrix();
    const double t = times[i];
    if (std::abs(rho(1, 1).real() - 0.5 * std::exp(-gamma * t)) > 1e-6 ||
        std::abs(rho(0, 1).real() - 0.5 * std::exp(-0.5 * gamma * t)) > 1e-6) {
      detail = "amplitude damping misses exp(-gamma t) at t=" + std::to_string(t);
      return false;
    }
    if (std::abs(damped.states[i].intensity() - 1.0) > 1e-8) {
      detail = "Lindblad trace drift above 1e-8 per unit time";
      return false;
    }
  }
  return true;
}

// Every eigenvalue is in the joint spectrum, every spectral-gap midpoint is
// excluded at the (gap/2)^2 level, and the minimizing state achieves the
// reported minimum.
bool spectrum_theorem(std::string& detail) {
  SplitMix64 rng(0x53ECu);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 7;
    const HermitianOperator x(testing::random_hermitian(rng, d));
    const QuantityVector quantity = QuantityVector::scalar(x);
    const EigenSystem es = eig_hermitian(x);

    for (double lambda : es.eigenvalues) {
      const SpectrumMembership membership =
          spectrum_membership(quantity, cvector{cdouble(lambda, 0.0)});
      if (!membership.member || membership.min_value > 1e-10) {
        detail = "eigenvalue rejected at rep " + std::to_string(rep);
        return false;
      }
    }

    for (size_t i = 0; i + 1 < es.eigenvalues.size(); ++i) {
      const double gap = es.eigenvalues[i + 1] - es.eigenvalues[i];
      if (gap < 1e-3) continue;  // rounding would swamp the bound
      const double mid = 0.5 * (es.eigenvalues[i] + es.eigenvalues[i + 1]);
      const SpectrumMembership membership =
          spectrum_membership(quantity, cvector{cdouble(mid, 0.0)});
      if (membership.member || membership.min_value < 0.25 * gap * gap - 1e-9) {
        detail = "gap midpoint admitted at rep " + std::to_string(rep);
        return false;
      }

      const auto [state, value] = min_uncertainty_state(quantity, cvector{cdouble(mid, 0.0)});
      ComplexMatrix shifted = x.matrix();
      shifted -= mid * ComplexMatrix::identity(d);
      const ComplexMatrix b = shifted.adjoint() * shifted;
      const double achieved = q_expectation(pure_state(state), b).real();
      if (std::abs(value - membership.min_value) > 1e-9 ||
          std::abs(achieved - membership.min_value) > 1e-9) {
        detail = "minimizing state misses the reported minimum at rep " +
                 std::to_string(rep);
        return false;
      }
    }
  }
  return true;
}

// Stokes/coherence round-trip, Malus vs the polarizer effect's response
// probability, and the Jones/Mueller commutation square.
bool optics_suite(std::string& detail) {
  SplitMix64 rng(0x0071c5u);
  for (int rep = 0; rep < 500; ++rep) {
    double dir[3] = {rng.next_normal(), rng.next_normal(), rng.next_normal()};
    const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const double s0 = 0.1 + 2.0 * rng.next_double();
    const double p = rng.next_double();
    const double scale = norm > 0.0 ? p * s0 / norm : 0.0;
    const StokesVector in(s0, scale * dir[0], scale * dir[1], scale * dir[2]);
    const StokesVector out = coherence_to_stokes(stokes_to_coherence(in));
    if (std::abs(out.s0 - in.s0) > 1e-10 || std::abs(out.s1 - in.s1) > 1e-10 ||
        std::abs(out.s2 - in.s2) > 1e-10 || std::abs(out.s3 - in.s3) > 1e-10) {
      detail = "Stokes round-trip drift at rep " + std::to_string(rep);
      return false;
    }
  }

  for (int rep = 0; rep < 200; ++rep) {
    const StateVector phi(testing::random_unit_vector(rng, 2));
    const StateVector psi(testing::random_unit_vector(rng, 2));
    const ComplexMatrix projector = ComplexMatrix::outer(phi.psi(), phi.psi());
    const Povm polarizer(
        {{"pass", HermitianOperator(projector)},
         {"block", HermitianOperator(ComplexMatrix::identity(2) - projector)}});
    const double response =
        response_probabilities(polarizer, pure_state(psi))
            [static_cast<size_t>(polarizer.index_of("pass"))];
    if (std::abs(response - malus(phi, psi)) > 1e-12) {
      detail = "Malus mismatch at rep " + std::to_string(rep);
      return false;
    }
  }

  for (int rep = 0; rep < 200; ++rep) {
    ComplexMatrix t(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t(i, j) = cdouble(rng.next_normal(), rng.next_normal());
    const DensityOperator beam(HermitianOperator(testing::random_density(rng, 2)),
                               0.5 + rng.next_double());
    const JonesResult out = apply_jones(t, beam);
    if (out.absorbed) continue;
    const StokesVector via_jones = coherence_to_stokes(*out.state);
    const StokesVector via_mueller =
        apply_mueller(mueller_from_jones(t), coherence_to_stokes(beam));
    if (std::abs(via_jones.s0 - via_mueller.s0) > 1e-9 ||
        std::abs(via_jones.s1 - via_mueller.s1) > 1e-9 ||
        std::abs(via_jones.s2 - via_mueller.s2) > 1e-9 ||
        std::abs(via_jones.s3 - via_mueller.s3) > 1e-9) {
      detail = "Jones/Mueller square does not commute at rep " + std::to_string(rep);
      return false;
    }
  }
  return true;
}

struct Criterion {
  const char* name;
  bool (*check)(std::string&);
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"worked pointer example: exact mean, spread, eigenvalues", worked_example, 1.0},
      {"Born bridge: E(a) = <A> and sampled means within 5 SE", born_bridge, 30.0},
      {"spread dominance: statistical >= intrinsic, projective equality, PSD excess",
       holevo_suite, 30.0},
      {"Robertson bound on 1000 triples with constructed equality", robertson, 30.0},
      {"tomography round-trips: exact and sampled recovery", tomography_round_trips, 120.0},
      {"dynamics: precession, integrator consistency, damping, conservation",
       dynamics_suite, 30.0},
      {"spectrum: eigenvalues admitted, gap midpoints excluded", spectrum_theorem, 30.0},
      {"optics: Stokes round-trip, Malus bridge, Mueller square", optics_suite, 30.0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      ok = false;
      detail = (detail.empty() ? "" : detail + "; ") + std::string("over time budget of ") +
               std::to_string(criterion.budget_seconds) + "s";
    }
    if (ok) {
      std::printf("[PASS] %s (%.2fs)\n", criterion.name, seconds);
    } else {
      std::printf("[FAIL] %s (%.2fs): %s\n", criterion.name, seconds, detail.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
