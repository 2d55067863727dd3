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

#include "povmlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "povmlab/detector.hpp"
#include "povmlab/dynamics.hpp"
#include "povmlab/errors.hpp"
#include "povmlab/json_io.hpp"
#include "povmlab/optics.hpp"
#include "povmlab/rng.hpp"
#include "povmlab/tomography.hpp"
#include "povmlab/uncertainty.hpp"

namespace povmlab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kSampleChunk = 1 << 16;

// ---------------------------------------------------------------------------
// input plumbing

struct InputFile {
  std::string role;
  std::string path;
  std::string hash;
  json parsed;
};

InputFile load_input(const std::string& path, const char* role) {
  if (path.empty())
    throw SchemaError(std::string("--") + role + ": required input file missing");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SchemaError(std::string(role) + ": cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << f.rdbuf();
  InputFile in;
  in.role = role;
  in.path = path;
  in.hash = fnv1a64_hex(buf.str());
  try {
    in.parsed = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return in;
}

json config_echo(const RunConfig& cfg, const std::vector<InputFile>& inputs) {
  json c;
  c["subcommand"] = cfg.subcommand;
  c["seed"] = cfg.seed;
  c["format"] = cfg.format;
  c["jobs"] = cfg.jobs;
  if (cfg.n > 0) c["n"] = cfg.n;
  if (cfg.tol_set) c["tol"] = cfg.tol;
  if (cfg.subcommand == "evolve") {
    c["t_end"] = cfg.t_end;
    c["dt"] = cfg.dt;
    c["samples"] = cfg.samples;
  }
  json ins = json::object();
  for (const InputFile& in : inputs)
    ins[in.role] = {{"path", in.path}, {"fnv1a64", in.hash}};
  c["inputs"] = std::move(ins);
  return c;
}

json artifact_skeleton(const char* kind, const RunConfig& cfg,
                       const std::vector<InputFile>& inputs) {
  json out;
  out["schema"] = std::string("povmlab/") + kind + "@1";
  out["config"] = config_echo(cfg, inputs);
  out["seed"] = cfg.seed;
  return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write output file \"" + cfg.out_path + "\"");
  f << text;
}

void require_json_format(const RunConfig& cfg) {
  if (cfg.format != "json")
    throw SchemaError("--format csv is not available for " + cfg.subcommand +
                      "; this subcommand emits json only");
}

// 17 significant digits, '.' separator, no locale involvement.
std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_complex(cdouble z) {
  if (z.imag() == 0.0) return csv_number(z.real());
  return csv_number(z.real()) + (z.imag() < 0 ? "-" : "+") +
         csv_number(std::abs(z.imag())) + "i";
}

std::string csv_scale_value(const cvector& a) {
  std::string out;
  for (size_t j = 0; j < a.size(); ++j) {
    if (j > 0) out += ';';
    out += csv_complex(a[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// sampling across jobs

// Trials are split into fixed-size chunks, chunk c drawn from the seed's
// substream c. Output is therefore a function of (seed, n) alone, never of
// the worker count.
SampleRecord sample_chunked(const Detector& detector, const DensityOperator& state,
                            std::uint64_t n, std::uint64_t seed, int jobs) {
  if (n == 0) throw SchemaError("simulate: --n must be at least 1");
  const std::vector<double> p = response_probabilities(detector, state);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;

  const std::uint64_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(std::max(jobs, 1), chunks));
  const SplitMix64 root(seed);

  std::vector<std::vector<std::uint64_t>> partial(
      static_cast<size_t>(workers), std::vector<std::uint64_t>(p.size(), 0));
  std::atomic<std::uint64_t> next_chunk{0};

  auto worker = [&](int w) {
    std::vector<std::uint64_t>& counts = partial[static_cast<size_t>(w)];
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) break;
      SplitMix64 rng = root.stream(c);
      const std::uint64_t begin = c * kSampleChunk;
      const std::uint64_t events = std::min(kSampleChunk, n - begin);
      for (std::uint64_t i = 0; i < events; ++i) {
        const double u = rng.next_double();
        const size_t k = static_cast<size_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++counts[std::min(k, p.size() - 1)];
      }
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (std::thread& t : pool) t.join();
  }

  SampleRecord record;
  record.total = n;
  record.seed = seed;
  for (size_t k = 0; k < p.size(); ++k) {
    std::uint64_t total_k = 0;
    for (const auto& counts : partial) total_k += counts[k];
    record.counts.emplace_back(detector.povm().label(static_cast<int>(k)), total_k);
  }
  return record;
}

// ---------------------------------------------------------------------------
// subcommands

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.povm_path, "povm"));
  inputs.push_back(load_input(cfg.scale_path, "scale"));
  inputs.push_back(load_input(cfg.state_path, "state"));
  const Povm povm = povm_from_json(inputs[0].parsed, "povm");
  const Scale scale = scale_from_json(inputs[1].parsed, "scale");
  const DensityOperator state = state_from_json(inputs[2].parsed, "state");

  std::optional<QuantityVector> target;
  if (!cfg.target_x_path.empty()) {
    inputs.push_back(load_input(cfg.target_x_path, "target_x"));
    target = quantity_from_json(inputs.back().parsed, "target_x");
  }

  Detector detector = [&] {
    try {
      return Detector(povm, scale);
    } catch (const Error& e) {
      throw SchemaError(std::string("povm/scale: ") + e.what());
    }
  }();

  const std::vector<double> p = response_probabilities(detector, state);
  const SampleRecord record = sample_chunked(detector, state, cfg.n, cfg.seed, cfg.jobs);
  const EmpiricalStatistics stats = empirical_statistics(record, detector.scale());
  const cvector exact_mean = statistical_expectation(detector, state);

  if (cfg.format == "csv") {
    std::string text = "label,a,p,count,frequency\n";
    for (int k = 0; k < detector.size(); ++k) {
      const size_t ks = static_cast<size_t>(k);
      text += detector.povm().label(k) + "," +
              csv_scale_value(detector.scale().value(k)) + "," +
              csv_number(p[ks]) + "," + std::to_string(record.counts[ks].second) +
              "," + csv_number(stats.frequencies[ks]) + "\n";
    }
    emit(cfg, text, out);
    return 0;
  }

  json artifact = artifact_skeleton("simulate", cfg, inputs);
  json probabilities = json::object();
  json counts = json::object();
  json frequencies = json::object();
  for (int k = 0; k < detector.size(); ++k) {
    const size_t ks = static_cast<size_t>(k);
    const std::string& label = detector.povm().label(k);
    probabilities[label] = p[ks];
    counts[label] = record.counts[ks].second;
    frequencies[label] = stats.frequencies[ks];
  }
  artifact["probabilities"] = std::move(probabilities);
  artifact["counts"] = std::move(counts);
  artifact["frequencies"] = std::move(frequencies);
  artifact["mean"] = cvector_to_json(stats.mean);
  artifact["std"] = stats.std_dev;
  artifact["statistical_mean"] = cvector_to_json(exact_mean);

  if (target.has_value()) {
    const UncertaintyReport report = error_report(detector, state, *target);
    artifact["uncertainty"] = {
        {"e_term", report.e_term},     {"sigma_x", report.sigma_x},
        {"sigma_a", report.sigma_a},   {"bias", report.bias},
        {"rmse", report.rmse},         {"delta_x", report.delta_x}};
  }

  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int run_check_povm(const RunConfig& cfg, std::ostream& out) {
  require_json_format(cfg);
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.povm_path, "povm"));
  const json& doc = inputs[0].parsed;

  // Parse the layout by hand: invalid physics must land in the report, not
  // in an exception.
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("elements"))
    throw SchemaError("povm: expected {\"dim\", \"elements\"}");
  const int d = doc["dim"].is_number_integer() ? doc["dim"].get<int>() : 0;
  if (d <= 0) throw SchemaError("povm.dim: expected a positive integer");
  if (!doc["elements"].is_array() || doc["elements"].empty())
    throw SchemaError("povm.elements: expected a nonempty array");
  std::vector<std::pair<std::string, ComplexMatrix>> candidate;
  for (size_t k = 0; k < doc["elements"].size(); ++k) {
    const std::string e_where = "povm.elements[" + std::to_string(k) + "]";
    const json& e = doc["elements"][k];
    if (!e.is_object() || !e.contains("label") || !e["label"].is_string())
      throw SchemaError(e_where + ".label: expected a string");
    const ComplexMatrix m = matrix_from_json(
        e.contains("matrix") ? e["matrix"] : json(), e_where + ".matrix");
    if (m.rows() != d || m.cols() != d)
      throw SchemaError(e_where + ".matrix: expected " + std::to_string(d) + "x" +
                        std::to_string(d));
    candidate.emplace_back(e["label"].get<std::string>(), m);
  }

  PovmTolerances tol;
  if (cfg.tol_set) tol.completeness = cfg.tol;
  const PovmValidationReport report = validate_povm(candidate, tol);

  json artifact = artifact_skeleton("check-povm", cfg, inputs);
  artifact["valid"] = report.valid;
  artifact["completeness_defect"] = report.completeness_defect;
  json elements = json::array();
  for (const auto& e : report.elements) {
    elements.push_back({{"label", e.label},
                        {"hermiticity_defect", e.hermiticity_defect},
                        {"min_eigenvalue", e.min_eigenvalue},
                        {"norm", e.norm}});
  }
  artifact["elements"] = std::move(elements);

  if (report.valid) {
    std::vector<std::pair<std::string, HermitianOperator>> hermitian;
    for (const auto& [label, m] : candidate) hermitian.emplace_back(label, HermitianOperator(m));
    const Povm povm(hermitian);
    const IcReport ic = informational_completeness(povm);
    artifact["projective"] = is_projective(povm);
    artifact["ic"] = {{"complete", ic.complete},
                      {"spanned_dimension", ic.spanned_dimension},
                      {"minimal", ic.minimal}};
  } else {
    artifact["projective"] = nullptr;
    artifact["ic"] = nullptr;
  }

  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

TomographyOptions tomography_options(const RunConfig& cfg) {
  TomographyOptions options;
  if (cfg.tol_set) options.objective_tolerance = cfg.tol;
  return options;
}

int run_tomo_state(const RunConfig& cfg, std::ostream& out) {
  require_json_format(cfg);
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.input_path, "input"));
  const json& doc = inputs[0].parsed;
  const Povm povm = povm_from_json(
      doc.is_object() && doc.contains("povm") ? doc["povm"] : json(), "input.povm");

  if (!doc.contains("frequencies"))
    throw SchemaError("input.frequencies: missing");
  const json& freq = doc["frequencies"];
  std::vector<double> frequencies(static_cast<size_t>(povm.size()), 0.0);
  if (freq.is_array()) {
    if (static_cast<int>(freq.size()) != povm.size())
      throw SchemaError("input.frequencies: expected " + std::to_string(povm.size()) +
                        " entries");
    for (size_t k = 0; k < freq.size(); ++k) {
      if (!freq[k].is_number())
        throw SchemaError("input.frequencies[" + std::to_string(k) +
                          "]: expected a number");
      frequencies[k] = freq[k].get<double>();
    }
  } else if (freq.is_object()) {
    for (const auto& [label, value] : freq.items()) {
      const int k = povm.index_of(label);
      if (k < 0)
        throw SchemaError("input.frequencies: label \"" + label +
                          "\" is not a POVM outcome");
      if (!value.is_number())
        throw SchemaError("input.frequencies[\"" + label + "\"]: expected a number");
      frequencies[static_cast<size_t>(k)] = value.get<double>();
    }
    if (freq.size() != static_cast<size_t>(povm.size()))
      throw SchemaError("input.frequencies: expected one entry per outcome");
  } else {
    throw SchemaError("input.frequencies: expected an array or label-keyed object");
  }

  const StateTomographyResult result =
      state_tomography(povm, frequencies, tomography_options(cfg));

  json artifact = artifact_skeleton("tomo-state", cfg, inputs);
  artifact["state"] = state_to_json(result.state);
  artifact["residual"] = result.residual;
  artifact["iterations"] = result.iterations;
  artifact["non_unique"] = result.non_unique;
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int run_tomo_detector(const RunConfig& cfg, std::ostream& out) {
  require_json_format(cfg);
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.input_path, "input"));
  const json& doc = inputs[0].parsed;
  if (!doc.is_object() || !doc.contains("states") || !doc.contains("labels") ||
      !doc.contains("frequencies"))
    throw SchemaError("input: expected {\"states\", \"labels\", \"frequencies\"}");

  if (!doc["states"].is_array() || doc["states"].empty())
    throw SchemaError("input.states: expected a nonempty array");
  std::vector<DensityOperator> states;
  for (size_t s = 0; s < doc["states"].size(); ++s)
    states.push_back(
        state_from_json(doc["states"][s], "input.states[" + std::to_string(s) + "]"));

  if (!doc["labels"].is_array() || doc["labels"].empty())
    throw SchemaError("input.labels: expected a nonempty array of strings");
  std::vector<std::string> labels;
  for (size_t k = 0; k < doc["labels"].size(); ++k) {
    if (!doc["labels"][k].is_string())
      throw SchemaError("input.labels[" + std::to_string(k) + "]: expected a string");
    labels.push_back(doc["labels"][k].get<std::string>());
  }

  if (!doc["frequencies"].is_array() || doc["frequencies"].size() != states.size())
    throw SchemaError("input.frequencies: expected one row per state");
  std::vector<std::vector<double>> frequencies;
  for (size_t s = 0; s < doc["frequencies"].size(); ++s) {
    const json& row = doc["frequencies"][s];
    const std::string row_where = "input.frequencies[" + std::to_string(s) + "]";
    if (!row.is_array() || row.size() != labels.size())
      throw SchemaError(row_where + ": expected " + std::to_string(labels.size()) +
                        " entries");
    std::vector<double> parsed;
    for (size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number())
        throw SchemaError(row_where + "[" + std::to_string(k) + "]: expected a number");
      parsed.push_back(row[k].get<double>());
    }
    frequencies.push_back(std::move(parsed));
  }

  const DetectorTomographyResult result =
      detector_tomography(states, labels, frequencies, tomography_options(cfg));

  json artifact = artifact_skeleton("tomo-detector", cfg, inputs);
  artifact["povm"] = povm_to_json(result.povm);
  artifact["residual"] = result.residual;
  artifact["iterations"] = result.iterations;
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int run_evolve(const RunConfig& cfg, std::ostream& out) {
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.input_path, "input"));
  inputs.push_back(load_input(cfg.state_path, "state"));
  const Generator generator = generator_from_json(inputs[0].parsed, "input");
  const DensityOperator rho0 = state_from_json(inputs[1].parsed, "state");

  std::optional<QuantityVector> x;
  if (!cfg.target_x_path.empty()) {
    inputs.push_back(load_input(cfg.target_x_path, "target_x"));
    x = quantity_from_json(inputs.back().parsed, "target_x");
  }

  if (cfg.samples < 1) throw SchemaError("evolve: --samples must be at least 1");
  if (!(cfg.t_end > 0.0)) throw SchemaError("evolve: --t-end must be positive");
  if (!(cfg.dt > 0.0)) throw SchemaError("evolve: --dt must be positive");
  std::vector<double> times;
  times.reserve(static_cast<size_t>(cfg.samples) + 1);
  for (int i = 0; i <= cfg.samples; ++i)
    times.push_back(cfg.t_end * static_cast<double>(i) / cfg.samples);

  const DensityTrajectory trajectory = evolve(generator, rho0, times, cfg.dt);

  std::vector<cvector> expectations;
  if (x.has_value()) {
    expectations.reserve(trajectory.states.size());
    for (const DensityOperator& state : trajectory.states)
      expectations.push_back(q_expectation(state, *x));
  }

  if (cfg.format == "csv") {
    std::string text = "time,intensity";
    if (x.has_value()) {
      for (int j = 0; j < x->size(); ++j) {
        text += ",x" + std::to_string(j) + "_re";
        text += ",x" + std::to_string(j) + "_im";
      }
    }
    text += "\n";
    for (size_t i = 0; i < trajectory.times.size(); ++i) {
      text += csv_number(trajectory.times[i]) + "," +
              csv_number(trajectory.states[i].intensity());
      if (x.has_value()) {
        for (const cdouble& z : expectations[i]) {
          text += "," + csv_number(z.real());
          text += "," + csv_number(z.imag());
        }
      }
      text += "\n";
    }
    emit(cfg, text, out);
    return 0;
  }

  json artifact = artifact_skeleton("evolve", cfg, inputs);
  artifact["times"] = trajectory.times;
  json intensities = json::array();
  for (const DensityOperator& state : trajectory.states)
    intensities.push_back(state.intensity());
  artifact["intensities"] = std::move(intensities);
  if (x.has_value()) {
    json exp_rows = json::array();
    for (const cvector& row : expectations) exp_rows.push_back(cvector_to_json(row));
    artifact["expectations"] = std::move(exp_rows);
  }
  artifact["final_state"] = state_to_json(trajectory.states.back());
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int run_optics(const RunConfig& cfg, std::ostream& out) {
  require_json_format(cfg);
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.input_path, "input"));
  const json& doc = inputs[0].parsed;
  if (!doc.is_object() || !doc.contains("stokes"))
    throw SchemaError("input: expected {\"stokes\", \"pipeline\"}");
  const StokesVector input_stokes = stokes_from_json(doc["stokes"], "input.stokes");

  std::vector<ComplexMatrix> pipeline;
  if (doc.contains("pipeline")) {
    if (!doc["pipeline"].is_array())
      throw SchemaError("input.pipeline: expected an array of Jones matrices");
    for (size_t i = 0; i < doc["pipeline"].size(); ++i) {
      const ComplexMatrix t = matrix_from_json(
          doc["pipeline"][i], "input.pipeline[" + std::to_string(i) + "]");
      if (t.rows() != 2 || t.cols() != 2)
        throw SchemaError("input.pipeline[" + std::to_string(i) + "]: expected 2x2");
      pipeline.push_back(t);
    }
  }

  json artifact = artifact_skeleton("optics", cfg, inputs);
  artifact["input_stokes"] = stokes_to_json(input_stokes);

  // Composite instrument matrix: stage i is applied after stages < i.
  ComplexMatrix composite = ComplexMatrix::identity(2);
  for (const ComplexMatrix& t : pipeline) composite = t * composite;
  const MuellerMatrix mueller = mueller_from_jones(composite);
  json mueller_rows = json::array();
  for (const auto& row : mueller)
    mueller_rows.push_back(json::array({row[0], row[1], row[2], row[3]}));
  artifact["mueller"] = std::move(mueller_rows);

  DensityOperator beam = stokes_to_coherence(input_stokes);
  json stages = json::array();
  bool absorbed = false;
  std::size_t absorbed_at = 0;
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    const JonesResult step = apply_jones(pipeline[i], beam);
    if (step.absorbed) {
      absorbed = true;
      absorbed_at = i;
      break;
    }
    beam = *step.state;
    stages.push_back(stokes_to_json(coherence_to_stokes(beam)));
  }
  artifact["stages"] = std::move(stages);
  artifact["absorbed"] = absorbed;
  if (absorbed) {
    artifact["absorbed_at"] = absorbed_at;
    artifact["output_stokes"] = nullptr;
    artifact["intensity"] = 0.0;
    artifact["degree_of_polarization"] = nullptr;
  } else {
    const StokesVector out_stokes = coherence_to_stokes(beam);
    artifact["absorbed_at"] = nullptr;
    artifact["output_stokes"] = stokes_to_json(out_stokes);
    artifact["intensity"] = beam.intensity();
    artifact["degree_of_polarization"] = degree_of_polarization(out_stokes);
  }

  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int run_spectrum(const RunConfig& cfg, std::ostream& out) {
  require_json_format(cfg);
  std::vector<InputFile> inputs;
  inputs.push_back(load_input(cfg.input_path, "input"));
  const json& doc = inputs[0].parsed;
  if (!doc.is_object()) throw SchemaError("input: expected an object");

  QuantityVector x = [&] {
    if (doc.contains("x")) return quantity_from_json(doc["x"], "input.x");
    if (doc.contains("components")) return quantity_from_json(doc, "input");
    throw SchemaError("input: expected \"x\" or \"components\"");
  }();

  if (!doc.contains("xi")) throw SchemaError("input.xi: missing");
  const json& xi_doc = doc["xi"];
  cvector xi;
  if (xi_doc.is_number()) {
    xi.push_back(cdouble(xi_doc.get<double>(), 0.0));
  } else if (xi_doc.is_array()) {
    for (size_t j = 0; j < xi_doc.size(); ++j) {
      const std::string w = "input.xi[" + std::to_string(j) + "]";
      xi.push_back(xi_doc[j].is_number() ? cdouble(xi_doc[j].get<double>(), 0.0)
                                         : complex_from_json(xi_doc[j], w));
    }
  } else {
    throw SchemaError("input.xi: expected a number or an array");
  }
  if (static_cast<int>(xi.size()) != x.size())
    throw SchemaError("input.xi: expected " + std::to_string(x.size()) +
                      " entries to match the components");

  const double tol = cfg.tol_set ? cfg.tol : 1e-9;
  const SpectrumMembership membership = spectrum_membership(x, xi, tol);
  const auto [state, achieved] = min_uncertainty_state(x, xi);

  json artifact = artifact_skeleton("spectrum", cfg, inputs);
  artifact["member"] = membership.member;
  artifact["min_value"] = membership.min_value;
  artifact["achieved"] = achieved;
  artifact["state"] = {{"psi", cvector_to_json(state.psi())}};
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

// ---------------------------------------------------------------------------
// validation of emitted artifacts

void require(bool ok, const std::string& what) {
  if (!ok) throw SchemaError("artifact: " + what);
}

void check_common(const json& a) {
  require(a.is_object(), "expected an object");
  require(a.contains("schema") && a["schema"].is_string(), "missing schema string");
  require(a.contains("seed") && a["seed"].is_number_unsigned(), "missing seed");
  require(a.contains("config") && a["config"].is_object(), "missing config echo");
  const json& c = a["config"];
  require(c.contains("subcommand") && c["subcommand"].is_string(),
          "config.subcommand missing");
  require(c.contains("seed") && c["seed"] == a["seed"],
          "config.seed must match the top-level seed");
  require(c.contains("inputs") && c["inputs"].is_object(), "config.inputs missing");
  for (const auto& [role, in] : c["inputs"].items()) {
    require(in.is_object() && in.contains("path") && in.contains("fnv1a64"),
            "config.inputs." + role + " needs path and fnv1a64");
    const std::string h = in["fnv1a64"].get<std::string>();
    require(h.size() == 18 && h.rfind("0x", 0) == 0, "malformed hash for " + role);
  }
}

void check_label_map(const json& a, const char* key, bool number_valued) {
  require(a.contains(key) && a[key].is_object(), std::string(key) + " missing");
  for (const auto& [label, value] : a[key].items()) {
    (void)label;
    if (number_valued)
      require(value.is_number(), std::string(key) + " values must be numbers");
    else
      require(value.is_number_unsigned(), std::string(key) + " values must be counts");
  }
}

void validate_simulate(const json& a) {
  check_label_map(a, "probabilities", true);
  check_label_map(a, "counts", false);
  check_label_map(a, "frequencies", true);
  double p_sum = 0.0;
  for (const auto& [label, value] : a["probabilities"].items()) {
    (void)label;
    const double p = value.get<double>();
    require(p >= 0.0 && p <= 1.0 + 1e-12, "probability out of range");
    p_sum += p;
  }
  require(std::abs(p_sum - 1.0) <= 1e-6, "probabilities must sum to 1");
  std::uint64_t count_sum = 0;
  for (const auto& [label, value] : a["counts"].items()) {
    (void)label;
    count_sum += value.get<std::uint64_t>();
  }
  if (a["config"].contains("n"))
    require(count_sum == a["config"]["n"].get<std::uint64_t>(),
            "counts must sum to n");
  require(a.contains("mean") && a["mean"].is_array(), "mean missing");
  cvector_from_json(a["mean"], "artifact.mean");
  require(a.contains("std") && a["std"].is_array(), "std missing");
  for (const json& s : a["std"])
    require(s.is_number() && s.get<double>() >= 0.0, "std entries must be >= 0");
  cvector_from_json(a["statistical_mean"], "artifact.statistical_mean");
  if (a.contains("uncertainty")) {
    const json& u = a["uncertainty"];
    for (const char* key : {"e_term", "sigma_x", "sigma_a", "bias", "rmse", "delta_x"})
      require(u.contains(key) && u[key].is_number(),
              std::string("uncertainty.") + key + " missing");
  }
}

void validate_check_povm(const json& a) {
  require(a.contains("valid") && a["valid"].is_boolean(), "valid flag missing");
  require(a.contains("completeness_defect") && a["completeness_defect"].is_number(),
          "completeness_defect missing");
  require(a.contains("elements") && a["elements"].is_array(), "elements missing");
  for (const json& e : a["elements"])
    for (const char* key : {"hermiticity_defect", "min_eigenvalue", "norm"})
      require(e.contains(key) && e[key].is_number(),
              std::string("elements.") + key + " missing");
  if (a["valid"].get<bool>()) {
    require(a["projective"].is_boolean(), "projective flag missing");
    const json& ic = a["ic"];
    require(ic.is_object() && ic.contains("complete") && ic.contains("spanned_dimension") &&
                ic.contains("minimal"),
            "ic report incomplete");
  } else {
    require(a["projective"].is_null() && a["ic"].is_null(),
            "invalid POVMs carry no projective/ic reports");
  }
}

void validate_tomo_state(const json& a) {
  state_from_json(a.at("state"), "artifact.state");
  require(a.contains("residual") && a["residual"].is_number() &&
              a["residual"].get<double>() >= 0.0,
          "residual must be a nonnegative number");
  require(a.contains("iterations") && a["iterations"].is_number_integer(),
          "iterations missing");
  require(a.contains("non_unique") && a["non_unique"].is_boolean(),
          "non_unique flag missing");
}

void validate_tomo_detector(const json& a) {
  povm_from_json(a.at("povm"), "artifact.povm");
  require(a.contains("residual") && a["residual"].is_number() &&
              a["residual"].get<double>() >= 0.0,
          "residual must be a nonnegative number");
  require(a.contains("iterations") && a["iterations"].is_number_integer(),
          "iterations missing");
}

void validate_evolve(const json& a) {
  require(a.contains("times") && a["times"].is_array() && !a["times"].empty(),
          "times missing");
  double prev = -1.0;
  for (const json& t : a["times"]) {
    require(t.is_number() && t.get<double>() > prev, "times must increase");
    prev = t.get<double>();
  }
  require(a.contains("intensities") && a["intensities"].is_array() &&
              a["intensities"].size() == a["times"].size(),
          "intensities must match times");
  for (const json& v : a["intensities"])
    require(v.is_number() && v.get<double>() > 0.0, "intensities must stay positive");
  if (a.contains("expectations")) {
    require(a["expectations"].is_array() &&
                a["expectations"].size() == a["times"].size(),
            "expectations must match times");
    for (const json& row : a["expectations"])
      cvector_from_json(row, "artifact.expectations");
  }
  state_from_json(a.at("final_state"), "artifact.final_state");
}

void validate_optics(const json& a) {
  stokes_from_json(a.at("input_stokes"), "artifact.input_stokes");
  require(a.contains("stages") && a["stages"].is_array(), "stages missing");
  for (const json& s : a["stages"]) stokes_from_json(s, "artifact.stages");
  require(a.contains("absorbed") && a["absorbed"].is_boolean(), "absorbed flag missing");
  require(a.contains("mueller") && a["mueller"].is_array() && a["mueller"].size() == 4,
          "mueller must be 4x4");
  for (const json& row : a["mueller"]) {
    require(row.is_array() && row.size() == 4, "mueller must be 4x4");
    for (const json& v : row) require(v.is_number(), "mueller entries must be numbers");
  }
  if (a["absorbed"].get<bool>()) {
    require(a["output_stokes"].is_null(), "absorbed runs have no output beam");
    require(a["absorbed_at"].is_number_unsigned(), "absorbed_at missing");
  } else {
    stokes_from_json(a.at("output_stokes"), "artifact.output_stokes");
    require(a["absorbed_at"].is_null(), "absorbed_at must be null");
    require(a["degree_of_polarization"].is_number(), "degree_of_polarization missing");
  }
}

void validate_spectrum(const json& a) {
  require(a.contains("member") && a["member"].is_boolean(), "member flag missing");
  require(a.contains("min_value") && a["min_value"].is_number() &&
              a["min_value"].get<double>() >= -1e-12,
          "min_value must be a nonnegative number");
  require(a.contains("achieved") && a["achieved"].is_number(), "achieved missing");
  require(a.contains("state") && a["state"].is_object() && a["state"].contains("psi"),
          "state.psi missing");
  cvector_from_json(a["state"]["psi"], "artifact.state.psi");
}

}  // namespace

void validate_output(const json& artifact) {
  check_common(artifact);
  const std::string schema = artifact["schema"].get<std::string>();
  if (schema == "povmlab/simulate@1") return validate_simulate(artifact);
  if (schema == "povmlab/check-povm@1") return validate_check_povm(artifact);
  if (schema == "povmlab/tomo-state@1") return validate_tomo_state(artifact);
  if (schema == "povmlab/tomo-detector@1") return validate_tomo_detector(artifact);
  if (schema == "povmlab/evolve@1") return validate_evolve(artifact);
  if (schema == "povmlab/optics@1") return validate_optics(artifact);
  if (schema == "povmlab/spectrum@1") return validate_spectrum(artifact);
  throw SchemaError("artifact: unknown schema \"" + schema + "\"");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "simulate") return run_simulate(config, out);
    if (config.subcommand == "check-povm") return run_check_povm(config, out);
    if (config.subcommand == "tomo-state") return run_tomo_state(config, out);
    if (config.subcommand == "tomo-detector") return run_tomo_detector(config, out);
    if (config.subcommand == "evolve") return run_evolve(config, out);
    if (config.subcommand == "optics") return run_optics(config, out);
    if (config.subcommand == "spectrum") return run_spectrum(config, out);
    throw SchemaError("unknown subcommand \"" + config.subcommand + "\"");
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "povmlab: detector simulation, tomography, dynamics and polarization "
      "optics from declarative JSON files"};
  app.require_subcommand(1);

  RunConfig cfg;
  const struct {
    const char* name;
    const char* help;
  } subcommands[] = {
      {"simulate", "response probabilities, seeded samples and empirical statistics"},
      {"tomo-state", "least-squares density recovery from outcome frequencies"},
      {"tomo-detector", "least-squares POVM recovery from calibration frequencies"},
      {"check-povm", "validation, projectivity and informational completeness"},
      {"evolve", "density trajectory under a raw-K/Hamiltonian/Lindblad generator"},
      {"optics", "Stokes beam through a pipeline of Jones instruments"},
      {"spectrum", "joint-spectrum membership and the minimizing state"},
  };
  for (const auto& s : subcommands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--input", cfg.input_path, "problem / generator / pipeline file");
    sub->add_option("--state", cfg.state_path, "state file");
    sub->add_option("--povm", cfg.povm_path, "POVM file");
    sub->add_option("--scale", cfg.scale_path, "scale file");
    sub->add_option("--target-x", cfg.target_x_path, "target quantity file");
    sub->add_option("--n", cfg.n, "trial count");
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--jobs", cfg.jobs, "worker threads for independent trials")
        ->check(CLI::Range(1, 256));
    if (std::string(s.name) == "evolve") {
      sub->add_option("--t-end", cfg.t_end, "final time");
      sub->add_option("--dt", cfg.dt, "integrator step");
      sub->add_option("--samples", cfg.samples, "trajectory sample count");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  cfg.tol_set = chosen->count("--tol") > 0;
  if (chosen->count("--seed") == 0) {
    if (const char* env = std::getenv("POVMLAB_SEED")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        err << "error: POVMLAB_SEED is not an unsigned integer: \"" << env << "\"\n";
        return 2;
      }
      cfg.seed = parsed;
    }
  }
  return run(cfg, out, err);
}

}  // namespace povmlab
