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
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace povmlab {

// One batch invocation. Paths are read relative to the working directory;
// out_path empty means the artifact goes to the stream handed to run().
struct RunConfig {
  std::string subcommand;
  std::string input_path;     // --input (problem / generator / pipeline file)
  std::string state_path;     // --state
  std::string povm_path;      // --povm
  std::string scale_path;     // --scale
  std::string target_x_path;  // --target-x
  std::uint64_t n = 0;        // --n
  std::uint64_t seed = 0;     // --seed; default keeps unset runs reproducible
  std::string out_path;       // --out
  std::string format = "json";  // --format json|csv
  double tol = 0.0;           // --tol
  bool tol_set = false;
  int jobs = 1;               // --jobs
  double t_end = 1.0;         // --t-end   (evolve)
  double dt = 1e-3;           // --dt      (evolve)
  int samples = 100;          // --samples (evolve)
};

// Runs one subcommand and writes its artifact. Exit status: 0 on success,
// 2 on schema/input violations, 1 on numerical failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Flag front-end for run(). POVMLAB_SEED overrides the default seed only
// when --seed is absent.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Structural re-check of an emitted JSON artifact against the layout its
// "schema" field declares; throws SchemaError on any mismatch. Embedded
// states, POVMs and Stokes vectors are re-parsed in full.
void validate_output(const nlohmann::json& artifact);

}  // namespace povmlab
