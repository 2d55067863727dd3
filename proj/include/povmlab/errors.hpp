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

#include <stdexcept>
#include <string>

namespace povmlab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible shapes or index out of range.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

// A matrix that should be Hermitian is too far from its adjoint.
class HermiticityError : public Error {
 public:
  explicit HermiticityError(const std::string& what) : Error(what) {}
};

// A declared invariant does not hold (non-PSD state, trace off, bad
// partition values, duplicate scale values, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A linear problem does not have enough independent data. Carries the
// dimension actually spanned so callers can report how much was missing.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, int spanned_dimension)
      : Error(what), spanned_dimension_(spanned_dimension) {}
  int spanned_dimension() const noexcept { return spanned_dimension_; }

 private:
  int spanned_dimension_;
};

// A requested filter arrangement cannot be completed to a POVM.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// A finite-dimensional truncation is too coarse. Carries the measured defect.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

// An iterative solver hit its iteration cap before reaching tolerance.
class IterationCapError : public Error {
 public:
  explicit IterationCapError(const std::string& what) : Error(what) {}
};

// An input document does not match its declared layout. Messages name the
// offending path and field so batch users can fix their files.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

// Internal numeric consistency check failed (e.g. a variance radicand more
// negative than rounding can explain).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace povmlab
