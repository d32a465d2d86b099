// Copyright 2026 The schmidt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace schmidt {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SCHMIDT_DEFINE_ERROR(NAME)                                \
  class NAME : public Error {                                     \
   public:                                                        \
    explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
  }

SCHMIDT_DEFINE_ERROR(ShapeMismatch);
SCHMIDT_DEFINE_ERROR(NotHermitian);
SCHMIDT_DEFINE_ERROR(NoConvergence);
SCHMIDT_DEFINE_ERROR(NotCommuting);
SCHMIDT_DEFINE_ERROR(ParseError);
SCHMIDT_DEFINE_ERROR(DimensionMismatch);
SCHMIDT_DEFINE_ERROR(NotNormalized);
SCHMIDT_DEFINE_ERROR(WrongArity);
SCHMIDT_DEFINE_ERROR(BadPartition);
SCHMIDT_DEFINE_ERROR(BadRank);
SCHMIDT_DEFINE_ERROR(BadGrouping);
SCHMIDT_DEFINE_ERROR(NotScaledUnitary);
SCHMIDT_DEFINE_ERROR(NotUnitDecomposable);
SCHMIDT_DEFINE_ERROR(AncillaTooSmall);
SCHMIDT_DEFINE_ERROR(NotDensity);
SCHMIDT_DEFINE_ERROR(NotSamePurification);
SCHMIDT_DEFINE_ERROR(InstanceTooLarge);

#undef SCHMIDT_DEFINE_ERROR

/// Pairwise commutation failure of a matrix set's Gram families.  Carries the
/// worst relative commutator norm so callers can report the obstruction.
class NotPositivelyCommuting : public Error {
 public:
  NotPositivelyCommuting(const std::string& what, double commutator_norm)
      : Error("NotPositivelyCommuting: " + what),
        commutator_norm_(commutator_norm) {}

  double commutator_norm() const { return commutator_norm_; }

 private:
  double commutator_norm_;
};

}  // namespace schmidt
