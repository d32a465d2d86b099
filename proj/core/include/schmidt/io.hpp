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

#include <string>

#include "schmidt/density.hpp"
#include "schmidt/state.hpp"

namespace schmidt {

/// State document: {"dims": [...], "amps": [[re, im], ...], "normalize": bool}.
/// Amplitudes are row-major with subsystem 1 slowest; "normalize" (default
/// false) rescales on load instead of rejecting unnormalized input.
StateTensor load_state(const std::string& text, const Tolerance& tol = {});
std::string save_state(const StateTensor& psi);

/// Decomposition document: {"rank", "coeffs", "vectors", "residual"} with
/// "vectors" holding, per subsystem, the list of Schmidt vectors as [re, im]
/// pairs.
struct DecompositionDocument {
  SchmidtDecomposition decomposition;
  double residual = 0.0;
};
DecompositionDocument load_decomposition(const std::string& text);
std::string save_decomposition(const SchmidtDecomposition& d, double residual);

/// Density document: the state container with "density" (row-major [re, im]
/// entries of the matrix over the composite system) replacing "amps".
struct DensityDocument {
  std::vector<std::size_t> dims;
  DensityMatrix rho;
};
DensityDocument load_density(const std::string& text, const Tolerance& tol = {});
std::string save_density(const std::vector<std::size_t>& dims, const DensityMatrix& rho);

/// Whole-file helpers (ParseError on unreadable paths).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace schmidt
