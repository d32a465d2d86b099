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

#include "schmidt/state.hpp"

namespace schmidt {

/// Schmidt decomposition of a two-party state via SVD of its coefficient
/// matrix.  Always succeeds for well-formed input.
SchmidtDecomposition schmidt_bipartite(const StateTensor& psi, const Tolerance& tol = {});

/// Schmidt number across the cut `left` / complement: the numerical rank of
/// the flattened coefficient matrix (singular values above kRankTol times the
/// largest one).
std::size_t schmidt_number_bipartition(const StateTensor& psi,
                                       const std::vector<std::size_t>& left,
                                       const Tolerance& tol = {});

}  // namespace schmidt
