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

#include "schmidt/decompose.hpp"
#include "schmidt/density.hpp"

namespace schmidt {

/// Pure two-party state |AR> = sum_i sqrt(lambda_i) |i_A>|i_R> built from the
/// spectral decomposition of rho; tracing out the ancilla recovers rho.
/// Throws AncillaTooSmall when ancilla_dim is below the numerical rank.
StateTensor purify(const DensityMatrix& rho, std::size_t ancilla_dim, const Tolerance& tol = {});

/// Unitary u on the ancilla with (I x u)|ar2> = |ar1>.  Both inputs must be
/// two-party states of equal dims whose system-side reduced densities agree
/// (otherwise NotSamePurification).  Degenerate spectral blocks are matched
/// through the polar factor of the overlap, so u is exact wherever the data
/// determine it and any unitary on the undetermined block.
ComplexMatrix link_purifications(const StateTensor& ar1, const StateTensor& ar2,
                                 const Tolerance& tol = {});

/// Decomposability of a purification of rho, where rho lives on the composite
/// system described by dims and the ancilla is appended as one more
/// subsystem.  The verdict is independent of which purification is chosen.
/// A rank-1 rho purifies with a product ancilla, so its pure part is
/// classified directly.
DecomposabilityVerdict classify_purification(const DensityMatrix& rho,
                                             const std::vector<std::size_t>& dims,
                                             const Tolerance& tol = {},
                                             double accept_tol = kDefaultAcceptTol);

}  // namespace schmidt
