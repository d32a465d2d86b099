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

#include <optional>
#include <string>

#include "schmidt/state.hpp"

namespace schmidt {

/// Row scaling of a square matrix into a non-negative diagonal times a
/// unitary, with tr(Lambda^2) = 1.
struct ScaledUnitaryFactorization {
  std::vector<double> lambda;  // per-row 2-norms
  ComplexMatrix v;             // row-normalized matrix, unitary
};

/// Per-slot rank-1 data d_k = lambda_k * u_k * v_k^T with [u_k], [v_k]
/// forming orthonormal column sets.
struct UnitDecomposition {
  std::vector<double> lambda;
  std::vector<CVector> u;  // left vectors
  std::vector<CVector> v;  // right vectors (transpose convention: unconjugated)
};

enum class FailureReason {
  None,
  NotPositivelyCommuting,
  NotScaledUnitary,
  NotUnitDecomposable,
  NotCentral,
  ReconstructionMismatch,
};

std::string to_string(FailureReason r);

/// Outcome of a decomposability test.  `residual` is always the Euclidean
/// distance between the input and the best-effort reconstruction, so a
/// rejection can be audited even when a structural check failed first.
struct DecomposabilityVerdict {
  bool decomposable = false;
  std::optional<SchmidtDecomposition> decomposition;  // present iff decomposable
  FailureReason reason = FailureReason::None;
  double residual = 0.0;
};

/// Verifies that both Gram families {a^dag a} and {a a^dag} of the set are
/// pairwise commuting, then returns a unitary pair (p, q) diagonalizing them,
/// with q oriented against p so that p^dag * a_i * q^dag is diagonal whenever
/// the set admits such a pair.  Throws NotPositivelyCommuting (carrying the
/// worst commutator norm) when a Gram pair fails to commute.
DiagonalizingPair check_positively_commuting(const MatrixSet& ms, const Tolerance& tol = {});

/// Factors square s into diag(row norms) times the row-normalized matrix.
/// Throws NotScaledUnitary when the rows are not orthogonal or the squared
/// row norms do not sum to one.
ScaledUnitaryFactorization scaled_unitary_factor(const ComplexMatrix& s,
                                                 const Tolerance& tol = {});

/// Rank-1 factorization of every slice, lambda_k >= 0, with orthonormality of
/// the assembled left and right vector sets enforced.  Throws
/// NotUnitDecomposable on a rank-2 slice or a non-orthonormal assembly.
UnitDecomposition unit_decompose(const std::vector<ComplexMatrix>& ds,
                                 const Tolerance& tol = {});

/// Decomposability tests.  They never throw for well-formed input of the
/// right arity: failures are encoded in the verdict.
DecomposabilityVerdict decompose_tripartite(const StateTensor& psi, const Tolerance& tol = {},
                                            double accept_tol = kDefaultAcceptTol);
DecomposabilityVerdict decompose_quadripartite(const StateTensor& psi, const Tolerance& tol = {},
                                               double accept_tol = kDefaultAcceptTol);

/// General n-partite route via the slice family; dispatches to the bipartite
/// SVD for n = 2.
DecomposabilityVerdict decompose_multipartite(const StateTensor& psi, const Tolerance& tol = {},
                                              double accept_tol = kDefaultAcceptTol);

/// Arity dispatch: 2 -> bipartite, 3 -> tripartite, 4 -> quadripartite,
/// otherwise the general route.
DecomposabilityVerdict decompose(const StateTensor& psi, const Tolerance& tol = {},
                                 double accept_tol = kDefaultAcceptTol);

}  // namespace schmidt
