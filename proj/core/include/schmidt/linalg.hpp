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

#include <cstdint>
#include <vector>

#include "schmidt/complex_matrix.hpp"

namespace schmidt {

/// Relative tolerance for structural predicates (Hermitian, unitary,
/// commuting, diagonal).  Comparisons are relative to Frobenius norms with an
/// absolute floor so zero matrices behave.
struct Tolerance {
  double eps = 1e-9;

  static constexpr double kAbsFloor = 1e-14;

  /// residual <= eps * scale, floored.
  bool within(double residual, double scale) const {
    const double bound = eps * scale;
    return residual <= (bound > kAbsFloor ? bound : kAbsFloor);
  }
};

/// Singular values below kRankTol * sigma_max (and density eigenvalues below
/// kRankTol * lambda_max) do not count toward numerical rank.
inline constexpr double kRankTol = 1e-10;

/// A reconstructed decomposition is accepted when the state residual is at or
/// below this, one decade above the eigensolver noise floor.
inline constexpr double kDefaultAcceptTol = 1e-8;

struct EigenSystem {
  std::vector<double> values;  // real eigenvalues, descending
  ComplexMatrix basis;         // columns are orthonormal eigenvectors
};

/// Factorization a = p * diag(sigma) * q with p, q unitary (note: q enters
/// unconjugated; it plays the role of V-dagger in the usual convention).
struct SvdResult {
  ComplexMatrix p;
  std::vector<double> sigma;  // min(m, n) values, non-negative, descending
  ComplexMatrix q;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
/// Throws NotHermitian if ||m - m^dagger||_F > tol.eps * ||m||_F, and
/// NoConvergence if the sweep budget is exhausted.
EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerance& tol = {});

/// SVD built on hermitian_eig of the Gram matrix a^dagger a.  Each singular
/// pair is phased so the largest-magnitude entry of the left vector is real
/// positive.
SvdResult svd(const ComplexMatrix& a, const Tolerance& tol = {});

/// ||xy - yx||_F <= tol.eps * max(1, ||x||_F * ||y||_F).
bool commutes(const ComplexMatrix& x, const ComplexMatrix& y, const Tolerance& tol = {});

/// Relative commutator defect used by `commutes`; exposed for diagnostics.
double commutator_defect(const ComplexMatrix& x, const ComplexMatrix& y);

/// Unitary w with w^dagger * m * w diagonal for every m in `ms`.
/// Strategy: diagonalize a seeded random positive combination, then refine
/// recursively inside degenerate eigenvalue clusters; up to five retries.
/// Throws NotCommuting when a pair fails `commutes`, NoConvergence otherwise.
ComplexMatrix joint_diagonalize(const std::vector<ComplexMatrix>& ms,
                                const Tolerance& tol = {});

/// ||u^dagger u - I||_F <= tol.eps * dim.
bool is_unitary(const ComplexMatrix& u, const Tolerance& tol = {});
double unitarity_defect(const ComplexMatrix& u);

/// Unitary polar factor of a square matrix (the orthogonal Procrustes
/// solution of min ||m - u|| over unitaries).
ComplexMatrix polar_unitary(const ComplexMatrix& m, const Tolerance& tol = {});

namespace detail {

/// Extends `accepted` (orthonormal rows of length dim) to a full orthonormal
/// basis using canonical basis vectors, deterministically.
std::vector<CVector> complete_orthonormal(std::vector<CVector> accepted, std::size_t dim);

struct SimDiagResult {
  ComplexMatrix w;
  double worst_rel_offdiag = 0.0;  // max_i offdiag(w^dag m_i w) / ||m_i||
  bool converged = false;
};

/// Best-effort simultaneous diagonalizer for a family of Hermitian matrices.
/// Never throws; callers decide what a failed `converged` flag means.
SimDiagResult simultaneous_diagonalize(const std::vector<ComplexMatrix>& ms,
                                       const Tolerance& tol, std::uint64_t seed = 0);

}  // namespace detail

}  // namespace schmidt
