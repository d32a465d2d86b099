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
#include <optional>
#include <utility>
#include <vector>

#include "schmidt/complex_matrix.hpp"
#include "schmidt/linalg.hpp"

namespace schmidt {

class Rng;

/// Multi-index convention used everywhere: subsystem 1 is the slowest-varying
/// index (plain row-major order over the dimension list).

/// Normalized pure state of an n-partite system as a dense amplitude tensor.
class StateTensor {
 public:
  enum class Normalization { Require, Auto };

  /// Validates subsystem count (>= 2), amplitude count and normalization.
  /// With Normalization::Auto an unnormalized amplitude vector is rescaled;
  /// otherwise NotNormalized is thrown when the norm is off by more than tol.
  StateTensor(std::vector<std::size_t> dims, CVector amps,
              Normalization mode = Normalization::Require, const Tolerance& tol = {});

  /// Trusted constructor for amplitudes that are normalized by construction.
  static StateTensor unchecked(std::vector<std::size_t> dims, CVector amps);

  std::size_t subsystems() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t k) const { return dims_[k]; }
  std::size_t total_dim() const { return amps_.size(); }
  const CVector& amps() const { return amps_; }

  std::size_t flat_index(const std::vector<std::size_t>& multi) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  double norm() const { return vec_norm(amps_); }

 private:
  StateTensor() = default;
  std::vector<std::size_t> dims_;
  CVector amps_;
};

/// Schmidt form: coefficients descending, one orthonormal vector list per
/// subsystem, zero coefficients dropped.
struct SchmidtDecomposition {
  std::vector<double> coeffs;                      // lambda_1 >= ... > 0
  std::vector<std::vector<CVector>> vectors;       // [subsystem][term] -> vector

  std::size_t rank() const { return coeffs.size(); }
  std::size_t subsystems() const { return vectors.size(); }
};

/// Matrix slices of the amplitude tensor with all but two indices fixed.
struct MatrixSet {
  std::vector<std::vector<std::size_t>> labels;  // fixed multi-index per slice
  std::vector<ComplexMatrix> matrices;           // uniform shape
};

/// One MatrixSet per subsystem k < n, pairing mode k with the last mode.
struct MatrixFamily {
  std::vector<MatrixSet> sets;
};

/// Unitary pair rendering every slice of a positively commuting set diagonal
/// (p^dagger * a * q^dagger).
struct DiagonalizingPair {
  ComplexMatrix p;
  ComplexMatrix q;
};

/// Slices of a tripartite state: one d2 x d3 matrix per first-mode index.
MatrixSet matrix_set_tripartite(const StateTensor& psi);

/// Slices of a quadripartite state: one d3 x d4 matrix per (l, m) pair,
/// ordered row-major over (l, m).
MatrixSet matrix_set_quadripartite(const StateTensor& psi);

/// For each subsystem k < n: the set of d_k x d_n slices obtained by fixing
/// all other indices.
MatrixFamily build_matrix_family(const StateTensor& psi);

/// Amplitudes flattened to a (prod left dims) x (prod rest) matrix, row-major
/// within each group, subsystem order preserved.  `left` holds 0-based
/// subsystem indices.
ComplexMatrix bipartition_matrix(const StateTensor& psi,
                                 const std::vector<std::size_t>& left);

/// Draws a rank-r decomposition (coefficients with pairwise separation and a
/// floor of 0.05, Haar-random vectors) and assembles the matching state.
std::pair<StateTensor, SchmidtDecomposition> random_decomposable(
    const std::vector<std::size_t>& dims, std::size_t rank, std::uint64_t seed);

/// Haar-random unitary via QR of a seeded complex Gaussian matrix.
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);

/// Haar-random normalized state.
StateTensor haar_state(const std::vector<std::size_t>& dims, std::uint64_t seed);

/// Assembles the amplitude tensor of a decomposition.
StateTensor reconstruct(const SchmidtDecomposition& decomp,
                        const std::vector<std::size_t>& dims);

/// Euclidean distance between psi and the reconstruction of decomp.
double reconstruction_residual(const SchmidtDecomposition& decomp, const StateTensor& psi);

/// Canonical representative: coefficients descending (near-ties ordered by
/// the first subsystem's vectors), every vector except the last subsystem's
/// phased so its largest entry is real positive, compensation absorbed by the
/// last subsystem.
SchmidtDecomposition canonicalize(const SchmidtDecomposition& decomp);

/// Checks coefficient normalization, per-subsystem orthonormality and the
/// rank bound; throws ShapeMismatch / NotNormalized on violation.
void validate_decomposition(const SchmidtDecomposition& decomp,
                            const std::vector<std::size_t>& dims, const Tolerance& tol = {});

/// Applies a unitary to one subsystem: (I x ... x u x ... x I) |psi>.
StateTensor apply_local_unitary(const StateTensor& psi, std::size_t mode,
                                const ComplexMatrix& u);

}  // namespace schmidt
