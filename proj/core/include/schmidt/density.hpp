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

/// Hermitian, positive semi-definite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries, const Tolerance& tol = {});
  static DensityMatrix unchecked(ComplexMatrix entries);

  std::size_t dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }

 private:
  DensityMatrix() = default;
  ComplexMatrix entries_;
};

/// Reduced density matrix of the kept subsystems: m * m^dagger with m the
/// bipartition flattening.
DensityMatrix reduced_density(const StateTensor& psi, const std::vector<std::size_t>& keep,
                              const Tolerance& tol = {});

/// Numerical rank of the reduced density matrix (eigenvalues above kRankTol
/// times the largest).
std::size_t schmidt_number(const StateTensor& psi, const std::vector<std::size_t>& keep,
                           const Tolerance& tol = {});

struct RankInequalityReport {
  std::size_t sch_psi = 0;
  std::size_t sch_phi = 0;
  std::size_t sch_gamma = 0;
  bool holds = false;
  bool renormalized = false;  // alpha*phi + beta*gamma needed rescaling
};

/// Checks Sch(alpha*phi + beta*gamma) >= |Sch(phi) - Sch(gamma)| across the
/// `keep` bipartition.
RankInequalityReport check_rank_inequality(const StateTensor& phi, const StateTensor& gamma,
                                           Complex alpha, Complex beta,
                                           const std::vector<std::size_t>& keep,
                                           const Tolerance& tol = {});

/// Regroups the tensor product of two decomposed states into an n-partite
/// decomposition: the m parts of psi are split into n consecutive blocks of
/// the given sizes and one part of phi is linked to each block.  Coefficients
/// are all products lambda_i^psi * lambda_j^phi.
SchmidtDecomposition tensor_product_grouping(const SchmidtDecomposition& dpsi,
                                             const SchmidtDecomposition& dphi,
                                             const std::vector<std::size_t>& sizes,
                                             const Tolerance& tol = {});

/// Subsystem dimensions of the grouped state produced by
/// tensor_product_grouping with the same arguments.
std::vector<std::size_t> grouped_dims(const SchmidtDecomposition& dpsi,
                                      const SchmidtDecomposition& dphi,
                                      const std::vector<std::size_t>& sizes);

}  // namespace schmidt
