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

#include "schmidt/purification.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidt/errors.hpp"

namespace schmidt {

namespace {

std::size_t density_rank(const EigenSystem& es) {
  if (es.values.empty() || es.values[0] <= 0.0) return 0;
  const double cutoff = kRankTol * es.values[0];
  std::size_t rank = 0;
  while (rank < es.values.size() && es.values[rank] > cutoff) ++rank;
  return rank;
}

}  // namespace

StateTensor purify(const DensityMatrix& rho, std::size_t ancilla_dim, const Tolerance& tol) {
  if (ancilla_dim == 0) throw AncillaTooSmall("ancilla dimension must be positive");
  const EigenSystem es = hermitian_eig(rho.entries(), tol);
  const std::size_t rank = density_rank(es);
  if (rank == 0) throw NotDensity("zero density matrix");
  if (ancilla_dim < rank) {
    throw AncillaTooSmall("rank " + std::to_string(rank) + " needs ancilla of at least that size");
  }

  const std::size_t d = rho.dim();
  CVector amps(d * ancilla_dim, 0.0);
  double ss = 0.0;
  std::vector<double> roots(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    roots[i] = std::sqrt(std::max(es.values[i], 0.0));
    ss += es.values[i];
  }
  // Clip truncated tail mass so the output is exactly normalized.
  const double inv = 1.0 / std::sqrt(ss);
  for (std::size_t i = 0; i < rank; ++i) {
    const double w = roots[i] * inv;
    for (std::size_t a = 0; a < d; ++a) amps[a * ancilla_dim + i] = w * es.basis(a, i);
  }
  return StateTensor::unchecked({d, ancilla_dim}, std::move(amps));
}

ComplexMatrix link_purifications(const StateTensor& ar1, const StateTensor& ar2,
                                 const Tolerance& tol) {
  if (ar1.subsystems() != 2 || ar2.subsystems() != 2) {
    throw WrongArity("purifications must be two-party states");
  }
  if (ar1.dims() != ar2.dims()) throw ShapeMismatch("purifications on different systems");

  const ComplexMatrix a1 = bipartition_matrix(ar1, {0});
  const ComplexMatrix a2 = bipartition_matrix(ar2, {0});
  const double rho_gap = (a1 * a1.adjoint() - a2 * a2.adjoint()).frobenius_norm();
  if (!tol.within(rho_gap, 10.0)) {
    throw NotSamePurification("reduced densities differ by " + std::to_string(rho_gap));
  }

  // Want unitary x with a2 * x = a1; the polar factor of a2^dag a1 solves the
  // orthogonal Procrustes problem and is exact here because the densities
  // match.  The ancilla map is its transpose.
  const ComplexMatrix x = polar_unitary(a2.adjoint() * a1, tol);
  return x.transpose();
}

DecomposabilityVerdict classify_purification(const DensityMatrix& rho,
                                             const std::vector<std::size_t>& dims,
                                             const Tolerance& tol, double accept_tol) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (total != rho.dim()) throw ShapeMismatch("dims do not multiply to the density dimension");
  if (dims.size() < 2) throw WrongArity("need a multipartite system");

  const EigenSystem es = hermitian_eig(rho.entries(), tol);
  const std::size_t rank = density_rank(es);
  if (rank == 0) throw NotDensity("zero density matrix");

  if (rank == 1) {
    // The ancilla factors out; classify the pure part.
    CVector amps = es.basis.column(0);
    const double nrm = vec_norm(amps);
    vec_scale(amps, 1.0 / nrm);
    return decompose_multipartite(StateTensor::unchecked(dims, std::move(amps)), tol, accept_tol);
  }

  const StateTensor ar = purify(rho, rank, tol);
  std::vector<std::size_t> full_dims = dims;
  full_dims.push_back(rank);
  const StateTensor psi = StateTensor::unchecked(full_dims, ar.amps());
  return decompose_multipartite(psi, tol, accept_tol);
}

}  // namespace schmidt
