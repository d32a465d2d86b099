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

#include "schmidt/bipartite.hpp"

#include "schmidt/errors.hpp"

namespace schmidt {

SchmidtDecomposition schmidt_bipartite(const StateTensor& psi, const Tolerance& tol) {
  if (psi.subsystems() != 2) throw WrongArity("schmidt_bipartite needs 2 subsystems");

  const ComplexMatrix a = bipartition_matrix(psi, {0});
  const SvdResult s = svd(a, tol);

  SchmidtDecomposition out;
  out.vectors.resize(2);
  const double cutoff = s.sigma.empty() ? 0.0 : kRankTol * s.sigma[0];
  for (std::size_t l = 0; l < s.sigma.size(); ++l) {
    if (s.sigma[l] <= cutoff) break;
    out.coeffs.push_back(s.sigma[l]);
    out.vectors[0].push_back(s.p.column(l));
    out.vectors[1].push_back(s.q.row(l));  // a = p diag(sigma) q: right vectors are rows
  }
  return canonicalize(out);
}

std::size_t schmidt_number_bipartition(const StateTensor& psi,
                                       const std::vector<std::size_t>& left,
                                       const Tolerance& tol) {
  const ComplexMatrix a = bipartition_matrix(psi, left);
  const SvdResult s = svd(a, tol);
  if (s.sigma.empty() || s.sigma[0] == 0.0) return 0;
  const double cutoff = kRankTol * s.sigma[0];
  std::size_t rank = 0;
  while (rank < s.sigma.size() && s.sigma[rank] > cutoff) ++rank;
  return rank;
}

}  // namespace schmidt
