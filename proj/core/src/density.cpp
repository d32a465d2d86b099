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

#include "schmidt/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidt/errors.hpp"

namespace schmidt {

DensityMatrix::DensityMatrix(ComplexMatrix entries, const Tolerance& tol) {
  if (entries.rows() != entries.cols()) throw NotDensity("matrix not square");
  if (!entries.all_finite()) throw NotDensity("non-finite entries");
  const double fro = entries.frobenius_norm();
  const double herm = (entries - entries.adjoint()).frobenius_norm();
  if (!tol.within(herm, std::max(fro, 1.0))) {
    throw NotDensity("not Hermitian, defect " + std::to_string(herm));
  }
  const double tr_defect = std::abs(entries.trace() - Complex{1.0, 0.0});
  if (!tol.within(tr_defect, 10.0)) {
    throw NotDensity("trace off by " + std::to_string(tr_defect));
  }
  const EigenSystem es = hermitian_eig(entries + entries.adjoint(), tol);
  // entries were doubled by the symmetrization above
  for (double v : es.values) {
    if (v * 0.5 < -10.0 * tol.eps) {
      throw NotDensity("negative eigenvalue " + std::to_string(v * 0.5));
    }
  }
  entries_ = std::move(entries);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix entries) {
  DensityMatrix d;
  d.entries_ = std::move(entries);
  return d;
}

DensityMatrix reduced_density(const StateTensor& psi, const std::vector<std::size_t>& keep,
                              const Tolerance& tol) {
  (void)tol;
  const ComplexMatrix m = bipartition_matrix(psi, keep);
  return DensityMatrix::unchecked(m * m.adjoint());
}

std::size_t schmidt_number(const StateTensor& psi, const std::vector<std::size_t>& keep,
                           const Tolerance& tol) {
  const DensityMatrix rho = reduced_density(psi, keep, tol);
  const EigenSystem es = hermitian_eig(rho.entries(), tol);
  if (es.values.empty() || es.values[0] <= 0.0) return 0;
  const double cutoff = kRankTol * es.values[0];
  std::size_t rank = 0;
  while (rank < es.values.size() && es.values[rank] > cutoff) ++rank;
  return rank;
}

RankInequalityReport check_rank_inequality(const StateTensor& phi, const StateTensor& gamma,
                                           Complex alpha, Complex beta,
                                           const std::vector<std::size_t>& keep,
                                           const Tolerance& tol) {
  if (phi.dims() != gamma.dims()) throw ShapeMismatch("states on different systems");

  CVector amps(phi.total_dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = alpha * phi.amps()[i] + beta * gamma.amps()[i];
  }
  RankInequalityReport rep;
  const double nrm = vec_norm(amps);
  if (nrm == 0.0) throw NotNormalized("combination vanished");
  if (!tol.within(std::abs(nrm - 1.0), 1.0)) {
    rep.renormalized = true;
    vec_scale(amps, 1.0 / nrm);
  }
  const StateTensor psi = StateTensor::unchecked(phi.dims(), std::move(amps));

  rep.sch_psi = schmidt_number(psi, keep, tol);
  rep.sch_phi = schmidt_number(phi, keep, tol);
  rep.sch_gamma = schmidt_number(gamma, keep, tol);
  const std::size_t lo = rep.sch_phi > rep.sch_gamma ? rep.sch_phi - rep.sch_gamma
                                                     : rep.sch_gamma - rep.sch_phi;
  rep.holds = rep.sch_psi >= lo;
  return rep;
}

std::vector<std::size_t> grouped_dims(const SchmidtDecomposition& dpsi,
                                      const SchmidtDecomposition& dphi,
                                      const std::vector<std::size_t>& sizes) {
  const std::size_t m = dpsi.subsystems();
  const std::size_t n = dphi.subsystems();
  if (sizes.size() != n) throw BadGrouping("need one block size per part of the second state");
  std::size_t total = 0;
  for (auto x : sizes) {
    if (x == 0) throw BadGrouping("zero block size");
    total += x;
  }
  if (total != m) throw BadGrouping("block sizes must sum to the first state's part count");

  std::vector<std::size_t> dims;
  std::size_t at = 0;
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t d = 1;
    for (std::size_t t = 0; t < sizes[g]; ++t) d *= dpsi.vectors[at + t][0].size();
    d *= dphi.vectors[g][0].size();
    dims.push_back(d);
    at += sizes[g];
  }
  return dims;
}

SchmidtDecomposition tensor_product_grouping(const SchmidtDecomposition& dpsi,
                                             const SchmidtDecomposition& dphi,
                                             const std::vector<std::size_t>& sizes,
                                             const Tolerance& tol) {
  const std::size_t n = dphi.subsystems();
  if (dpsi.subsystems() < n) throw BadGrouping("first state must have at least as many parts");
  const std::vector<std::size_t> dims = grouped_dims(dpsi, dphi, sizes);

  SchmidtDecomposition out;
  out.vectors.resize(n);
  for (std::size_t i = 0; i < dpsi.rank(); ++i) {
    for (std::size_t j = 0; j < dphi.rank(); ++j) {
      out.coeffs.push_back(dpsi.coeffs[i] * dphi.coeffs[j]);
      std::size_t at = 0;
      for (std::size_t g = 0; g < n; ++g) {
        // Group vector: the block's parts from psi, then the linked phi part.
        CVector acc{Complex{1.0, 0.0}};
        for (std::size_t t = 0; t < sizes[g]; ++t) {
          const CVector& f = dpsi.vectors[at + t][i];
          CVector next(acc.size() * f.size());
          for (std::size_t a = 0; a < acc.size(); ++a)
            for (std::size_t b = 0; b < f.size(); ++b) next[a * f.size() + b] = acc[a] * f[b];
          acc = std::move(next);
        }
        const CVector& f = dphi.vectors[g][j];
        CVector next(acc.size() * f.size());
        for (std::size_t a = 0; a < acc.size(); ++a)
          for (std::size_t b = 0; b < f.size(); ++b) next[a * f.size() + b] = acc[a] * f[b];
        out.vectors[g].push_back(std::move(next));
        at += sizes[g];
      }
    }
  }

  out = canonicalize(out);
  validate_decomposition(out, dims, tol);
  return out;
}

}  // namespace schmidt
