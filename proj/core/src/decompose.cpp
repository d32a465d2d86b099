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

#include "schmidt/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schmidt/bipartite.hpp"
#include "schmidt/errors.hpp"

namespace schmidt {

namespace {

constexpr double kZeroDirection = 1e-12;  // slot strength below this is noise
constexpr double kDependenceCut = 0.3;    // Gram-Schmidt residual marking a dead slot

struct PairDiagnostics {
  ComplexMatrix p;
  ComplexMatrix q;
  double gram_defect = 0.0;  // worst pairwise commutator over both Gram families
};

void require_uniform(const std::vector<ComplexMatrix>& as, const char* who) {
  if (as.empty()) throw ShapeMismatch(std::string(who) + ": empty matrix set");
  for (const auto& a : as) {
    if (a.rows() != as[0].rows() || a.cols() != as[0].cols()) {
      throw ShapeMismatch(std::string(who) + ": slices of mixed shape");
    }
  }
}

// Hermitian and anti-Hermitian parts of cross products a_i a_j^dag.  These
// share the eigenbasis of the plain Grams but separate directions the Grams
// leave degenerate; they are only usable when the whole enlarged family is
// still simultaneously diagonalizable, which simultaneous_diagonalize itself
// decides.
void push_cross_parts(const ComplexMatrix& x, std::vector<ComplexMatrix>& fam) {
  ComplexMatrix herm = x + x.adjoint();
  herm *= 0.5;
  ComplexMatrix skew = x - x.adjoint();
  skew *= Complex(0.0, -0.5);
  fam.push_back(std::move(herm));
  fam.push_back(std::move(skew));
}

ComplexMatrix left_basis(const std::vector<ComplexMatrix>& as,
                         const std::vector<ComplexMatrix>& grams, const Tolerance& tol) {
  std::vector<ComplexMatrix> enriched = grams;
  const bool full_pairs = as.size() <= 64;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::size_t jend = full_pairs ? as.size() : std::min(as.size(), i + 2);
    for (std::size_t j = i + 1; j < jend; ++j) {
      push_cross_parts(as[i] * as[j].adjoint(), enriched);
    }
  }
  auto res = detail::simultaneous_diagonalize(enriched, tol);
  if (res.converged) return res.w;
  return detail::simultaneous_diagonalize(grams, tol).w;
}

// Gram-Schmidt against `accepted`; returns the normalized residual or nullopt
// when the candidate is (nearly) dependent.
std::optional<CVector> gs_accept(const CVector& cand, const std::vector<CVector>& accepted) {
  CVector v = cand;
  const double nrm0 = vec_norm(v);
  if (nrm0 <= kZeroDirection) return std::nullopt;
  vec_scale(v, 1.0 / nrm0);
  for (const auto& u : accepted) {
    const Complex ov = vec_dot(u, v);
    for (std::size_t r = 0; r < v.size(); ++r) v[r] -= ov * u[r];
  }
  const double nrm = vec_norm(v);
  if (nrm < kDependenceCut) return std::nullopt;
  vec_scale(v, 1.0 / nrm);
  return v;
}

// Builds a full unitary whose row ell follows candidate ell where one exists.
ComplexMatrix assemble_unitary_rows(const std::vector<std::optional<CVector>>& cand,
                                    std::size_t dim) {
  std::vector<CVector> accepted;
  std::vector<std::optional<std::size_t>> slot(dim);  // row -> index into accepted
  for (std::size_t r = 0; r < dim; ++r) {
    if (!cand[r]) continue;
    if (auto v = gs_accept(*cand[r], accepted)) {
      slot[r] = accepted.size();
      accepted.push_back(std::move(*v));
    }
  }
  const std::size_t ranked = accepted.size();
  std::vector<CVector> full = detail::complete_orthonormal(std::move(accepted), dim);
  ComplexMatrix out(dim, dim);
  std::size_t next_free = ranked;
  for (std::size_t r = 0; r < dim; ++r) {
    out.set_row(r, slot[r] ? full[*slot[r]] : full[next_free++]);
  }
  return out;
}

// Pairwise worst commutator defect inside one list.
double family_defect(const std::vector<ComplexMatrix>& ms) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      worst = std::max(worst, commutator_defect(ms[i], ms[j]));
  return worst;
}

PairDiagnostics diagonalizing_pair_best_effort(const std::vector<ComplexMatrix>& as,
                                               const Tolerance& tol) {
  require_uniform(as, "diagonalizing pair");
  std::vector<ComplexMatrix> lefts, rights;
  lefts.reserve(as.size());
  rights.reserve(as.size());
  for (const auto& a : as) {
    lefts.push_back(a * a.adjoint());
    rights.push_back(a.adjoint() * a);
  }

  PairDiagnostics out;
  out.gram_defect = std::max(family_defect(lefts), family_defect(rights));
  out.p = left_basis(as, lefts, tol);

  // Orient the right side against p: if p^dag a_i q^dag is to be diagonal,
  // every nonzero row ell of p^dag a_i is proportional to row ell of q.
  const ComplexMatrix pd = out.p.adjoint();
  const std::size_t rows = as[0].rows();
  const std::size_t cols = as[0].cols();
  const std::size_t slots = std::min(rows, cols);

  std::vector<std::optional<CVector>> cand(cols);
  std::vector<ComplexMatrix> bs;
  bs.reserve(as.size());
  for (const auto& a : as) bs.push_back(pd * a);
  for (std::size_t l = 0; l < slots; ++l) {
    double best = kZeroDirection;
    for (const auto& b : bs) {
      const CVector r = b.row(l);
      const double nrm = vec_norm(r);
      if (nrm > best) {
        best = nrm;
        cand[l] = r;
      }
    }
  }
  out.q = assemble_unitary_rows(cand, cols);
  return out;
}

struct TermCandidate {
  double lambda;
  std::size_t slot;
};

std::vector<TermCandidate> ranked_slots(const std::vector<double>& lambda) {
  std::vector<TermCandidate> out;
  double lmax = 0.0;
  for (double l : lambda) lmax = std::max(lmax, l);
  const double cut = std::max(kRankTol, kRankTol * lmax);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > cut) out.push_back({lambda[i], i});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TermCandidate& a, const TermCandidate& b) {
                     return a.lambda > b.lambda;
                   });
  return out;
}

// Fallback candidate so a rejection always carries a measurable residual.
SchmidtDecomposition trivial_candidate(const std::vector<std::size_t>& dims) {
  SchmidtDecomposition d;
  d.coeffs = {1.0};
  d.vectors.resize(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    CVector e(dims[k], 0.0);
    e[0] = 1.0;
    d.vectors[k].push_back(std::move(e));
  }
  return d;
}

DecomposabilityVerdict finish_verdict(const StateTensor& psi, SchmidtDecomposition candidate,
                                      bool stages_ok, FailureReason stage_reason,
                                      double accept_tol) {
  if (candidate.rank() == 0) candidate = trivial_candidate(psi.dims());
  double ss = 0.0;
  for (double c : candidate.coeffs) ss += c * c;
  if (ss > 0.0) {
    const double inv = 1.0 / std::sqrt(ss);
    for (auto& c : candidate.coeffs) c *= inv;
  }
  candidate = canonicalize(candidate);

  DecomposabilityVerdict v;
  v.residual = reconstruction_residual(candidate, psi);
  if (stages_ok && v.residual <= accept_tol) {
    v.decomposable = true;
    v.decomposition = std::move(candidate);
    v.reason = FailureReason::None;
  } else {
    v.decomposable = false;
    v.reason = stages_ok ? FailureReason::ReconstructionMismatch : stage_reason;
  }
  return v;
}

}  // namespace

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "None";
    case FailureReason::NotPositivelyCommuting: return "NotPositivelyCommuting";
    case FailureReason::NotScaledUnitary: return "NotScaledUnitary";
    case FailureReason::NotUnitDecomposable: return "NotUnitDecomposable";
    case FailureReason::NotCentral: return "NotCentral";
    case FailureReason::ReconstructionMismatch: return "ReconstructionMismatch";
  }
  return "Unknown";
}

DiagonalizingPair check_positively_commuting(const MatrixSet& ms, const Tolerance& tol) {
  require_uniform(ms.matrices, "check_positively_commuting");
  PairDiagnostics d = diagonalizing_pair_best_effort(ms.matrices, tol);
  if (d.gram_defect > tol.eps) {
    throw NotPositivelyCommuting("worst Gram commutator " + std::to_string(d.gram_defect),
                                 d.gram_defect);
  }
  return {std::move(d.p), std::move(d.q)};
}

ScaledUnitaryFactorization scaled_unitary_factor(const ComplexMatrix& s, const Tolerance& tol) {
  if (s.rows() != s.cols()) throw ShapeMismatch("scaled_unitary_factor: matrix not square");
  const std::size_t n = s.rows();

  ScaledUnitaryFactorization out;
  out.lambda.resize(n);
  double ss = 0.0;
  std::vector<std::optional<CVector>> cand(n);
  for (std::size_t r = 0; r < n; ++r) {
    CVector row = s.row(r);
    out.lambda[r] = vec_norm(row);
    ss += out.lambda[r] * out.lambda[r];
    if (out.lambda[r] > kZeroDirection) cand[r] = std::move(row);
  }

  const double trace_defect = std::abs(ss - 1.0);
  double gram_defect = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!cand[a]) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!cand[b]) continue;
      const double ov = std::abs(vec_dot(*cand[a], *cand[b])) / (out.lambda[a] * out.lambda[b]);
      gram_defect = std::max(gram_defect, ov);
    }
  }
  if (gram_defect > tol.eps * static_cast<double>(n)) {
    throw NotScaledUnitary("rows not orthogonal, overlap " + std::to_string(gram_defect));
  }
  if (!tol.within(trace_defect, 10.0)) {
    throw NotScaledUnitary("squared row norms sum to " + std::to_string(ss));
  }

  out.v = assemble_unitary_rows(cand, n);
  return out;
}

UnitDecomposition unit_decompose(const std::vector<ComplexMatrix>& ds, const Tolerance& tol) {
  require_uniform(ds, "unit_decompose");
  const std::size_t count = ds.size();

  UnitDecomposition out;
  out.lambda.resize(count, 0.0);
  std::vector<std::optional<CVector>> ucand(count), vcand(count);
  double lmax = 0.0;
  double rank_defect = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const SvdResult s = svd(ds[k], tol);
    out.lambda[k] = s.sigma.empty() ? 0.0 : s.sigma[0];
    lmax = std::max(lmax, out.lambda[k]);
    if (s.sigma.size() > 1) rank_defect = std::max(rank_defect, s.sigma[1]);
    if (out.lambda[k] > kZeroDirection) {
      ucand[k] = s.p.column(0);
      vcand[k] = s.q.row(0);
    }
  }
  if (lmax > 0.0 && rank_defect > tol.eps * lmax) {
    throw NotUnitDecomposable("slice of rank > 1, second singular value " +
                              std::to_string(rank_defect));
  }

  auto gram = [&](const std::vector<std::optional<CVector>>& c) {
    double worst = 0.0;
    for (std::size_t a = 0; a < count; ++a) {
      if (!c[a]) continue;
      for (std::size_t b = a + 1; b < count; ++b) {
        if (!c[b]) continue;
        worst = std::max(worst, std::abs(vec_dot(*c[a], *c[b])));
      }
    }
    return worst;
  };
  const double gu = gram(ucand);
  const double gv = gram(vcand);
  if (std::max(gu, gv) > tol.eps * static_cast<double>(count)) {
    throw NotUnitDecomposable("assembled vectors not orthonormal, overlap " +
                              std::to_string(std::max(gu, gv)));
  }

  // Dead slots are completed so the assembled [u_k], [v_k] stay orthonormal.
  const std::size_t du = ds[0].rows();
  const std::size_t dv = ds[0].cols();
  std::vector<std::optional<CVector>> upad(std::max(count, du)), vpad(std::max(count, dv));
  for (std::size_t k = 0; k < count; ++k) {
    upad[k] = ucand[k];
    vpad[k] = vcand[k];
  }
  const ComplexMatrix urows = assemble_unitary_rows(
      std::vector<std::optional<CVector>>(upad.begin(), upad.begin() + du), du);
  const ComplexMatrix vrows = assemble_unitary_rows(
      std::vector<std::optional<CVector>>(vpad.begin(), vpad.begin() + dv), dv);
  for (std::size_t k = 0; k < count; ++k) {
    out.u.push_back(ucand[k] ? *ucand[k] : (k < du ? urows.row(k) : CVector(du, 0.0)));
    out.v.push_back(vcand[k] ? *vcand[k] : (k < dv ? vrows.row(k) : CVector(dv, 0.0)));
  }
  return out;
}

DecomposabilityVerdict decompose_tripartite(const StateTensor& psi, const Tolerance& tol,
                                            double accept_tol) {
  if (psi.subsystems() != 3) throw WrongArity("decompose_tripartite needs 3 subsystems");
  const auto& dims = psi.dims();
  const MatrixSet ms = matrix_set_tripartite(psi);

  const PairDiagnostics pair = diagonalizing_pair_best_effort(ms.matrices, tol);
  const bool pc_ok = pair.gram_defect <= tol.eps;

  const std::size_t slots = std::min(dims[1], dims[2]);
  const std::size_t side = std::max(slots, dims[0]);
  ComplexMatrix s_pad(side, side);
  const ComplexMatrix pd = pair.p.adjoint();
  const ComplexMatrix qd = pair.q.adjoint();
  double off2 = 0.0, tot2 = 0.0;
  for (std::size_t i = 0; i < ms.matrices.size(); ++i) {
    const ComplexMatrix d = pd * ms.matrices[i] * qd;
    const double off = off_diagonal_norm(d);
    off2 += off * off;
    const double f = d.frobenius_norm();
    tot2 += f * f;
    for (std::size_t l = 0; l < slots; ++l) s_pad(l, i) = d(l, l);
  }
  const bool diag_ok = tol.within(std::sqrt(off2), std::sqrt(tot2));

  // Row factorization of s: lambda from row norms, the A-side vectors from the
  // normalized rows.  Off-diagonal leakage above shows up here as a trace
  // deficit, so both failures report NotScaledUnitary.
  std::vector<double> lambda(side);
  double ss = 0.0, gram_defect = 0.0;
  std::vector<CVector> rows(side);
  for (std::size_t r = 0; r < side; ++r) {
    rows[r] = s_pad.row(r);
    lambda[r] = vec_norm(rows[r]);
    ss += lambda[r] * lambda[r];
  }
  for (std::size_t a = 0; a < side; ++a) {
    if (lambda[a] <= kZeroDirection) continue;
    for (std::size_t b = a + 1; b < side; ++b) {
      if (lambda[b] <= kZeroDirection) continue;
      gram_defect = std::max(gram_defect,
                             std::abs(vec_dot(rows[a], rows[b])) / (lambda[a] * lambda[b]));
    }
  }
  const bool su_ok =
      gram_defect <= tol.eps * static_cast<double>(side) && tol.within(std::abs(ss - 1.0), 10.0);

  SchmidtDecomposition cand;
  cand.vectors.resize(3);
  std::vector<CVector> accepted;
  for (const auto& term : ranked_slots(lambda)) {
    const std::size_t l = term.slot;
    if (l >= slots) continue;  // padded rows carry no physical slot
    auto a_dir = gs_accept(rows[l], accepted);
    if (!a_dir) continue;
    accepted.push_back(*a_dir);
    CVector a_vec(a_dir->begin(), a_dir->begin() + dims[0]);
    const double a_nrm = vec_norm(a_vec);
    if (a_nrm <= kDependenceCut) continue;  // direction escaped into padding
    vec_scale(a_vec, 1.0 / a_nrm);
    cand.coeffs.push_back(term.lambda);
    cand.vectors[0].push_back(std::move(a_vec));
    cand.vectors[1].push_back(pair.p.column(l));
    cand.vectors[2].push_back(pair.q.row(l));
  }

  const bool stages_ok = pc_ok && diag_ok && su_ok;
  const FailureReason reason =
      !pc_ok ? FailureReason::NotPositivelyCommuting : FailureReason::NotScaledUnitary;
  return finish_verdict(psi, std::move(cand), stages_ok, reason, accept_tol);
}

DecomposabilityVerdict decompose_quadripartite(const StateTensor& psi, const Tolerance& tol,
                                               double accept_tol) {
  if (psi.subsystems() != 4) throw WrongArity("decompose_quadripartite needs 4 subsystems");
  const auto& dims = psi.dims();
  const MatrixSet ms = matrix_set_quadripartite(psi);

  const PairDiagnostics pair = diagonalizing_pair_best_effort(ms.matrices, tol);
  const bool pc_ok = pair.gram_defect <= tol.eps;

  const std::size_t slots = std::min(dims[2], dims[3]);
  std::vector<ComplexMatrix> dks(slots, ComplexMatrix(dims[0], dims[1]));
  const ComplexMatrix pd = pair.p.adjoint();
  const ComplexMatrix qd = pair.q.adjoint();
  double off2 = 0.0, tot2 = 0.0;
  for (std::size_t t = 0; t < ms.matrices.size(); ++t) {
    const ComplexMatrix s = pd * ms.matrices[t] * qd;
    const double off = off_diagonal_norm(s);
    off2 += off * off;
    const double f = s.frobenius_norm();
    tot2 += f * f;
    const std::size_t l = ms.labels[t][0];
    const std::size_t m = ms.labels[t][1];
    for (std::size_t k = 0; k < slots; ++k) dks[k](l, m) = s(k, k);
  }
  const bool diag_ok = tol.within(std::sqrt(off2), std::sqrt(tot2));

  // Rank-1 factorization of every slot matrix.
  std::vector<double> lambda(slots, 0.0);
  std::vector<std::optional<CVector>> ucand(slots), vcand(slots);
  double lmax = 0.0, rank_defect = 0.0, gram_defect = 0.0;
  for (std::size_t k = 0; k < slots; ++k) {
    const SvdResult s = svd(dks[k], tol);
    lambda[k] = s.sigma.empty() ? 0.0 : s.sigma[0];
    lmax = std::max(lmax, lambda[k]);
    if (s.sigma.size() > 1) rank_defect = std::max(rank_defect, s.sigma[1]);
    if (lambda[k] > kZeroDirection) {
      ucand[k] = s.p.column(0);
      vcand[k] = s.q.row(0);
    }
  }
  for (std::size_t a = 0; a < slots; ++a) {
    if (!ucand[a]) continue;
    for (std::size_t b = a + 1; b < slots; ++b) {
      if (!ucand[b]) continue;
      gram_defect = std::max(gram_defect, std::abs(vec_dot(*ucand[a], *ucand[b])));
      gram_defect = std::max(gram_defect, std::abs(vec_dot(*vcand[a], *vcand[b])));
    }
  }
  const bool ud_ok = (lmax == 0.0 || rank_defect <= tol.eps * lmax) &&
                     gram_defect <= tol.eps * static_cast<double>(slots);

  SchmidtDecomposition cand;
  cand.vectors.resize(4);
  std::vector<CVector> acc_u, acc_v;
  for (const auto& term : ranked_slots(lambda)) {
    const std::size_t k = term.slot;
    if (!ucand[k] || !vcand[k]) continue;
    auto u_dir = gs_accept(*ucand[k], acc_u);
    if (!u_dir) continue;
    auto v_dir = gs_accept(*vcand[k], acc_v);
    if (!v_dir) continue;
    acc_u.push_back(*u_dir);
    acc_v.push_back(*v_dir);
    cand.coeffs.push_back(term.lambda);
    cand.vectors[0].push_back(std::move(*u_dir));
    cand.vectors[1].push_back(std::move(*v_dir));
    cand.vectors[2].push_back(pair.p.column(k));
    cand.vectors[3].push_back(pair.q.row(k));
  }

  const bool stages_ok = pc_ok && diag_ok && ud_ok;
  const FailureReason reason =
      !pc_ok ? FailureReason::NotPositivelyCommuting : FailureReason::NotUnitDecomposable;
  return finish_verdict(psi, std::move(cand), stages_ok, reason, accept_tol);
}

DecomposabilityVerdict decompose_multipartite(const StateTensor& psi, const Tolerance& tol,
                                              double accept_tol) {
  const std::size_t n = psi.subsystems();
  if (n == 2) {
    SchmidtDecomposition d = schmidt_bipartite(psi, tol);
    DecomposabilityVerdict v;
    v.residual = reconstruction_residual(d, psi);
    v.decomposable = v.residual <= accept_tol;
    if (v.decomposable) {
      v.decomposition = std::move(d);
    } else {
      v.reason = FailureReason::ReconstructionMismatch;
    }
    return v;
  }

  const auto& dims = psi.dims();
  const std::size_t last = n - 1;
  const MatrixFamily fam = build_matrix_family(psi);

  // Positive commutation inside every set; centrality couples the right Gram
  // matrices across sets.
  double pc_defect = 0.0;
  std::vector<ComplexMatrix> right_all;
  std::vector<std::size_t> right_owner;
  for (std::size_t k = 0; k < fam.sets.size(); ++k) {
    const auto& as = fam.sets[k].matrices;
    std::vector<ComplexMatrix> lefts;
    lefts.reserve(as.size());
    for (const auto& a : as) {
      lefts.push_back(a * a.adjoint());
      right_all.push_back(a.adjoint() * a);
      right_owner.push_back(k);
    }
    pc_defect = std::max(pc_defect, family_defect(lefts));
  }
  double central_defect = 0.0;
  for (std::size_t i = 0; i < right_all.size(); ++i) {
    for (std::size_t j = i + 1; j < right_all.size(); ++j) {
      const double d = commutator_defect(right_all[i], right_all[j]);
      if (right_owner[i] == right_owner[j]) {
        pc_defect = std::max(pc_defect, d);
      } else {
        central_defect = std::max(central_defect, d);
      }
    }
  }
  const bool pc_ok = pc_defect <= tol.eps;
  bool central_ok = central_defect <= tol.eps;

  // One basis for the last mode, from the union of right Grams enriched with
  // in-set cross products.
  std::vector<ComplexMatrix> enriched = right_all;
  for (const auto& set : fam.sets) {
    const auto& as = set.matrices;
    const bool full_pairs = as.size() <= 64;
    for (std::size_t i = 0; i < as.size(); ++i) {
      const std::size_t jend = full_pairs ? as.size() : std::min(as.size(), i + 2);
      for (std::size_t j = i + 1; j < jend; ++j) {
        push_cross_parts(as[i].adjoint() * as[j], enriched);
      }
    }
  }
  auto sim = detail::simultaneous_diagonalize(enriched, tol);
  if (!sim.converged) sim = detail::simultaneous_diagonalize(right_all, tol);
  const ComplexMatrix q_n = sim.w.adjoint();
  const ComplexMatrix q_n_dag = sim.w;

  // Per-mode bases oriented against q_n via the slice columns.
  std::vector<ComplexMatrix> ps;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t dk = dims[k];
    const std::size_t cslots = std::min(dk, dims[last]);
    std::vector<std::optional<CVector>> cand(dk);
    for (const auto& a : fam.sets[k].matrices) {
      const ComplexMatrix b = a * q_n_dag;
      for (std::size_t l = 0; l < cslots; ++l) {
        const CVector col = b.column(l);
        const double nrm = vec_norm(col);
        if (nrm > kZeroDirection && (!cand[l] || nrm > vec_norm(*cand[l]))) cand[l] = col;
      }
    }
    // Candidates are column directions of a left unitary; reuse the row
    // assembler on the transposed pattern.
    ComplexMatrix rows = assemble_unitary_rows(cand, dk);
    ps.push_back(rows.transpose());
  }

  // Transform to the candidate product basis; a decomposable state is then
  // supported on the diagonal.
  StateTensor work = psi;
  for (std::size_t k = 0; k + 1 < n; ++k) work = apply_local_unitary(work, k, ps[k].adjoint());
  work = apply_local_unitary(work, last, q_n.conjugate());

  const std::size_t r_slots = *std::min_element(dims.begin(), dims.end());
  std::vector<Complex> diag(r_slots);
  double diag_mass = 0.0;
  for (std::size_t l = 0; l < r_slots; ++l) {
    std::vector<std::size_t> multi(n, l);
    diag[l] = work.amps()[work.flat_index(multi)];
    diag_mass += std::norm(diag[l]);
  }
  const double total_mass = vec_norm(work.amps());
  const double off_mass =
      std::sqrt(std::max(0.0, total_mass * total_mass - diag_mass));
  const bool support_ok = tol.within(off_mass, std::max(total_mass, 1.0));
  central_ok = central_ok && support_ok;

  std::vector<double> lambda(r_slots);
  for (std::size_t l = 0; l < r_slots; ++l) lambda[l] = std::abs(diag[l]);

  SchmidtDecomposition cand;
  cand.vectors.resize(n);
  for (const auto& term : ranked_slots(lambda)) {
    const std::size_t l = term.slot;
    cand.coeffs.push_back(term.lambda);
    for (std::size_t k = 0; k + 1 < n; ++k) cand.vectors[k].push_back(ps[k].column(l));
    CVector vlast = q_n.row(l);
    vec_scale(vlast, diag[l] / term.lambda);  // absorb the readout phase
    cand.vectors[last].push_back(std::move(vlast));
  }

  const bool stages_ok = pc_ok && central_ok;
  const FailureReason reason =
      !pc_ok ? FailureReason::NotPositivelyCommuting : FailureReason::NotCentral;
  return finish_verdict(psi, std::move(cand), stages_ok, reason, accept_tol);
}

DecomposabilityVerdict decompose(const StateTensor& psi, const Tolerance& tol,
                                 double accept_tol) {
  switch (psi.subsystems()) {
    case 2:
      return decompose_multipartite(psi, tol, accept_tol);
    case 3:
      return decompose_tripartite(psi, tol, accept_tol);
    case 4:
      return decompose_quadripartite(psi, tol, accept_tol);
    default:
      return decompose_multipartite(psi, tol, accept_tol);
  }
}

}  // namespace schmidt
