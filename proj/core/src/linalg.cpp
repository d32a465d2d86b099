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

#include "schmidt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schmidt/errors.hpp"
#include "schmidt/rng.hpp"

namespace schmidt {

namespace {

constexpr int kMaxSweeps = 100;
constexpr int kMaxRetries = 5;
constexpr int kMaxRefineDepth = 6;
constexpr std::uint64_t kJointDiagSeed = 0x9e3779b97f4a7c15ull;

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) throw ShapeMismatch(std::string(who) + ": matrix not square");
}

// One cyclic Jacobi sweep target: drive the off-diagonal mass below
// `target`.  The rotation for the (p, q) plane factors the off-diagonal
// phase out first, then applies the classic real rotation.
void jacobi_rotate(ComplexMatrix& h, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex b = h(p, q);
  const double absb = std::abs(b);
  if (absb == 0.0) return;
  const Complex phase = b / absb;  // e^{i beta}
  const double a = h(p, p).real();
  const double d = h(q, q).real();
  const double tau = (d - a) / (2.0 * absb);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex cphase = std::conj(phase);

  const std::size_t n = h.rows();
  // h <- h * u, with u = [[c, s], [-s e^{-i beta}, c e^{-i beta}]] on (p, q).
  for (std::size_t k = 0; k < n; ++k) {
    const Complex hp = h(k, p);
    const Complex hq = h(k, q);
    h(k, p) = c * hp - s * cphase * hq;
    h(k, q) = s * hp + c * cphase * hq;
  }
  // h <- u^dagger * h.
  for (std::size_t k = 0; k < n; ++k) {
    const Complex hp = h(p, k);
    const Complex hq = h(q, k);
    h(p, k) = c * hp - s * phase * hq;
    h(q, k) = s * hp + c * phase * hq;
  }
  h(p, q) = 0.0;
  h(q, p) = 0.0;
  h(p, p) = h(p, p).real();
  h(q, q) = h(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vp = v(k, p);
    const Complex vq = v(k, q);
    v(k, p) = c * vp - s * cphase * vq;
    v(k, q) = s * vp + c * cphase * vq;
  }
}

// Makes the largest-magnitude entry of column j real positive.
void fix_column_phase(ComplexMatrix& m, std::size_t j) {
  std::size_t imax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double a = std::abs(m(i, j));
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  const Complex ph = std::conj(m(imax, j) / best);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= ph;
}

detail::SimDiagResult simdiag_impl(const std::vector<ComplexMatrix>& ms,
                                   const Tolerance& tol, std::uint64_t seed, int depth);

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "hermitian_eig");
  if (!m.all_finite()) throw NotHermitian("non-finite entries");
  const std::size_t n = m.rows();
  const double fro = m.frobenius_norm();
  const double herm_defect = (m - m.adjoint()).frobenius_norm();
  if (!tol.within(herm_defect, fro)) {
    throw NotHermitian("defect " + std::to_string(herm_defect));
  }

  // Symmetrize, then run cyclic Jacobi well past the requested tolerance so
  // downstream rank decisions see a clean spectrum.
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);

  EigenSystem out;
  out.values.assign(n, 0.0);
  if (fro == 0.0 || n == 0) {
    out.basis = std::move(v);
    return out;
  }

  const double target = std::min(tol.eps, 1e-13) * fro;
  const double skip = target / (4.0 * static_cast<double>(n));
  bool done = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(h) <= target) {
      done = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(h(p, q)) > skip) jacobi_rotate(h, v, p, q);
      }
    }
  }
  if (!done && off_diagonal_norm(h) > target) {
    throw NoConvergence("hermitian_eig: sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return h(a, a).real() > h(b, b).real(); });

  out.basis = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = h(order[j], order[j]).real();
    out.basis.set_column(j, v.column(order[j]));
    fix_column_phase(out.basis, j);
  }
  return out;
}

SvdResult svd(const ComplexMatrix& a, const Tolerance& tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);
  SvdResult out;
  out.sigma.assign(k, 0.0);

  const double fro = a.frobenius_norm();
  if (fro == 0.0 || k == 0) {
    out.p = ComplexMatrix::identity(m);
    out.q = ComplexMatrix::identity(n);
    return out;
  }

  // Gram route: a^dagger a = q^dagger diag(sigma^2) q.  Singular values are
  // read off the action ||a z_i|| rather than sqrt(eigenvalue): the latter
  // floors small values at sqrt(eps) * sigma_max, the former at eps.
  const EigenSystem es = hermitian_eig(a.adjoint() * a, tol);
  std::vector<CVector> action(k);
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) {
    action[i] = matvec(a, es.basis.column(i));
    perm[i] = i;
  }
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return vec_norm(action[x]) > vec_norm(action[y]);
  });

  out.q = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = j < k ? perm[j] : j;
    const CVector col = es.basis.column(src);
    for (std::size_t c = 0; c < n; ++c) out.q(j, c) = std::conj(col[c]);
  }
  for (std::size_t j = 0; j < k; ++j) out.sigma[j] = vec_norm(action[perm[j]]);

  const double cutoff = out.sigma[0] * 1e-12;
  std::vector<CVector> left;
  left.reserve(k);
  for (std::size_t j = 0; j < k && out.sigma[j] > cutoff; ++j) {
    CVector p = action[perm[j]];
    vec_scale(p, 1.0 / out.sigma[j]);
    // Clean residual overlap with the columns already accepted.
    for (const auto& prev : left) {
      const Complex ov = vec_dot(prev, p);
      for (std::size_t r = 0; r < p.size(); ++r) p[r] -= ov * prev[r];
    }
    const double nrm = vec_norm(p);
    if (nrm == 0.0) break;
    vec_scale(p, 1.0 / nrm);
    left.push_back(std::move(p));
  }
  const std::size_t ranked = left.size();
  left = detail::complete_orthonormal(std::move(left), m);

  out.p = ComplexMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) out.p.set_column(i, left[i]);

  // Phase convention: largest entry of each ranked left vector real positive,
  // compensated in the matching row of q.
  for (std::size_t i = 0; i < ranked; ++i) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double v = std::abs(out.p(r, i));
      if (v > best) {
        best = v;
        imax = r;
      }
    }
    if (best <= 0.0) continue;
    const Complex ph = out.p(imax, i) / best;
    const Complex cph = std::conj(ph);
    for (std::size_t r = 0; r < m; ++r) out.p(r, i) *= cph;
    for (std::size_t c = 0; c < n; ++c) out.q(i, c) *= ph;
  }
  return out;
}

double commutator_defect(const ComplexMatrix& x, const ComplexMatrix& y) {
  const double num = (x * y - y * x).frobenius_norm();
  return num / std::max(1.0, x.frobenius_norm() * y.frobenius_norm());
}

bool commutes(const ComplexMatrix& x, const ComplexMatrix& y, const Tolerance& tol) {
  require_square(x, "commutes");
  require_square(y, "commutes");
  if (x.rows() != y.rows()) throw ShapeMismatch("commutes: size mismatch");
  return commutator_defect(x, y) <= tol.eps;
}

bool is_unitary(const ComplexMatrix& u, const Tolerance& tol) {
  require_square(u, "is_unitary");
  return unitarity_defect(u) <= tol.eps * static_cast<double>(u.rows());
}

double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::identity(u.cols())).frobenius_norm();
}

ComplexMatrix polar_unitary(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "polar_unitary");
  const SvdResult s = svd(m, tol);
  return s.p * s.q;
}

ComplexMatrix joint_diagonalize(const std::vector<ComplexMatrix>& ms, const Tolerance& tol) {
  if (ms.empty()) throw ShapeMismatch("joint_diagonalize: empty family");
  const std::size_t n = ms[0].rows();
  for (const auto& m : ms) {
    require_square(m, "joint_diagonalize");
    if (m.rows() != n) throw ShapeMismatch("joint_diagonalize: size mismatch");
  }
  if (ms.size() == 1) return hermitian_eig(ms[0], tol).basis;

  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const double defect = commutator_defect(ms[i], ms[j]);
      if (defect > tol.eps) {
        throw NotCommuting("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") defect " + std::to_string(defect));
      }
    }
  }

  const detail::SimDiagResult res = detail::simultaneous_diagonalize(ms, tol);
  if (!res.converged) {
    throw NoConvergence("joint_diagonalize: residual off-diagonal mass " +
                        std::to_string(res.worst_rel_offdiag));
  }
  return res.w;
}

namespace detail {

std::vector<CVector> complete_orthonormal(std::vector<CVector> accepted, std::size_t dim) {
  while (accepted.size() < dim) {
    CVector best;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      CVector cand(dim, 0.0);
      cand[j] = 1.0;
      for (const auto& a : accepted) {
        const Complex ov = vec_dot(a, cand);
        for (std::size_t r = 0; r < dim; ++r) cand[r] -= ov * a[r];
      }
      const double nrm = vec_norm(cand);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = std::move(cand);
      }
    }
    vec_scale(best, 1.0 / best_norm);
    accepted.push_back(std::move(best));
  }
  return accepted;
}

SimDiagResult simultaneous_diagonalize(const std::vector<ComplexMatrix>& ms,
                                       const Tolerance& tol, std::uint64_t seed) {
  return simdiag_impl(ms, tol, seed, 0);
}

}  // namespace detail

namespace {

double worst_rel_offdiag(const std::vector<ComplexMatrix>& ms, const ComplexMatrix& w,
                         std::vector<ComplexMatrix>* conjugated) {
  double worst = 0.0;
  const ComplexMatrix wd = w.adjoint();
  for (const auto& m : ms) {
    ComplexMatrix t = wd * m * w;
    const double nrm = std::max(m.frobenius_norm(), Tolerance::kAbsFloor);
    worst = std::max(worst, off_diagonal_norm(t) / nrm);
    if (conjugated) conjugated->push_back(std::move(t));
  }
  return worst;
}

detail::SimDiagResult simdiag_impl(const std::vector<ComplexMatrix>& ms,
                                   const Tolerance& tol, std::uint64_t seed, int depth) {
  const std::size_t n = ms[0].rows();
  const double accept = std::max(10.0 * tol.eps, 1e-12);

  detail::SimDiagResult best;
  best.w = ComplexMatrix::identity(n);
  best.worst_rel_offdiag = worst_rel_offdiag(ms, best.w, nullptr);
  if (best.worst_rel_offdiag <= accept) {
    best.converged = true;
    return best;
  }

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Rng rng(kJointDiagSeed ^ (seed * 0x2545f4914f6cdd1dull + attempt + 1));
    ComplexMatrix comb(n, n);
    for (const auto& m : ms) {
      const Complex c = rng.uniform(0.5, 1.5);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cidx = 0; cidx < n; ++cidx) comb(r, cidx) += c * m(r, cidx);
    }

    EigenSystem es;
    try {
      es = hermitian_eig(comb, tol);
    } catch (const Error&) {
      continue;
    }
    ComplexMatrix w = es.basis;

    std::vector<ComplexMatrix> conj;
    conj.reserve(ms.size());
    double worst = worst_rel_offdiag(ms, w, &conj);

    if (worst > accept && depth < kMaxRefineDepth) {
      // Residual off-diagonal mass concentrates inside near-degenerate
      // eigenvalue clusters of the combination; refine each cluster with the
      // restricted family.
      double span = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
      const double gap = std::max(1e-8 * std::max(span, 1.0), 1e-12);
      std::size_t start = 0;
      while (start < n) {
        std::size_t end = start + 1;
        while (end < n && es.values[end - 1] - es.values[end] <= gap) ++end;
        if (end - start > 1 && end - start < n) {
          std::vector<ComplexMatrix> sub;
          sub.reserve(conj.size());
          for (const auto& t : conj) {
            ComplexMatrix b = t.block(start, end, start, end);
            b = b + b.adjoint();
            b *= 0.5;
            sub.push_back(std::move(b));
          }
          const auto res = simdiag_impl(sub, tol, seed * 31 + start + 1, depth + 1);
          w.right_multiply_block(start, res.w);
        }
        start = end;
      }
      worst = worst_rel_offdiag(ms, w, nullptr);
    }

    if (worst < best.worst_rel_offdiag) {
      best.w = std::move(w);
      best.worst_rel_offdiag = worst;
    }
    if (best.worst_rel_offdiag <= accept) break;
  }

  best.converged = best.worst_rel_offdiag <= accept;
  return best;
}

}  // namespace

}  // namespace schmidt
