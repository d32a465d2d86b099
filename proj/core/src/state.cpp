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

#include "schmidt/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schmidt/errors.hpp"
#include "schmidt/rng.hpp"

namespace schmidt {

namespace {

constexpr double kTieTol = 1e-9;   // coefficient near-ties share an order group
constexpr double kLexEps = 1e-9;   // entry comparison slack for tie-breaking
constexpr double kMinCoeffSeparation = 0.05;

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw WrongArity("need at least two subsystems");
  for (auto d : dims)
    if (d == 0) throw DimensionMismatch("zero subsystem dimension");
}

// Odometer over a multi-index; returns false after the last index.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// Descending lexicographic comparison of complex vectors with slack, used to
// order terms whose coefficients tie.
bool lex_before(const CVector& a, const CVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dre = a[i].real() - b[i].real();
    if (std::abs(dre) > kLexEps) return dre > 0;
    const double dim = a[i].imag() - b[i].imag();
    if (std::abs(dim) > kLexEps) return dim > 0;
  }
  return false;
}

}  // namespace

StateTensor::StateTensor(std::vector<std::size_t> dims, CVector amps, Normalization mode,
                         const Tolerance& tol) {
  check_dims(dims);
  if (amps.size() != product(dims)) {
    throw DimensionMismatch("expected " + std::to_string(product(dims)) +
                            " amplitudes, got " + std::to_string(amps.size()));
  }
  for (const auto& a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw DimensionMismatch("non-finite amplitude");

  const double nrm = vec_norm(amps);
  if (mode == Normalization::Auto) {
    if (nrm == 0.0) throw NotNormalized("zero state cannot be normalized");
    vec_scale(amps, 1.0 / nrm);
  } else if (!tol.within(std::abs(nrm - 1.0), 1.0)) {
    throw NotNormalized("state norm " + std::to_string(nrm));
  }
  dims_ = std::move(dims);
  amps_ = std::move(amps);
}

StateTensor StateTensor::unchecked(std::vector<std::size_t> dims, CVector amps) {
  StateTensor out;
  out.dims_ = std::move(dims);
  out.amps_ = std::move(amps);
  return out;
}

std::size_t StateTensor::flat_index(const std::vector<std::size_t>& multi) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) flat = flat * dims_[k] + multi[k];
  return flat;
}

std::vector<std::size_t> StateTensor::unflatten(std::size_t flat) const {
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    multi[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return multi;
}

MatrixSet matrix_set_tripartite(const StateTensor& psi) {
  if (psi.subsystems() != 3) throw WrongArity("tripartite slicing needs 3 subsystems");
  const auto& d = psi.dims();
  MatrixSet out;
  for (std::size_t i = 0; i < d[0]; ++i) {
    ComplexMatrix a(d[1], d[2]);
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) a(j, k) = psi.amps()[(i * d[1] + j) * d[2] + k];
    out.labels.push_back({i});
    out.matrices.push_back(std::move(a));
  }
  return out;
}

MatrixSet matrix_set_quadripartite(const StateTensor& psi) {
  if (psi.subsystems() != 4) throw WrongArity("quadripartite slicing needs 4 subsystems");
  const auto& d = psi.dims();
  MatrixSet out;
  for (std::size_t l = 0; l < d[0]; ++l) {
    for (std::size_t m = 0; m < d[1]; ++m) {
      ComplexMatrix a(d[2], d[3]);
      for (std::size_t n = 0; n < d[2]; ++n)
        for (std::size_t o = 0; o < d[3]; ++o)
          a(n, o) = psi.amps()[((l * d[1] + m) * d[2] + n) * d[3] + o];
      out.labels.push_back({l, m});
      out.matrices.push_back(std::move(a));
    }
  }
  return out;
}

MatrixFamily build_matrix_family(const StateTensor& psi) {
  const std::size_t n = psi.subsystems();
  if (n < 3) throw WrongArity("matrix family needs at least 3 subsystems");
  const auto& dims = psi.dims();
  const std::size_t last = n - 1;

  MatrixFamily fam;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    MatrixSet set;
    std::vector<std::size_t> fixed_dims;
    std::vector<std::size_t> fixed_modes;
    for (std::size_t m = 0; m < n; ++m) {
      if (m != k && m != last) {
        fixed_modes.push_back(m);
        fixed_dims.push_back(dims[m]);
      }
    }
    std::vector<std::size_t> fixed(fixed_dims.size(), 0);
    std::vector<std::size_t> multi(n, 0);
    do {
      ComplexMatrix a(dims[k], dims[last]);
      for (std::size_t t = 0; t < fixed_modes.size(); ++t) multi[fixed_modes[t]] = fixed[t];
      for (std::size_t ik = 0; ik < dims[k]; ++ik) {
        multi[k] = ik;
        for (std::size_t in = 0; in < dims[last]; ++in) {
          multi[last] = in;
          a(ik, in) = psi.amps()[psi.flat_index(multi)];
        }
      }
      set.labels.push_back(fixed);
      set.matrices.push_back(std::move(a));
    } while (!fixed.empty() && advance(fixed, fixed_dims));
    if (set.matrices.empty()) {
      // n == 2 cannot reach here; every set has at least the empty fixed index.
      throw WrongArity("empty matrix set");
    }
    fam.sets.push_back(std::move(set));
  }
  return fam;
}

ComplexMatrix bipartition_matrix(const StateTensor& psi, const std::vector<std::size_t>& left) {
  const std::size_t n = psi.subsystems();
  std::vector<bool> in_left(n, false);
  for (auto k : left) {
    if (k >= n) throw BadPartition("subsystem index out of range");
    if (in_left[k]) throw BadPartition("duplicate subsystem index");
    in_left[k] = true;
  }
  if (left.empty() || left.size() == n) throw BadPartition("need a proper nonempty subset");

  std::vector<std::size_t> lmodes, rmodes;
  for (std::size_t k = 0; k < n; ++k) (in_left[k] ? lmodes : rmodes).push_back(k);

  std::size_t rows = 1, cols = 1;
  for (auto k : lmodes) rows *= psi.dim(k);
  for (auto k : rmodes) cols *= psi.dim(k);

  ComplexMatrix m(rows, cols);
  std::vector<std::size_t> multi(n, 0);
  std::size_t flat = 0;
  do {
    std::size_t r = 0, c = 0;
    for (auto k : lmodes) r = r * psi.dim(k) + multi[k];
    for (auto k : rmodes) c = c * psi.dim(k) + multi[k];
    m(r, c) = psi.amps()[flat];
    ++flat;
  } while (advance(multi, psi.dims()));
  return m;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();

  // Modified Gram-Schmidt with one reorthogonalization pass; the positive
  // diagonal of the implicit R fixes the phase gauge.
  std::vector<CVector> cols;
  for (std::size_t j = 0; j < dim; ++j) {
    CVector v = g.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : cols) {
        const Complex ov = vec_dot(u, v);
        for (std::size_t r = 0; r < dim; ++r) v[r] -= ov * u[r];
      }
    }
    double nrm = vec_norm(v);
    while (nrm < 1e-8) {  // essentially never: redraw the column
      for (std::size_t r = 0; r < dim; ++r) v[r] = rng.complex_gaussian();
      for (const auto& u : cols) {
        const Complex ov = vec_dot(u, v);
        for (std::size_t r = 0; r < dim; ++r) v[r] -= ov * u[r];
      }
      nrm = vec_norm(v);
    }
    vec_scale(v, 1.0 / nrm);
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) u.set_column(j, cols[j]);
  return u;
}

StateTensor haar_state(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  check_dims(dims);
  Rng rng(seed);
  CVector amps(product(dims));
  for (auto& a : amps) a = rng.complex_gaussian();
  const double nrm = vec_norm(amps);
  vec_scale(amps, 1.0 / nrm);
  return StateTensor::unchecked(dims, std::move(amps));
}

std::pair<StateTensor, SchmidtDecomposition> random_decomposable(
    const std::vector<std::size_t>& dims, std::size_t rank, std::uint64_t seed) {
  check_dims(dims);
  const std::size_t dmin = *std::min_element(dims.begin(), dims.end());
  if (rank < 1 || rank > dmin) {
    throw BadRank("rank " + std::to_string(rank) + " outside [1, " + std::to_string(dmin) + "]");
  }

  Rng rng(seed);
  std::vector<double> lambda(rank);
  bool ok = false;
  for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
    double ss = 0.0;
    for (auto& l : lambda) {
      l = rng.uniform(0.05, 1.0);
      ss += l * l;
    }
    const double inv = 1.0 / std::sqrt(ss);
    for (auto& l : lambda) l *= inv;
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    ok = lambda.back() >= kMinCoeffSeparation;
    for (std::size_t i = 0; ok && i + 1 < rank; ++i)
      ok = lambda[i] - lambda[i + 1] >= kMinCoeffSeparation;
  }
  if (!ok) {
    // Deterministic well-separated fallback.
    double ss = 0.0;
    for (std::size_t i = 0; i < rank; ++i) {
      lambda[i] = 1.0 + 0.35 * static_cast<double>(rank - 1 - i);
      ss += lambda[i] * lambda[i];
    }
    const double inv = 1.0 / std::sqrt(ss);
    for (auto& l : lambda) l *= inv;
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
  }

  SchmidtDecomposition planted;
  planted.coeffs = lambda;
  planted.vectors.resize(dims.size());
  std::vector<ComplexMatrix> us;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    ComplexMatrix u = haar_unitary(dims[k], rng);
    for (std::size_t l = 0; l < rank; ++l) planted.vectors[k].push_back(u.column(l));
    us.push_back(std::move(u));
  }

  CVector amps(product(dims), 0.0);
  std::vector<std::size_t> multi(dims.size(), 0);
  std::size_t flat = 0;
  do {
    Complex sum = 0.0;
    for (std::size_t l = 0; l < rank; ++l) {
      Complex term = lambda[l];
      for (std::size_t k = 0; k < dims.size(); ++k) term *= us[k](multi[k], l);
      sum += term;
    }
    amps[flat++] = sum;
  } while (advance(multi, dims));

  return {StateTensor::unchecked(dims, std::move(amps)), std::move(planted)};
}

StateTensor reconstruct(const SchmidtDecomposition& decomp, const std::vector<std::size_t>& dims) {
  check_dims(dims);
  if (decomp.subsystems() != dims.size()) throw ShapeMismatch("subsystem count mismatch");
  const std::size_t rank = decomp.rank();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (decomp.vectors[k].size() != rank) throw ShapeMismatch("ragged vector lists");
    for (const auto& v : decomp.vectors[k])
      if (v.size() != dims[k]) throw ShapeMismatch("vector length mismatch");
  }

  CVector amps(product(dims), 0.0);
  std::vector<std::size_t> multi(dims.size(), 0);
  std::size_t flat = 0;
  do {
    Complex sum = 0.0;
    for (std::size_t l = 0; l < rank; ++l) {
      Complex term = decomp.coeffs[l];
      for (std::size_t k = 0; k < dims.size(); ++k) term *= decomp.vectors[k][l][multi[k]];
      sum += term;
    }
    amps[flat++] = sum;
  } while (advance(multi, dims));
  return StateTensor::unchecked(dims, std::move(amps));
}

double reconstruction_residual(const SchmidtDecomposition& decomp, const StateTensor& psi) {
  const StateTensor rec = reconstruct(decomp, psi.dims());
  return vec_dist(rec.amps(), psi.amps());
}

SchmidtDecomposition canonicalize(const SchmidtDecomposition& decomp) {
  SchmidtDecomposition out = decomp;
  const std::size_t n = out.subsystems();
  const std::size_t rank = out.rank();
  if (n == 0 || rank == 0) return out;

  for (std::size_t l = 0; l < rank; ++l) {
    Complex carried = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      auto& v = out.vectors[k][l];
      std::size_t imax = 0;
      double best = -1.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) {
          best = a;
          imax = i;
        }
      }
      if (best <= 0.0) continue;
      const Complex ph = v[imax] / best;
      vec_scale(v, std::conj(ph));
      carried *= ph;
    }
    vec_scale(out.vectors[n - 1][l], carried);
  }

  std::vector<std::size_t> order(rank);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.coeffs[a] > out.coeffs[b]; });
  // Near-equal coefficients form a group ordered by the first subsystem's vectors.
  std::size_t start = 0;
  while (start < rank) {
    std::size_t end = start + 1;
    while (end < rank &&
           out.coeffs[order[end - 1]] - out.coeffs[order[end]] <= kTieTol)
      ++end;
    std::stable_sort(order.begin() + start, order.begin() + end, [&](std::size_t a, std::size_t b) {
      return lex_before(out.vectors[0][a], out.vectors[0][b]);
    });
    start = end;
  }

  SchmidtDecomposition sorted;
  sorted.coeffs.reserve(rank);
  sorted.vectors.resize(n);
  for (auto idx : order) sorted.coeffs.push_back(out.coeffs[idx]);
  for (std::size_t k = 0; k < n; ++k) {
    sorted.vectors[k].reserve(rank);
    for (auto idx : order) sorted.vectors[k].push_back(std::move(out.vectors[k][idx]));
  }
  return sorted;
}

void validate_decomposition(const SchmidtDecomposition& decomp,
                            const std::vector<std::size_t>& dims, const Tolerance& tol) {
  if (decomp.subsystems() != dims.size()) throw ShapeMismatch("subsystem count mismatch");
  const std::size_t rank = decomp.rank();
  if (rank == 0) throw ShapeMismatch("empty decomposition");
  const std::size_t dmin = *std::min_element(dims.begin(), dims.end());
  if (rank > dmin) throw ShapeMismatch("rank exceeds smallest subsystem dimension");

  double ss = 0.0;
  for (std::size_t l = 0; l < rank; ++l) {
    if (decomp.coeffs[l] <= 0.0) throw NotNormalized("non-positive coefficient");
    if (l + 1 < rank && decomp.coeffs[l] < decomp.coeffs[l + 1] - 1e-12)
      throw NotNormalized("coefficients not descending");
    ss += decomp.coeffs[l] * decomp.coeffs[l];
  }
  if (!tol.within(std::abs(ss - 1.0), 10.0)) {
    throw NotNormalized("coefficient square sum " + std::to_string(ss));
  }

  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (decomp.vectors[k].size() != rank) throw ShapeMismatch("ragged vector lists");
    double defect = 0.0;
    for (std::size_t a = 0; a < rank; ++a) {
      if (decomp.vectors[k][a].size() != dims[k]) throw ShapeMismatch("vector length mismatch");
      for (std::size_t b = 0; b < rank; ++b) {
        const Complex g = vec_dot(decomp.vectors[k][a], decomp.vectors[k][b]);
        const Complex want = (a == b) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
        defect += std::norm(g - want);
      }
    }
    if (!tol.within(std::sqrt(defect), 10.0 * static_cast<double>(rank))) {
      throw NotNormalized("subsystem " + std::to_string(k) + " vectors not orthonormal");
    }
  }
}

StateTensor apply_local_unitary(const StateTensor& psi, std::size_t mode,
                                const ComplexMatrix& u) {
  if (mode >= psi.subsystems()) throw ShapeMismatch("mode out of range");
  const std::size_t d = psi.dim(mode);
  if (u.rows() != d || u.cols() != d) throw ShapeMismatch("unitary size mismatch");

  std::size_t stride = 1;
  for (std::size_t k = mode + 1; k < psi.subsystems(); ++k) stride *= psi.dim(k);
  const std::size_t block = stride * d;

  CVector out(psi.total_dim(), 0.0);
  const CVector& in = psi.amps();
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (std::size_t m = 0; m < d; ++m) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) sum += u(m, i) * in[base + i * stride + off];
        out[base + m * stride + off] = sum;
      }
    }
  }
  return StateTensor::unchecked(psi.dims(), std::move(out));
}

}  // namespace schmidt
