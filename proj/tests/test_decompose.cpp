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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schmidt/decompose.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/rng.hpp"
#include "support/test_helpers.hpp"

using namespace schmidt;
using namespace test_support;

namespace {

// Planted decomposition against a recovered verdict after canonicalization.
void check_recovery(const StateTensor& psi, const SchmidtDecomposition& planted,
                    const DecomposabilityVerdict& v, double coeff_tol = 1e-8) {
  REQUIRE(v.decomposable);
  REQUIRE(v.decomposition.has_value());
  const auto canon = canonicalize(planted);
  CHECK(v.decomposition->rank() == canon.rank());
  CHECK(max_coeff_gap(v.decomposition->coeffs, canon.coeffs) < coeff_tol);
  CHECK(v.residual <= kDefaultAcceptTol);
  CHECK(reconstruction_residual(*v.decomposition, psi) <= kDefaultAcceptTol);
}

}  // namespace

TEST_CASE("check_positively_commuting orients the pair against the slices") {
  const auto set = matrix_set_tripartite(ghz(3));
  const auto pair = check_positively_commuting(set);
  CHECK(is_unitary(pair.p));
  CHECK(is_unitary(pair.q));
  for (const auto& a : set.matrices) {
    CHECK(off_diagonal_norm(pair.p.adjoint() * a * pair.q.adjoint()) < 1e-10);
  }
}

TEST_CASE("positively commuting holds for the w slices but the pair cannot flatten them") {
  const auto set = matrix_set_tripartite(w3());
  const auto pair = check_positively_commuting(set);  // Gram families commute
  for (const auto& a : set.matrices) {
    CHECK(off_diagonal_norm(pair.q * (a.adjoint() * a) * pair.q.adjoint()) < 1e-10);
    CHECK(off_diagonal_norm(pair.p.adjoint() * (a * a.adjoint()) * pair.p) < 1e-10);
  }
}

TEST_CASE("check_positively_commuting rejects non-commuting gram families") {
  MatrixSet set;
  set.labels = {{0}, {1}};
  const double h = 1.0 / std::sqrt(2.0);
  set.matrices = {ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, ComplexMatrix{{h, h}, {0.0, 0.0}}};
  CHECK_THROWS_AS(check_positively_commuting(set), NotPositivelyCommuting);
  try {
    check_positively_commuting(set);
  } catch (const NotPositivelyCommuting& e) {
    CHECK(e.commutator_norm() > 1e-3);
  }
}

TEST_CASE("scaled_unitary_factor") {
  const double h = 1.0 / std::sqrt(2.0);
  const auto f = scaled_unitary_factor(ComplexMatrix{{h, 0.0}, {0.0, h}});
  CHECK(f.lambda[0] == doctest::Approx(h));
  CHECK(f.lambda[1] == doctest::Approx(h));
  CHECK(mat_dist(f.v, ComplexMatrix::identity(2)) < 1e-12);

  const double a = 0.6, b = 0.8;
  const auto g = scaled_unitary_factor(ComplexMatrix{{a, 0.0}, {0.0, b}});
  CHECK(g.lambda[0] == doctest::Approx(a));
  CHECK(g.lambda[1] == doctest::Approx(b));
  CHECK(mat_dist(g.v, ComplexMatrix::identity(2)) < 1e-12);

  // Lambda * v reproduces the input.
  ComplexMatrix rebuilt(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) rebuilt(r, c) = g.lambda[r] * g.v(r, c);
  CHECK(mat_dist(rebuilt, ComplexMatrix{{a, 0.0}, {0.0, b}}) < 1e-12);

  CHECK_THROWS_AS(scaled_unitary_factor(ComplexMatrix{{h, 0.0}, {0.5, 0.5}}), NotScaledUnitary);
  CHECK_THROWS_AS(scaled_unitary_factor(ComplexMatrix{{2.0, 0.0}, {0.0, 0.0}}),
                  NotScaledUnitary);  // trace condition
  CHECK_THROWS_AS(scaled_unitary_factor(ComplexMatrix(2, 3)), ShapeMismatch);
}

TEST_CASE("unit_decompose") {
  ComplexMatrix d0(2, 2), d1(2, 2);
  d0(0, 0) = 1.0;
  d1(1, 1) = 1.0;
  const auto u = unit_decompose({d0, d1});
  CHECK(u.lambda[0] == doctest::Approx(1.0));
  CHECK(u.lambda[1] == doctest::Approx(1.0));
  CHECK(std::abs(vec_dot(u.u[0], u.u[1])) < 1e-12);
  CHECK(std::abs(vec_dot(u.v[0], u.v[1])) < 1e-12);

  ComplexMatrix rank2(2, 2);
  rank2(0, 0) = 0.8;
  rank2(1, 1) = 0.6;
  CHECK_THROWS_AS(unit_decompose({rank2}), NotUnitDecomposable);

  // Planted rank-1 slices with orthonormal assemblies are recovered.
  Rng rng(14);
  const ComplexMatrix uu = haar_unitary(3, rng);
  const ComplexMatrix vv = haar_unitary(3, rng);
  std::vector<double> lam{0.7, 0.5, std::sqrt(1.0 - 0.49 - 0.25)};
  std::vector<ComplexMatrix> ds;
  for (std::size_t k = 0; k < 3; ++k) {
    ComplexMatrix d(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) d(r, c) = lam[k] * uu(r, k) * vv(c, k);
    ds.push_back(std::move(d));
  }
  const auto rec = unit_decompose(ds);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(rec.lambda[k] - lam[k]) < 1e-9);
    CHECK(std::abs(std::abs(vec_dot(rec.u[k], uu.column(k))) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(vec_dot(rec.v[k], vv.column(k))) - 1.0) < 1e-9);
  }
}

TEST_CASE("tripartite decomposition of ghz and basis states") {
  const auto g = decompose_tripartite(ghz(3));
  REQUIRE(g.decomposable);
  REQUIRE(g.decomposition->rank() == 2);
  CHECK(g.decomposition->coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(g.decomposition->coeffs[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto z = decompose_tripartite(basis_state({2, 2, 2}, {1, 0, 1}));
  REQUIRE(z.decomposable);
  CHECK(z.decomposition->rank() == 1);
  CHECK(z.decomposition->coeffs[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(decompose_tripartite(bell()), WrongArity);
}

TEST_CASE("the w state is not decomposable") {
  const auto v = decompose_tripartite(w3());
  CHECK_FALSE(v.decomposable);
  CHECK_FALSE(v.decomposition.has_value());
  CHECK(v.reason != FailureReason::None);
  CHECK(v.residual > 1e-4);

  const auto m = decompose_multipartite(w3());
  CHECK_FALSE(m.decomposable);
  CHECK(m.residual > 1e-4);
}

TEST_CASE("a product of a qubit with a bell pair is not decomposable") {
  // Mode ranks differ across cuts, so no Schmidt form exists.
  CVector amps(8, 0.0);
  amps[0] = 1.0 / std::sqrt(2.0);  // |0>|00>
  amps[3] = 1.0 / std::sqrt(2.0);  // |0>|11>
  const StateTensor psi({2, 2, 2}, std::move(amps));
  const auto v = decompose_tripartite(psi);
  CHECK_FALSE(v.decomposable);
  CHECK(v.residual > 1e-4);
  const auto m = decompose_multipartite(psi);
  CHECK_FALSE(m.decomposable);
}

TEST_CASE("tripartite planted recovery") {
  for (std::uint64_t seed : {2, 5, 8}) {
    auto [psi, planted] = random_decomposable({3, 3, 3}, 3, seed);
    check_recovery(psi, planted, decompose_tripartite(psi));
  }
  // Uneven dimensions exercise the rectangular padding.
  for (std::uint64_t seed : {3, 6}) {
    auto [psi, planted] = random_decomposable({2, 3, 4}, 2, seed);
    check_recovery(psi, planted, decompose_tripartite(psi));
  }
  for (std::uint64_t seed : {4, 7}) {
    auto [psi, planted] = random_decomposable({4, 2, 3}, 2, seed);
    check_recovery(psi, planted, decompose_tripartite(psi));
  }
}

TEST_CASE("quadripartite decomposition") {
  const auto z = decompose_quadripartite(basis_state({2, 2, 2, 2}, {0, 0, 0, 0}));
  REQUIRE(z.decomposable);
  CHECK(z.decomposition->rank() == 1);

  const auto g = decompose_quadripartite(ghz(4));
  REQUIRE(g.decomposable);
  REQUIRE(g.decomposition->rank() == 2);
  CHECK(g.decomposition->coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)));

  for (std::uint64_t seed : {11, 12}) {
    auto [psi, planted] = random_decomposable({2, 2, 3, 3}, 2, seed);
    check_recovery(psi, planted, decompose_quadripartite(psi));
  }
  for (std::uint64_t seed : {13}) {
    auto [psi, planted] = random_decomposable({3, 3, 2, 2}, 2, seed);
    check_recovery(psi, planted, decompose_quadripartite(psi));
  }

  CHECK_THROWS_AS(decompose_quadripartite(ghz(3)), WrongArity);
}

TEST_CASE("multipartite decomposition") {
  const auto g5 = decompose_multipartite(ghz(5));
  REQUIRE(g5.decomposable);
  REQUIRE(g5.decomposition->rank() == 2);
  CHECK(g5.decomposition->coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)));

  for (std::uint64_t seed : {21, 22}) {
    auto [psi, planted] = random_decomposable({2, 2, 2, 2, 2}, 2, seed);
    check_recovery(psi, planted, decompose_multipartite(psi));
  }
  auto [psi, planted] = random_decomposable({3, 4, 2, 3}, 2, 23);
  check_recovery(psi, planted, decompose_multipartite(psi));

  // n = 2 dispatches to the bipartite route.
  const auto b = decompose_multipartite(bell());
  REQUIRE(b.decomposable);
  CHECK(b.decomposition->rank() == 2);
}

TEST_CASE("routes agree on verdicts and canonical decompositions") {
  for (std::uint64_t seed : {31, 32}) {
    auto [psi3, planted3] = random_decomposable({3, 3, 3}, 2, seed);
    const auto t = decompose_tripartite(psi3);
    const auto m = decompose_multipartite(psi3);
    REQUIRE(t.decomposable);
    REQUIRE(m.decomposable);
    CHECK(decomp_gap(*t.decomposition, *m.decomposition) < 1e-8);

    auto [psi4, planted4] = random_decomposable({2, 3, 2, 3}, 2, seed);
    const auto q = decompose_quadripartite(psi4);
    const auto m4 = decompose_multipartite(psi4);
    REQUIRE(q.decomposable);
    REQUIRE(m4.decomposable);
    CHECK(decomp_gap(*q.decomposition, *m4.decomposition) < 1e-8);
  }
  for (std::uint64_t seed : {41, 42}) {
    const StateTensor r3 = haar_state({2, 2, 2}, seed);
    CHECK(decompose_tripartite(r3).decomposable == decompose_multipartite(r3).decomposable);
    const StateTensor r4 = haar_state({2, 2, 2, 2}, seed);
    CHECK(decompose_quadripartite(r4).decomposable == decompose_multipartite(r4).decomposable);
  }
}

TEST_CASE("coefficients are invariant under local unitaries") {
  auto [psi, planted] = random_decomposable({3, 3, 3}, 3, 55);
  Rng rng(56);
  StateTensor rotated = psi;
  for (std::size_t k = 0; k < 3; ++k) {
    rotated = apply_local_unitary(rotated, k, haar_unitary(3, rng));
  }
  const auto a = decompose_tripartite(psi);
  const auto b = decompose_tripartite(rotated);
  REQUIRE(a.decomposable);
  REQUIRE(b.decomposable);
  CHECK(max_coeff_gap(a.decomposition->coeffs, b.decomposition->coeffs) < 1e-8);
}

TEST_CASE("verdicts are deterministic") {
  auto [psi, planted] = random_decomposable({2, 2, 2, 2}, 2, 71);
  const auto a = decompose_multipartite(psi);
  const auto b = decompose_multipartite(psi);
  REQUIRE(a.decomposable == b.decomposable);
  CHECK(a.residual == b.residual);
  CHECK(decomp_gap(*a.decomposition, *b.decomposition) == 0.0);
}

TEST_CASE("dispatcher follows the arity") {
  CHECK(decompose(bell()).decomposable);
  CHECK(decompose(ghz(3)).decomposable);
  CHECK(decompose(ghz(4)).decomposable);
  CHECK(decompose(ghz(6)).decomposable);
  CHECK_FALSE(decompose(w3()).decomposable);
}
