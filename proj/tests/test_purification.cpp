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

#include "schmidt/bipartite.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/purification.hpp"
#include "schmidt/rng.hpp"
#include "support/test_helpers.hpp"

using namespace schmidt;
using namespace test_support;

namespace {

DensityMatrix pure_density(const StateTensor& psi) {
  const std::size_t d = psi.total_dim();
  ComplexMatrix rho(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rho(r, c) = psi.amps()[r] * std::conj(psi.amps()[c]);
  return DensityMatrix::unchecked(std::move(rho));
}

}  // namespace

TEST_CASE("purifying a projector gives a product state") {
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 1.0;
  const StateTensor ar = purify(DensityMatrix(std::move(rho)), 1);
  CHECK(ar.dims() == std::vector<std::size_t>{2, 1});
  CHECK(std::abs(ar.amps()[0] - Complex{1.0, 0.0}) < 1e-14);

  ComplexMatrix rho2(2, 2);
  rho2(0, 0) = 1.0;
  const StateTensor ar3 = purify(DensityMatrix(std::move(rho2)), 3);
  CHECK(ar3.dims() == std::vector<std::size_t>{2, 3});
  CHECK(schmidt_number_bipartition(ar3, {0}) == 1);
}

TEST_CASE("purifying the maximally mixed qubit gives a bell-type state") {
  ComplexMatrix rho = ComplexMatrix::identity(2);
  rho *= 0.5;
  const StateTensor ar = purify(DensityMatrix(std::move(rho)), 2);
  const auto d = schmidt_bipartite(ar);
  REQUIRE(d.rank() == 2);
  CHECK(d.coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(d.coeffs[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("purification round trip recovers the density") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const ComplexMatrix rho = random_density(4, 3, seed);
    const StateTensor ar = purify(DensityMatrix(rho), 3);
    const auto back = reduced_density(ar, {0});
    CHECK(mat_dist(back.entries(), rho) < 1e-10);
  }
}

TEST_CASE("ancilla below the rank is rejected") {
  const ComplexMatrix rho = random_density(3, 2, 5);
  CHECK_THROWS_AS(purify(DensityMatrix(rho), 1), AncillaTooSmall);
  CHECK_NOTHROW(purify(DensityMatrix(rho), 2));
}

TEST_CASE("identical purifications are linked by a unitary acting as the identity") {
  const ComplexMatrix rho = random_density(3, 3, 7);
  const StateTensor ar = purify(DensityMatrix(rho), 3);
  const ComplexMatrix u = link_purifications(ar, ar);
  CHECK(unitarity_defect(u) < 1e-10);
  const StateTensor mapped = apply_local_unitary(ar, 1, u);
  CHECK(vec_dist(mapped.amps(), ar.amps()) < 1e-9);
}

TEST_CASE("a planted ancilla rotation is undone by the linking unitary") {
  for (std::uint64_t seed : {11, 12}) {
    const ComplexMatrix rho = random_density(4, 3, seed);
    const StateTensor ar1 = purify(DensityMatrix(rho), 3);
    Rng rng(seed + 100);
    const ComplexMatrix w = haar_unitary(3, rng);
    const StateTensor ar2 = apply_local_unitary(ar1, 1, w);
    const ComplexMatrix u = link_purifications(ar1, ar2);
    const StateTensor mapped = apply_local_unitary(ar2, 1, u);
    CHECK(vec_dist(mapped.amps(), ar1.amps()) < 1e-9);
  }
}

TEST_CASE("degenerate spectra are matched blockwise") {
  // Maximally mixed: every unitary fixes the density, the overlap is fully
  // degenerate, and the polar construction must still invert the rotation.
  ComplexMatrix rho = ComplexMatrix::identity(3);
  rho *= 1.0 / 3.0;
  const StateTensor ar1 = purify(DensityMatrix(rho), 3);
  Rng rng(21);
  const ComplexMatrix w = haar_unitary(3, rng);
  const StateTensor ar2 = apply_local_unitary(ar1, 1, w);
  const ComplexMatrix u = link_purifications(ar1, ar2);
  const StateTensor mapped = apply_local_unitary(ar2, 1, u);
  CHECK(vec_dist(mapped.amps(), ar1.amps()) < 1e-9);
}

TEST_CASE("purifications of different densities are rejected") {
  ComplexMatrix rho1(2, 2), rho2(2, 2);
  rho1(0, 0) = 1.0;
  rho2(0, 0) = 0.9;
  rho2(1, 1) = 0.1;
  const StateTensor ar1 = purify(DensityMatrix(std::move(rho1)), 2);
  const StateTensor ar2 = purify(DensityMatrix(std::move(rho2)), 2);
  CHECK_THROWS_AS(link_purifications(ar1, ar2), NotSamePurification);
}

TEST_CASE("purify then reduce preserves canonical coefficients") {
  for (std::uint64_t seed : {31, 32}) {
    const StateTensor psi = haar_state({3, 4}, seed);
    const auto original = schmidt_bipartite(psi);
    const StateTensor re = purify(reduced_density(psi, {0}), 4);
    const auto again = schmidt_bipartite(re);
    REQUIRE(original.rank() == again.rank());
    CHECK(max_coeff_gap(original.coeffs, again.coeffs) < 1e-9);
  }
}

TEST_CASE("classification of purifications") {
  const auto g = classify_purification(pure_density(ghz(3)), {2, 2, 2});
  CHECK(g.decomposable);

  const auto w = classify_purification(pure_density(w3()), {2, 2, 2});
  CHECK_FALSE(w.decomposable);

  // Verdicts agree across purifications of the same density.
  for (std::uint64_t seed : {41, 42, 43}) {
    const ComplexMatrix rho = random_density(4, 2, seed);
    const DensityMatrix dm(rho);
    const auto direct = classify_purification(dm, {2, 2});

    const StateTensor ar = purify(dm, 2);
    Rng rng(seed + 7);
    const StateTensor rotated = apply_local_unitary(ar, 1, haar_unitary(2, rng));
    const StateTensor alt = StateTensor::unchecked({2, 2, 2}, rotated.amps());
    const auto indirect = decompose_multipartite(alt);
    CHECK(direct.decomposable == indirect.decomposable);
  }

  CHECK_THROWS_AS(classify_purification(pure_density(ghz(3)), {2, 2}), ShapeMismatch);
}
