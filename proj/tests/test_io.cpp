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

#include "schmidt/errors.hpp"
#include "schmidt/io.hpp"
#include "support/test_helpers.hpp"

using namespace schmidt;
using namespace test_support;

TEST_CASE("state documents load with validation") {
  const StateTensor a = load_state(R"({"dims":[2,2],"amps":[[1,0],[0,0],[0,0],[0,0]]})");
  CHECK(a.dims() == std::vector<std::size_t>{2, 2});
  CHECK(a.amps()[0] == Complex{1.0, 0.0});

  const StateTensor b = load_state(
      R"({"dims":[2,2],"amps":[[1,0],[0,0],[0,0],[1,0]],"normalize":true})");
  CHECK(std::abs(b.amps()[0].real() - 1.0 / std::sqrt(2.0)) < 1e-14);

  CHECK_THROWS_AS(load_state(R"({"dims":[2,2],"amps":[[1,0],[0,0],[0,0]]})"), DimensionMismatch);
  CHECK_THROWS_AS(load_state(R"({"dims":[2,2],"amps":[[1,0],[0,0],[0,0],[1,0]]})"), NotNormalized);
  CHECK_THROWS_AS(load_state("not json"), ParseError);
  CHECK_THROWS_AS(load_state(R"({"amps":[[1,0]]})"), ParseError);
  CHECK_THROWS_AS(load_state(R"({"dims":[2,0],"amps":[]})"), ParseError);
  CHECK_THROWS_AS(load_state(R"({"dims":[2,2],"amps":[1,0,0,0]})"), ParseError);
}

TEST_CASE("state round trip") {
  const StateTensor psi = haar_state({2, 3, 2}, 77);
  const StateTensor back = load_state(save_state(psi));
  CHECK(back.dims() == psi.dims());
  CHECK(vec_dist(back.amps(), psi.amps()) < 1e-15);
}

TEST_CASE("decomposition round trip") {
  auto [psi, planted] = random_decomposable({2, 2, 2}, 2, 5);
  const auto canon = canonicalize(planted);
  const auto doc = load_decomposition(save_decomposition(canon, 1.25e-12));
  CHECK(doc.residual == doctest::Approx(1.25e-12));
  CHECK(decomp_gap(doc.decomposition, canon) < 1e-15);

  CHECK_THROWS_AS(load_decomposition(R"({"coeffs":[1.0]})"), ParseError);
  CHECK_THROWS_AS(load_decomposition(R"({"rank":2,"coeffs":[1.0],"vectors":[[[[1,0]]]]})"),
                  ParseError);
}

TEST_CASE("density round trip") {
  const ComplexMatrix rho = random_density(4, 2, 9);
  const auto doc = load_density(save_density({2, 2}, DensityMatrix(rho)));
  CHECK(doc.dims == std::vector<std::size_t>{2, 2});
  CHECK(mat_dist(doc.rho.entries(), rho) < 1e-15);

  CHECK_THROWS_AS(load_density(R"({"dims":[2],"density":[[1,0]]})"), DimensionMismatch);
  CHECK_THROWS_AS(load_density(R"({"dims":[2]})"), ParseError);
}

TEST_CASE("missing files raise parse errors") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/path/x.json"), ParseError);
}
