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

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "schmidt/state.hpp"

namespace schmidt {

using BigInt = boost::multiprecision::cpp_int;

/// Dimension list plus the target Schmidt number.  Products are exact; the
/// solver never compares through floating-point logs.
struct PartitionInstance {
  std::vector<std::size_t> dims;  // each >= 2
  BigInt k;                       // >= 1

  void validate() const;
};

/// A two-block split of the subsystems with exact side products.
struct Bipartition {
  std::vector<std::size_t> left;   // 0-based subsystem indices, ascending
  std::vector<std::size_t> right;  // complement, ascending
  BigInt left_product;
  BigInt right_product;

  BigInt min_product() const { return left_product < right_product ? left_product : right_product; }
};

/// A bipartition whose smaller side product reaches at least k, or nullopt.
/// Exhaustive below 20 subsystems, meet-in-the-middle up to 40
/// (InstanceTooLarge beyond).
std::optional<Bipartition> solve_partition(const PartitionInstance& inst);

/// The bipartition maximizing the smaller side product, and that maximum.
/// Ties are broken toward the lexicographically smallest left index list.
std::pair<Bipartition, BigInt> max_schmidt_partition(const std::vector<std::size_t>& dims);

/// Maximally entangled state across the cut: uniform coefficients over
/// min(left, right) matched basis pairs.  The full tensor must fit in memory.
StateTensor witness_state(const Bipartition& bip, const std::vector<std::size_t>& dims);

}  // namespace schmidt
