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

#include "schmidt/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidt/errors.hpp"

namespace schmidt {

namespace {

constexpr std::size_t kBruteLimit = 20;     // exhaustive below this
constexpr std::size_t kMaxSubsystems = 40;  // meet-in-the-middle budget
constexpr std::size_t kMaxWitnessAmps = std::size_t{1} << 24;

void validate_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw BadPartition("need at least two subsystems");
  for (auto d : dims)
    if (d < 2) throw BadPartition("subsystem dimensions must be at least 2");
  if (dims.size() > kMaxSubsystems) {
    throw InstanceTooLarge("more than " + std::to_string(kMaxSubsystems) + " subsystems");
  }
}

BigInt total_product(const std::vector<std::size_t>& dims) {
  BigInt t = 1;
  for (auto d : dims) t *= d;
  return t;
}

// Canonical orientation: left is the side with the smaller product (the side
// containing subsystem 0 on an exact tie).
Bipartition from_mask(std::uint64_t mask, const std::vector<std::size_t>& dims) {
  Bipartition b;
  BigInt pin = 1, pout = 1;
  std::vector<std::size_t> in, out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (mask >> i & 1) {
      in.push_back(i);
      pin *= dims[i];
    } else {
      out.push_back(i);
      pout *= dims[i];
    }
  }
  const bool in_is_left = pin < pout || (pin == pout && (mask & 1));
  if (in_is_left) {
    b.left = std::move(in);
    b.right = std::move(out);
    b.left_product = std::move(pin);
    b.right_product = std::move(pout);
  } else {
    b.left = std::move(out);
    b.right = std::move(in);
    b.left_product = std::move(pout);
    b.right_product = std::move(pin);
  }
  return b;
}

bool lex_smaller(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct HalfProducts {
  std::vector<std::pair<BigInt, std::uint64_t>> entries;  // (product, mask), sorted
};

HalfProducts enumerate_half(const std::vector<std::size_t>& dims, std::size_t from,
                            std::size_t to) {
  HalfProducts h;
  const std::size_t bits = to - from;
  h.entries.reserve(std::size_t{1} << bits);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    BigInt p = 1;
    for (std::size_t i = 0; i < bits; ++i)
      if (mask >> i & 1) p *= dims[from + i];
    h.entries.emplace_back(std::move(p), mask);
  }
  std::sort(h.entries.begin(), h.entries.end());
  return h;
}

}  // namespace

void PartitionInstance::validate() const {
  validate_dims(dims);
  if (k < 1) throw BadPartition("target Schmidt number must be at least 1");
}

std::pair<Bipartition, BigInt> max_schmidt_partition(const std::vector<std::size_t>& dims) {
  validate_dims(dims);
  const std::size_t n = dims.size();
  const BigInt total = total_product(dims);

  std::optional<Bipartition> best;
  BigInt best_k = 0;
  auto consider = [&](std::uint64_t mask) {
    if (mask == 0 || mask == (std::uint64_t{1} << n) - 1) return;
    Bipartition b = from_mask(mask, dims);
    const BigInt k = b.min_product();
    if (!best || k > best_k || (k == best_k && lex_smaller(b.left, best->left))) {
      best_k = k;
      best = std::move(b);
    }
  };

  if (n < kBruteLimit) {
    // Fix subsystem 0 on the "in" side so each unordered split appears once.
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) consider(mask);
  } else {
    const std::size_t h = n / 2;
    const HalfProducts lo = enumerate_half(dims, 0, h);
    const HalfProducts hi = enumerate_half(dims, h, n);
    // min(p, total/p) peaks where p^2 approaches total; for each low-half
    // product only the straddling high-half products matter.
    for (const auto& [pa, ma] : lo.entries) {
      const BigInt pa2 = pa * pa;
      std::size_t idx = std::partition_point(hi.entries.begin(), hi.entries.end(),
                                             [&](const auto& e) {
                                               return pa2 * e.first * e.first <= total;
                                             }) -
                        hi.entries.begin();
      // A window around the straddle point also covers entries displaced by
      // the two invalid (empty/full) masks and duplicate products.
      for (std::size_t t = (idx > 2 ? idx - 2 : 0); t < std::min(idx + 2, hi.entries.size());
           ++t) {
        consider(ma | (hi.entries[t].second << h));
      }
    }
  }
  return {std::move(*best), std::move(best_k)};
}

std::optional<Bipartition> solve_partition(const PartitionInstance& inst) {
  inst.validate();
  const std::size_t n = inst.dims.size();
  const BigInt total = total_product(inst.dims);
  const BigInt& k = inst.k;

  // Feasible iff some proper subset product p satisfies p >= k and p * k <= total.
  if (n < kBruteLimit) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      BigInt p = 1;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) p *= inst.dims[i];
      if (p >= k && p * k <= total) return from_mask(mask, inst.dims);
    }
    return std::nullopt;
  }

  const std::size_t h = n / 2;
  const HalfProducts lo = enumerate_half(inst.dims, 0, h);
  const HalfProducts hi = enumerate_half(inst.dims, h, n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (const auto& [pa, ma] : lo.entries) {
    const BigInt need = (k + pa - 1) / pa;  // smallest partner product
    auto it = std::lower_bound(hi.entries.begin(), hi.entries.end(), need,
                               [](const auto& e, const BigInt& v) { return e.first < v; });
    for (; it != hi.entries.end() && pa * it->first * k <= total; ++it) {
      const std::uint64_t mask = ma | (it->second << h);
      if (mask == 0 || mask == full) continue;
      return from_mask(mask, inst.dims);
    }
  }
  return std::nullopt;
}

StateTensor witness_state(const Bipartition& bip, const std::vector<std::size_t>& dims) {
  validate_dims(dims);
  const std::size_t n = dims.size();
  std::vector<bool> seen(n, false);
  for (auto i : bip.left) {
    if (i >= n || seen[i]) throw BadPartition("invalid left index set");
    seen[i] = true;
  }
  for (auto i : bip.right) {
    if (i >= n || seen[i]) throw BadPartition("invalid right index set");
    seen[i] = true;
  }
  if (bip.left.empty() || bip.right.empty() ||
      bip.left.size() + bip.right.size() != n) {
    throw BadPartition("sides must partition the subsystems");
  }

  BigInt pl = 1, pr = 1;
  for (auto i : bip.left) pl *= dims[i];
  for (auto i : bip.right) pr *= dims[i];
  const BigInt kbig = pl < pr ? pl : pr;

  BigInt total_big = pl * pr;
  if (total_big > kMaxWitnessAmps) {
    throw InstanceTooLarge("witness state would need " + total_big.str() + " amplitudes");
  }
  const std::size_t total = total_big.convert_to<std::size_t>();
  const std::size_t kcount = kbig.convert_to<std::size_t>();

  CVector amps(total, 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(kcount));
  std::vector<std::size_t> multi(n, 0);
  for (std::size_t t = 0; t < kcount; ++t) {
    std::size_t rest = t;
    for (std::size_t j = bip.left.size(); j-- > 0;) {
      const std::size_t d = dims[bip.left[j]];
      multi[bip.left[j]] = rest % d;
      rest /= d;
    }
    rest = t;
    for (std::size_t j = bip.right.size(); j-- > 0;) {
      const std::size_t d = dims[bip.right[j]];
      multi[bip.right[j]] = rest % d;
      rest /= d;
    }
    std::size_t flat = 0;
    for (std::size_t m = 0; m < n; ++m) flat = flat * dims[m] + multi[m];
    amps[flat] = w;
  }
  return StateTensor::unchecked(dims, std::move(amps));
}

}  // namespace schmidt
