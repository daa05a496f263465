#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "grover/marked_set.hpp"

namespace grover {

/// C(n, k); throws std::overflow_error when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Every M-element subset of {0, ..., 2^n - 1}, in increasing order of the subset bitmask.
/// Requires 2^n <= 64.
std::vector<std::vector<BasisIndex>> all_subsets(int n, std::uint64_t M);

/// Generator for instance `index` of a seeded run; independent of evaluation order.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection (portable across standard libraries).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniformly random M-element subset of {0, ..., 2^n - 1} (Floyd's algorithm), sorted.
std::vector<BasisIndex> random_subset(int n, std::uint64_t M, std::mt19937_64& rng);

}  // namespace grover
