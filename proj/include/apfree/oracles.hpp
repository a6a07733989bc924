#pragma once

// Exhaustive reference enumerations. Deliberately naive: they walk index
// tuples directly and share no code with the checkers they are compared to.

#include <cstdint>
#include <span>
#include <vector>

#include "apfree/apcheck.hpp"

namespace apfree::oracle {

/// All increasing index k-tuples whose values form an AP with a difference the
/// filter accepts, sorted by (first position, difference).
std::vector<Witness> monotone_aps(std::span<const std::int64_t> seq, int k,
                                  const DiffFilter& filter = DiffFilter::any());

/// All increasing index k-tuples of a permutation of [1, n] whose values
/// are distinct and step by a common d != 0 (mod n), sorted by positions.
std::vector<Witness> modular_aps(std::span<const std::int64_t> perm, int k, std::uint64_t n);

/// Every permutation of [1, n] with no k-AP mod n, in lexicographic order.
std::vector<std::vector<std::int64_t>> mod_free_permutations(int n, int k);

}  // namespace apfree::oracle
