#pragma once

// Permutations of [1, n] avoiding k-term progressions mod n: the product
// construction, the structured 3-AP-mod-2^k-free family, exhaustive counting
// and backtracking search.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "apfree/core.hpp"

namespace apfree {

/// For each b_j of B in order, the block m(a_1 - 1) + b_j, ..., m(a_n - 1) + b_j,
/// where A is a permutation of [1, n] and B of [1, m]. The result is a
/// permutation of [1, mn] avoiding k-APs mod mn whenever A and B avoid them mod
/// n and mod m. Throws Error(PrereqFailed) if A or B does not.
FinitePermutation product_mod_perm(const FinitePermutation& A, const FinitePermutation& B, int k);

/// Structured permutation of [1, 2^k]: a, then a + 2^(k-1), then for
/// t = 2..k the block {v = a + 2^(k-t) mod 2^(k-t+1)} ordered as the lift
/// s -> s * 2^(k-t+1) + a - 2^(k-t) of sub_perms[t-1] (a permutation of
/// [1, 2^(t-1)]). sub_perms[0] must be [1].
/// Throws Error(BadAnchor) or Error(BadChoice).
FinitePermutation structured_mod_perm(int k, std::uint64_t anchor,
                                      const std::vector<FinitePermutation>& sub_perms);

/// Indexes the structured family of [1, 2^k]. Index order: the anchor varies
/// fastest, then the level-1, level-2, ... choices in mixed radix, each level's
/// choice being itself an index into the family one size down.
class StructuredFamily {
 public:
  static constexpr int kMaxK = 4;

  /// Throws Error(BudgetExceeded) for k > kMaxK, Error(BadParams) for k < 0.
  explicit StructuredFamily(int k);

  int k() const { return k_; }
  std::uint64_t size() const { return count_; }
  FinitePermutation at(std::uint64_t index) const;
  std::vector<FinitePermutation> all() const;

 private:
  int k_;
  std::uint64_t count_;
  std::vector<std::vector<FinitePermutation>> lower_;  // lower_[t] = family of [1, 2^t]
};

std::vector<FinitePermutation> enumerate_structured(int k);

/// 2^(2^k - 1).
BigInt structured_count_closed(int k);
/// phi(0) = 1, phi(k) = 2^k * phi(0) * ... * phi(k - 1).
BigInt structured_count_recurrence(int k);

/// Number of permutations of [1, n] with no k-AP mod n, by exhaustive
/// enumeration. Throws Error(BudgetExceeded) if n > cap.
std::uint64_t brute_count_mod_free(int n, int k, int cap = 10, bool parallel = true);

struct PermissibilityResult {
  std::uint64_t n = 0;
  int k = 0;
  std::optional<FinitePermutation> witness;
  bool exhausted = false;  // true with no witness: no such permutation exists
  std::uint64_t nodes = 0;
};

/// Depth-first search placing values (ascending) at positions left to right,
/// rejecting any value that completes a k-AP mod n. When the node budget runs
/// out the result has neither a witness nor exhausted set.
PermissibilityResult search_mod_free(std::uint64_t n, int k, std::uint64_t budget);

/// The 4-AP-mod-p-free rows for the primes 2 through 23. Each row is checked
/// when first requested.
const std::map<std::uint64_t, FinitePermutation>& prime_witness_table();

struct Permissibility {
  bool permissible = false;
  std::optional<FinitePermutation> witness;  // when one was built
};

/// Decides k-permissibility of n from its prime factors. k = 3: powers of 2.
/// k = 4: primes up to 23 from the table, larger primes by search. k >= 5:
/// always. Throws Error(BadK) for k < 3 and Error(Undecidable) when a search
/// runs out of budget.
Permissibility permissible(std::uint64_t n, int k, std::uint64_t budget = 10'000'000);

/// Prime factors with multiplicity, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace apfree
