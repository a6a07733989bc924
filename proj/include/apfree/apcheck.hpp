#pragma once

// Exact detection of monotone k-term progressions in finite sequences and of
// k-term progressions mod n in permutations of [1, n].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apfree/core.hpp"

namespace apfree {

/// Predicate on the common difference of a progression.
struct DiffFilter {
  enum class Mode { any, divisible_by, not_divisible_by };
  Mode mode = Mode::any;
  std::uint64_t m = 1;

  static DiffFilter any() { return {}; }
  /// Throws Error(BadFilter) if m < 2.
  static DiffFilter divisible_by(std::uint64_t m);
  static DiffFilter not_divisible_by(std::uint64_t m);

  bool accepts(std::int64_t d) const {
    switch (mode) {
      case Mode::any: return true;
      case Mode::divisible_by: return static_cast<std::uint64_t>(d < 0 ? -d : d) % m == 0;
      case Mode::not_divisible_by: return static_cast<std::uint64_t>(d < 0 ? -d : d) % m != 0;
    }
    return true;
  }
  bool accepts(const BigInt& d) const;
};

enum class CheckKernel {
  automatic,
  pair_serial,    // reference: every ordered pair extended forward
  pair_parallel,  // the same scan split across OpenMP threads
  middle_sweep,   // bitset sweep over the second term of each progression
  bigint,         // arbitrary precision fallback
};

/// Every monotone k-AP of `seq` whose difference passes `filter`, one witness
/// per k-term window, sorted by (first position, difference). With `limit`,
/// only the first `limit` witnesses of that order are returned.
/// Throws Error(BadK) if k < 3.
std::vector<Witness> find_monotone_aps(const FinitePermutation& seq, int k,
                                       const DiffFilter& filter = DiffFilter::any(),
                                       std::optional<std::size_t> limit = std::nullopt,
                                       CheckKernel kernel = CheckKernel::automatic);

/// The kernel `automatic` resolves to for this input.
CheckKernel select_kernel(const FinitePermutation& seq, int k);

/// Every k-AP mod n of a permutation of [1, n], sorted by positions.
/// Throws Error(NotPermutationOfRange) or Error(BadK).
std::vector<Witness> find_modular_aps(const FinitePermutation& perm, int k, std::uint64_t n,
                                      std::optional<std::size_t> limit = std::nullopt);

/// Fast yes/no form of find_modular_aps on a plain array of values in [1, n].
/// No validation; `pos` is scratch of size n + 1.
bool has_modular_ap(std::span<const int> perm, int k, std::span<int> pos);

struct VerifyResult {
  bool ap_free = true;
  std::optional<Witness> witness;
};

VerifyResult verify_ap_free(const FinitePermutation& seq, int k,
                            const DiffFilter& filter = DiffFilter::any(),
                            CheckKernel kernel = CheckKernel::automatic);

namespace detail {

// Kernels on int64 values. Each returns witnesses in canonical order.
std::vector<Witness> pair_kernel(std::span<const std::int64_t> seq, int k, const DiffFilter& filter,
                                 std::optional<std::size_t> limit, bool parallel);
std::vector<Witness> sweep_kernel(std::span<const std::int64_t> seq, int k,
                                  const DiffFilter& filter, std::optional<std::size_t> limit);
std::vector<Witness> bigint_kernel(const FinitePermutation& seq, int k, const DiffFilter& filter,
                                   std::optional<std::size_t> limit);

}  // namespace detail

}  // namespace apfree
