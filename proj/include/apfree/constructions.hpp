#pragma once

// Finite windows of the explicit AP-avoiding permutations.
//
//   P               0, X_1, -1, X_2, X_3, ...   (no monotone 5-AP)
//   T               ..., Z_4, Z_2, 0, Z_1, -1, Z_3, Z_5, ...   (no 5-AP)
//   doubled_P       reverse(2P + 1) followed by 2P
//   R               blocks X_i^j of positive integers; every 4-AP has
//                   difference divisible by n
//   R_prime         R with the top half of every block removed (no 4-AP)
//   signed_parity   X_2, Y_1, X_4, Y_3, ... over the integers (no 4-AP)
//   K               Y_0, X_1, Y_2, ... (no 3-AP)
//   K_prime, K_double_prime   the two companions of K; together the three
//                   partition the integers

#include <cstdint>
#include <optional>
#include <vector>

#include "apfree/core.hpp"

namespace apfree {

/// A finite view of a construction. Position p of `terms` is the term with
/// signed index origin + p. `block_span` lists only blocks emitted whole and
/// `value_cover` is exactly their union.
struct Window {
  std::int64_t origin = 0;
  FinitePermutation terms;
  std::vector<BlockDescriptor> block_span;
  ValueCover value_cover;
};

/// Throws Error(BadParams) when `params` violate the construction's
/// requirements (n a power of two and a >= 3 for R and R'; a > 3 and
/// a divisible by 3 for signed_parity).
void validate_params(ConstructionId id, const ConstructionParams& params);

/// Block descriptors of a one-sided construction in emission order, a group
/// at a time. Within a group every block is nonempty; the smallest magnitude
/// of a group never decreases from one group to the next.
class ConstructionStream {
 public:
  ConstructionStream(ConstructionId id, ConstructionParams params);

  std::vector<BlockDescriptor> next_group();
  ConstructionId id() const { return id_; }
  const ConstructionParams& params() const { return params_; }

 private:
  ConstructionId id_;
  ConstructionParams params_;
  std::int64_t step_ = 0;
};

/// Every block of the construction that meets [-N, N], in emission order.
std::vector<BlockDescriptor> blocks_meeting(ConstructionId id, const ConstructionParams& params,
                                            const BigInt& N);

/// Materializes whole blocks (in parallel) and concatenates them in order.
/// With `count`, terms are truncated and only fully emitted blocks are kept in
/// block_span.
Window assemble(std::vector<BlockDescriptor> blocks, std::optional<std::uint64_t> count = std::nullopt,
                std::int64_t origin = 0);

FinitePermutation p_block(std::int64_t i);
Window p_prefix(std::uint64_t count);
/// 0, X_1, -1, X_2, ..., X_i: all of [-8^i, 8^i - 1].
Window p_through_block(std::int64_t i);

Window t_window(std::int64_t i_max, OrderingTag ordering = OrderingTag::parity_recursion);
Window doubled_p_window(std::uint64_t count_each_side);

Window r_prefix(std::uint64_t n, std::uint64_t a, std::uint64_t count,
                   OrderingTag ordering = OrderingTag::parity_recursion);
/// The first `groups` block groups (n slots each).
Window r_groups(std::uint64_t n, std::uint64_t a, std::uint64_t groups,
                   OrderingTag ordering = OrderingTag::parity_recursion);
Window r_prime_prefix(std::uint64_t n, std::uint64_t a, std::uint64_t count,
                   OrderingTag ordering = OrderingTag::parity_recursion);
Window r_prime_groups(std::uint64_t n, std::uint64_t a, std::uint64_t groups,
                   OrderingTag ordering = OrderingTag::parity_recursion);

/// Blocks X_2, Y_1, X_4, ... up to (excluding) the first with index > i_max.
Window signed_parity_window(std::uint64_t a, std::int64_t i_max,
                   OrderingTag ordering = OrderingTag::parity_recursion);

Window k_window(std::int64_t i_max, OrderingTag ordering = OrderingTag::parity_recursion);

struct PartitionWindows {
  Window k;
  Window kprime;
  Window kdoubleprime;
};
PartitionWindows partition_windows(std::int64_t i_max,
                               OrderingTag ordering = OrderingTag::parity_recursion);

/// Dispatcher used by the CLI: a prefix of params.count terms when count > 0,
/// otherwise the window through block index params.i_max (block groups for
/// R and R').
Window generate(ConstructionId id, const ConstructionParams& params);

}  // namespace apfree
