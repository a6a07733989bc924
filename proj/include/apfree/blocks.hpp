#pragma once

// 3-AP-free orderings of finite integer sets and of residues mod 2^k.

#include <cstdint>
#include <span>
#include <vector>

#include "apfree/core.hpp"

namespace apfree {

/// Orders a finite set so that no monotone 3-AP appears. Duplicates in the
/// input are collapsed. The result depends only on the set.
///
/// parity_recursion emits the even elements (ordered recursively as v / 2)
/// before the odd ones (ordered recursively as (v - 1) / 2, floor division);
/// sets of at most two elements come out ascending. parity_recursion_odd_first
/// swaps the two classes at every level. bit_reversal requires the set to be
/// an arithmetic progression and permutes it by index bit reversal.
FinitePermutation order_3ap_free(std::span<const BigInt> set,
                                 OrderingTag tag = OrderingTag::parity_recursion);
std::vector<std::int64_t> order_3ap_free_i64(std::span<const std::int64_t> set,
                                             OrderingTag tag = OrderingTag::parity_recursion);

/// Residues 0 .. 2^k - 1 in k-bit bit-reversal order.
FinitePermutation bit_reversal_residues(int k);

/// bit_reversal_residues(k) with residue 0 written as 2^k: a permutation of
/// [1, 2^k] free of 3-APs mod 2^k.
FinitePermutation canonical_mod_perm(int k);

/// The i-th block (i >= 1) of the 5-AP-free permutation of the integers built
/// from the explicit 14-term first block by the residue-mod-8 recursion.
std::vector<BigInt> octal_block(std::int64_t i);

/// The described set, ordered by the descriptor's rule.
/// Throws Error(EmptyBlock) when the set is empty and Error(BadParams) when an
/// explicit order or an octal block does not match the set.
FinitePermutation materialize_block(const BlockDescriptor& desc);

}  // namespace apfree
