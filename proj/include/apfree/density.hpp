#pragma once

// Exact element counts of constructions in windows [-N, N] or [1, N],
// density series, the known limit values, and the three-way partition check.

#include <optional>
#include <vector>

#include "apfree/core.hpp"

namespace apfree {

enum class Side { positive_half, symmetric };

std::string_view to_string(Side side);
/// The side the known limits refer to: positive_half for R and R', symmetric
/// otherwise.
Side natural_side(ConstructionId id);

/// |S ∩ [-N, N]| or |S ∩ [1, N]| from block descriptors alone.
/// Throws Error(UnsupportedKind) for the 2P/2P+1 window.
BigInt count_in_window(ConstructionId id, const ConstructionParams& params, Side side,
                       const BigInt& N);

struct DensityPoint {
  BigInt N;
  BigInt count;
  Rational ratio;  // count / (2N) when symmetric, count / N otherwise
};

struct DensityTarget {
  ConstructionId construction = ConstructionId::K;
  ConstructionParams params;
  Side side = Side::symmetric;
  std::vector<BigInt> boundaries;  // strictly increasing, positive
};

/// Throws Error(BadParams) for an invalid boundary list.
std::vector<DensityPoint> density_series(const DensityTarget& target);

enum class LimitKind { liminf, limsup };
std::string_view to_string(LimitKind kind);

/// The known limit values: R' 1 - a / (2n(a - 1)) (both kinds), signed_parity
/// 2/3 - 1/(3(a - 1)) and 1 - 1/(a - 1), K lower density 3/10.
/// Throws Error(UnsupportedKind) otherwise.
Rational closed_form(ConstructionId id, const ConstructionParams& params, LimitKind kind);

/// Boundaries along which the ratio tracks `kind`: for signed_parity a^m (liminf) and
/// a^m / 3 (limsup); for R' a^m; for K 2^m. `count` points ending at exponent
/// `last`.
std::vector<BigInt> boundary_family(ConstructionId id, const ConstructionParams& params,
                                    LimitKind kind, int last, int count);

struct CoverViolation {
  BigInt lo;
  BigInt hi;
  int multiplicity = 0;  // 0 = missing, > 1 = covered more than once
};

struct PartitionReport {
  bool exact = false;
  BigInt W;  // checked window [-W, W]
  std::vector<CoverViolation> violations;
};

/// Which of K (0), K' (1), K'' (2) contain v, using blocks of index <= i_max.
std::vector<int> partition_owners(const BigInt& v, std::int64_t i_max);

/// Checks that K, K' and K'' (blocks of index <= i_max) cover every integer of
/// the largest window [-W, W] they tile exactly once.
PartitionReport partition_check(std::int64_t i_max);

}  // namespace apfree
