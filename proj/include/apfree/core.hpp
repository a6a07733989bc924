#pragma once

// Shared domain types: big integers, finite permutations, witnesses and
// symbolic block descriptors.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace apfree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
  DuplicateValue,
  BadK,
  BadFilter,
  NotPermutationOfRange,
  EmptyBlock,
  BadIndex,
  BadParams,
  PrereqFailed,
  BadAnchor,
  BadChoice,
  BudgetExceeded,
  UnsupportedKind,
  Undecidable,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct BigIntHash {
  std::size_t operator()(const BigInt& v) const noexcept;
};

// Exact helpers on big integers.
BigInt pow(const BigInt& base, std::uint64_t exp);
BigInt floor_div(const BigInt& a, const BigInt& b);  // b > 0
BigInt ceil_div(const BigInt& a, const BigInt& b);   // b > 0
BigInt floor_mod(const BigInt& a, std::uint64_t m);  // result in [0, m)
bool fits_int64(const BigInt& v);
std::string to_decimal(const BigInt& v);
std::string to_string(const Rational& r);  // "p/q", or "p" when q == 1
double to_double(const Rational& r);

/// An ordered sequence of distinct integers with a value -> position index.
///
/// Immutable after construction; copies share the underlying storage.
class FinitePermutation {
 public:
  FinitePermutation();

  /// Throws Error(DuplicateValue) if a value repeats.
  static FinitePermutation from_values(std::vector<BigInt> values);
  static FinitePermutation from_ints(std::span<const std::int64_t> values);
  static FinitePermutation from_ints(std::initializer_list<std::int64_t> values);

  std::span<const BigInt> values() const { return impl_->values; }
  std::size_t size() const { return impl_->values.size(); }
  bool empty() const { return impl_->values.empty(); }
  const BigInt& operator[](std::size_t p) const { return impl_->values[p]; }

  std::optional<std::size_t> position_of(const BigInt& value) const;

  /// Values as int64 when every value fits, otherwise nullopt.
  std::optional<std::vector<std::int64_t>> as_int64() const;

  friend bool operator==(const FinitePermutation& a, const FinitePermutation& b) {
    return a.impl_ == b.impl_ || a.impl_->values == b.impl_->values;
  }

 private:
  struct Impl {
    std::vector<BigInt> values;
    std::unordered_map<BigInt, std::size_t, BigIntHash> index;
  };
  explicit FinitePermutation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

FinitePermutation perm_from_values(std::vector<BigInt> values);
std::optional<std::size_t> position_of(const FinitePermutation& perm, const BigInt& value);

enum class WitnessKind { monotone, modular };

/// A found progression. Positions are zero-based indices into the checked
/// sequence.
struct Witness {
  WitnessKind kind = WitnessKind::monotone;
  std::vector<BigInt> values;
  std::vector<std::size_t> positions;
  BigInt difference;
  std::optional<std::uint64_t> modulus;

  std::size_t k() const { return values.size(); }
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Checks the type invariants and that every value sits at its claimed
/// position in `seq`.
bool witness_is_valid(const Witness& w, const FinitePermutation& seq);

// ---------------------------------------------------------------------------
// Construction identifiers and block descriptors.

enum class ConstructionId {
  P,
  T,
  doubled_P,
  R,
  R_prime,
  signed_parity,
  K,
  K_prime,
  K_double_prime,
};

std::string_view to_string(ConstructionId id);
/// Accepts the canonical names ("K_prime") and dashed forms ("K-prime").
std::optional<ConstructionId> parse_construction(std::string_view name);

enum class OrderingTag {
  parity_recursion,            // evens first, recursively
  parity_recursion_odd_first,  // odds first, recursively
  bit_reversal,                // sorted elements reindexed by k-bit reversal
  explicit_list,
  octal_recursion,             // the residue-mod-8 recursion of the 5-AP-free P
};

std::string_view to_string(OrderingTag tag);
std::optional<OrderingTag> parse_ordering(std::string_view name);

/// How a block's set is ordered. Blocks that are affine images of a base
/// block (v -> scale * v + offset, optionally reversed) carry the base rule
/// plus the map.
struct OrderingRule {
  OrderingTag tag = OrderingTag::parity_recursion;
  std::vector<BigInt> explicit_order;
  BigInt scale = 1;
  BigInt offset = 0;
  bool reversed = false;

  friend bool operator==(const OrderingRule&, const OrderingRule&) = default;
};

/// Closed interval [lo, hi].
struct Interval {
  BigInt lo;
  BigInt hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// value = label (mod modulus) with label in [1, modulus]; label == modulus
/// stands for residue 0.
struct Residue {
  std::uint64_t label = 1;
  std::uint64_t modulus = 1;
  std::uint64_t canonical() const { return label % modulus; }
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Number of integers in [lo, hi] congruent to r (mod m), m >= 1.
BigInt count_in_class(const BigInt& lo, const BigInt& hi, std::uint64_t r, std::uint64_t m);

struct BlockDescriptor {
  ConstructionId construction = ConstructionId::P;
  std::int64_t block_index = 0;
  std::string label;
  std::vector<Interval> intervals;
  std::optional<Residue> residue;
  OrderingRule ordering;

  std::uint64_t modulus() const { return residue ? residue->modulus : 1; }
  std::uint64_t canonical_residue() const { return residue ? residue->canonical() : 0; }

  BigInt count() const;
  BigInt count_within(const BigInt& lo, const BigInt& hi) const;
  bool contains(const BigInt& v) const;
  /// Smallest absolute value in the described set (nullopt when empty).
  std::optional<BigInt> min_magnitude() const;
  /// The described set in ascending order.
  std::vector<BigInt> enumerate() const;

  friend bool operator==(const BlockDescriptor&, const BlockDescriptor&) = default;
};

/// Parameters shared by the constructions. Which fields matter depends on the
/// construction; see constructions.hpp.
struct ConstructionParams {
  std::uint64_t n = 2;       // modulus (power of two for R, R')
  std::uint64_t a = 3;       // base
  int k = 4;                 // progression length
  std::int64_t i_max = 1;    // block horizon
  std::uint64_t count = 0;   // prefix length
  std::uint64_t groups = 3;  // block groups of R and R' when no count is given
  OrderingTag block_ordering = OrderingTag::parity_recursion;
};

/// Union of residue-class runs {v in [lo, hi] : v = residue (mod modulus)}.
/// Kept normalized: pieces sorted, endpoints tight, touching runs merged.
class ValueCover {
 public:
  struct Piece {
    BigInt lo;
    BigInt hi;
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  void add(const BlockDescriptor& block);
  void add(Piece piece);

  std::span<const Piece> pieces() const { return pieces_; }
  bool contains(const BigInt& v) const;
  BigInt count() const;
  bool empty() const { return pieces_.empty(); }

  /// True iff every integer of [lo, hi] lies in the cover.
  bool covers_interval(const BigInt& lo, const BigInt& hi) const;

 private:
  void normalize();
  std::vector<Piece> pieces_;
};

}  // namespace apfree
