#include "apfree/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/functional/hash.hpp>

namespace apfree {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateValue: return "DuplicateValue";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::BadFilter: return "BadFilter";
    case ErrorKind::NotPermutationOfRange: return "NotPermutationOfRange";
    case ErrorKind::EmptyBlock: return "EmptyBlock";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::PrereqFailed: return "PrereqFailed";
    case ErrorKind::BadAnchor: return "BadAnchor";
    case ErrorKind::BadChoice: return "BadChoice";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::Undecidable: return "Undecidable";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

std::size_t BigIntHash::operator()(const BigInt& v) const noexcept {
  if (fits_int64(v)) return std::hash<std::int64_t>{}(v.convert_to<std::int64_t>());
  return boost::multiprecision::hash_value(v);
}

BigInt pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

BigInt floor_mod(const BigInt& a, std::uint64_t m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

bool fits_int64(const BigInt& v) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  return v >= lo && v <= hi;
}

std::string to_decimal(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// ---------------------------------------------------------------------------

FinitePermutation::FinitePermutation() : impl_(std::make_shared<const Impl>()) {}

FinitePermutation FinitePermutation::from_values(std::vector<BigInt> values) {
  auto impl = std::make_shared<Impl>();
  impl->index.reserve(values.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    auto [it, inserted] = impl->index.emplace(values[p], p);
    if (!inserted) throw Error(ErrorKind::DuplicateValue, values[p].str());
  }
  impl->values = std::move(values);
  return FinitePermutation(std::move(impl));
}

FinitePermutation FinitePermutation::from_ints(std::span<const std::int64_t> values) {
  std::vector<BigInt> big(values.begin(), values.end());
  return from_values(std::move(big));
}

FinitePermutation FinitePermutation::from_ints(std::initializer_list<std::int64_t> values) {
  return from_ints(std::span<const std::int64_t>(values.begin(), values.size()));
}

std::optional<std::size_t> FinitePermutation::position_of(const BigInt& value) const {
  auto it = impl_->index.find(value);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<std::int64_t>> FinitePermutation::as_int64() const {
  std::vector<std::int64_t> out;
  out.reserve(size());
  for (const BigInt& v : impl_->values) {
    if (!fits_int64(v)) return std::nullopt;
    out.push_back(v.convert_to<std::int64_t>());
  }
  return out;
}

FinitePermutation perm_from_values(std::vector<BigInt> values) {
  return FinitePermutation::from_values(std::move(values));
}

std::optional<std::size_t> position_of(const FinitePermutation& perm, const BigInt& value) {
  return perm.position_of(value);
}

bool witness_is_valid(const Witness& w, const FinitePermutation& seq) {
  const std::size_t k = w.values.size();
  if (k < 2 || w.positions.size() != k) return false;
  for (std::size_t t = 0; t < k; ++t) {
    if (w.positions[t] >= seq.size() || seq[w.positions[t]] != w.values[t]) return false;
    if (t > 0 && w.positions[t] <= w.positions[t - 1]) return false;
  }
  if (w.kind == WitnessKind::monotone) {
    if (w.modulus || w.difference == 0) return false;
    for (std::size_t t = 0; t + 1 < k; ++t)
      if (w.values[t + 1] - w.values[t] != w.difference) return false;
    return true;
  }
  if (!w.modulus || *w.modulus == 0) return false;
  const std::uint64_t n = *w.modulus;
  if (floor_mod(w.difference, n) == 0) return false;
  for (std::size_t t = 0; t + 1 < k; ++t)
    if (floor_mod(w.values[t + 1] - w.values[t] - w.difference, n) != 0) return false;
  std::vector<BigInt> sorted = w.values;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

// ---------------------------------------------------------------------------

std::string_view to_string(ConstructionId id) {
  switch (id) {
    case ConstructionId::P: return "P";
    case ConstructionId::T: return "T";
    case ConstructionId::doubled_P: return "doubled_P";
    case ConstructionId::R: return "R";
    case ConstructionId::R_prime: return "R_prime";
    case ConstructionId::signed_parity: return "signed_parity";
    case ConstructionId::K: return "K";
    case ConstructionId::K_prime: return "K_prime";
    case ConstructionId::K_double_prime: return "K_double_prime";
  }
  return "unknown";
}

std::optional<ConstructionId> parse_construction(std::string_view name) {
  struct Alias {
    std::string_view name;
    ConstructionId id;
  };
  static constexpr Alias aliases[] = {
      {"P", ConstructionId::P},
      {"T", ConstructionId::T},
      {"doubled_P", ConstructionId::doubled_P},
      {"doubled-P", ConstructionId::doubled_P},
      {"R", ConstructionId::R},
      {"R_prime", ConstructionId::R_prime},
      {"R-prime", ConstructionId::R_prime},
      {"signed_parity", ConstructionId::signed_parity},
      {"signed-parity", ConstructionId::signed_parity},
      {"K", ConstructionId::K},
      {"K_prime", ConstructionId::K_prime},
      {"K-prime", ConstructionId::K_prime},
      {"K_double_prime", ConstructionId::K_double_prime},
      {"K-double-prime", ConstructionId::K_double_prime},
  };
  for (const auto& a : aliases)
    if (a.name == name) return a.id;
  return std::nullopt;
}

std::string_view to_string(OrderingTag tag) {
  switch (tag) {
    case OrderingTag::parity_recursion: return "parity_recursion";
    case OrderingTag::parity_recursion_odd_first: return "parity_recursion_odd_first";
    case OrderingTag::bit_reversal: return "bit_reversal";
    case OrderingTag::explicit_list: return "explicit";
    case OrderingTag::octal_recursion: return "octal_recursion";
  }
  return "unknown";
}

std::optional<OrderingTag> parse_ordering(std::string_view name) {
  for (OrderingTag t : {OrderingTag::parity_recursion, OrderingTag::parity_recursion_odd_first,
                        OrderingTag::bit_reversal, OrderingTag::explicit_list,
                        OrderingTag::octal_recursion})
    if (to_string(t) == name) return t;
  if (name == "odd_first") return OrderingTag::parity_recursion_odd_first;
  if (name == "parity") return OrderingTag::parity_recursion;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

BigInt count_in_class(const BigInt& lo, const BigInt& hi, std::uint64_t r, std::uint64_t m) {
  if (lo > hi) return 0;
  if (m <= 1) return hi - lo + 1;
  // first member >= lo
  BigInt first = lo + floor_mod(BigInt(r) - lo, m);
  if (first > hi) return 0;
  return (hi - first) / m + 1;
}

namespace {

// Tightens [lo, hi] to the first and last members of the residue class.
std::optional<std::pair<BigInt, BigInt>> tighten(const BigInt& lo, const BigInt& hi,
                                                 std::uint64_t r, std::uint64_t m) {
  if (lo > hi) return std::nullopt;
  if (m <= 1) return std::make_pair(lo, hi);
  BigInt first = lo + floor_mod(BigInt(r) - lo, m);
  BigInt last = hi - floor_mod(hi - r, m);
  if (first > last) return std::nullopt;
  return std::make_pair(std::move(first), std::move(last));
}

}  // namespace

BigInt BlockDescriptor::count() const {
  BigInt total = 0;
  for (const auto& iv : intervals) total += count_in_class(iv.lo, iv.hi, canonical_residue(), modulus());
  return total;
}

BigInt BlockDescriptor::count_within(const BigInt& lo, const BigInt& hi) const {
  BigInt total = 0;
  for (const auto& iv : intervals) {
    const BigInt& l = iv.lo > lo ? iv.lo : lo;
    const BigInt& h = iv.hi < hi ? iv.hi : hi;
    total += count_in_class(l, h, canonical_residue(), modulus());
  }
  return total;
}

bool BlockDescriptor::contains(const BigInt& v) const {
  if (residue && floor_mod(v, residue->modulus) != residue->canonical()) return false;
  for (const auto& iv : intervals)
    if (v >= iv.lo && v <= iv.hi) return true;
  return false;
}

std::optional<BigInt> BlockDescriptor::min_magnitude() const {
  std::optional<BigInt> best;
  for (const auto& iv : intervals) {
    auto t = tighten(iv.lo, iv.hi, canonical_residue(), modulus());
    if (!t) continue;
    BigInt m;
    if (t->first <= 0 && t->second >= 0) {
      // members closest to zero from either side
      const BigInt above = canonical_residue();
      const BigInt below = above == 0 ? BigInt(0) : BigInt(above - modulus());
      m = above <= t->second ? above : BigInt(-below);
      if (below >= t->first && -below < m) m = -below;
    } else if (t->first > 0) {
      m = t->first;
    } else {
      m = -t->second;
    }
    if (!best || m < *best) best = m;
  }
  return best;
}

std::vector<BigInt> BlockDescriptor::enumerate() const {
  std::vector<BigInt> out;
  const std::uint64_t m = modulus();
  for (const auto& iv : intervals) {
    auto t = tighten(iv.lo, iv.hi, canonical_residue(), m);
    if (!t) continue;
    for (BigInt v = t->first; v <= t->second; v += m) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

void ValueCover::add(const BlockDescriptor& block) {
  for (const auto& iv : block.intervals)
    pieces_.push_back({iv.lo, iv.hi, block.modulus(), block.canonical_residue()});
  normalize();
}

void ValueCover::add(Piece piece) {
  pieces_.push_back(std::move(piece));
  normalize();
}

void ValueCover::normalize() {
  std::vector<Piece> tight;
  for (auto& p : pieces_) {
    if (p.modulus == 0) p.modulus = 1;
    p.residue %= p.modulus;
    auto t = tighten(p.lo, p.hi, p.residue, p.modulus);
    if (!t) continue;
    tight.push_back({t->first, t->second, p.modulus, p.residue});
  }
  std::sort(tight.begin(), tight.end(), [](const Piece& a, const Piece& b) {
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    if (a.residue != b.residue) return a.residue < b.residue;
    return a.lo < b.lo;
  });
  std::vector<Piece> merged;
  for (auto& p : tight) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      if (last.modulus == p.modulus && last.residue == p.residue && p.lo <= last.hi + p.modulus) {
        if (p.hi > last.hi) last.hi = p.hi;
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  pieces_ = std::move(merged);
}

bool ValueCover::contains(const BigInt& v) const {
  for (const auto& p : pieces_)
    if (v >= p.lo && v <= p.hi && floor_mod(v, p.modulus) == p.residue) return true;
  return false;
}

BigInt ValueCover::count() const {
  std::vector<const Piece*> by_lo;
  for (const auto& p : pieces_) by_lo.push_back(&p);
  std::sort(by_lo.begin(), by_lo.end(), [](const Piece* a, const Piece* b) { return a->lo < b->lo; });
  bool disjoint = true;
  for (std::size_t i = 1; i < by_lo.size() && disjoint; ++i) disjoint = by_lo[i]->lo > by_lo[i - 1]->hi;
  BigInt total = 0;
  if (disjoint) {
    for (const auto& p : pieces_) total += count_in_class(p.lo, p.hi, p.residue, p.modulus);
    return total;
  }
  // overlapping ranges: count each residue class mod the lcm separately
  std::uint64_t L = 1;
  for (const auto& p : pieces_) L = std::lcm(L, p.modulus);
  for (std::uint64_t r = 0; r < L; ++r) {
    std::vector<std::pair<BigInt, BigInt>> runs;
    for (const auto& p : pieces_)
      if (r % p.modulus == p.residue)
        if (auto t = tighten(p.lo, p.hi, r, L)) runs.push_back(*t);
    std::sort(runs.begin(), runs.end());
    BigInt next;  // smallest class member not yet counted
    bool started = false;
    for (auto [a, b] : runs) {
      if (started && a < next) a = next;
      if (a > b) continue;
      total += (b - a) / L + 1;
      if (!started || b + L > next) next = b + L;
      started = true;
    }
  }
  return total;
}

bool ValueCover::covers_interval(const BigInt& lo, const BigInt& hi) const {
  if (lo > hi) return true;
  std::uint64_t L = 1;
  for (const auto& p : pieces_) L = std::lcm(L, p.modulus);
  for (std::uint64_t r = 0; r < L; ++r) {
    auto cls = tighten(lo, hi, r, L);
    if (!cls) continue;
    std::vector<std::pair<BigInt, BigInt>> runs;
    for (const auto& p : pieces_)
      if (r % p.modulus == p.residue) runs.emplace_back(p.lo, p.hi);
    std::sort(runs.begin(), runs.end());
    BigInt need = cls->first;  // smallest class member not yet covered
    for (const auto& [a, b] : runs) {
      if (need > cls->second) break;
      if (a > need) return false;
      if (b >= need) need = b + 1 + floor_mod(BigInt(r) - (b + 1), L);
    }
    if (need <= cls->second) return false;
  }
  return true;
}

}  // namespace apfree
