#include "apfree/density.hpp"

#include <map>
#include <string>

#include "apfree/constructions.hpp"

namespace apfree {

std::string_view to_string(Side side) {
  return side == Side::symmetric ? "symmetric" : "positive_half";
}

std::string_view to_string(LimitKind kind) { return kind == LimitKind::liminf ? "liminf" : "limsup"; }

Side natural_side(ConstructionId id) {
  switch (id) {
    case ConstructionId::R:
    case ConstructionId::R_prime: return Side::positive_half;
    default: return Side::symmetric;
  }
}

BigInt count_in_window(ConstructionId id, const ConstructionParams& params, Side side,
                       const BigInt& N) {
  if (N < 1) throw Error(ErrorKind::BadParams, "N must be positive");
  const BigInt lo = side == Side::symmetric ? BigInt(-N) : BigInt(1);
  BigInt total = 0;
  for (const auto& b : blocks_meeting(id, params, N)) total += b.count_within(lo, N);
  return total;
}

std::vector<DensityPoint> density_series(const DensityTarget& target) {
  std::vector<DensityPoint> out;
  for (std::size_t i = 0; i < target.boundaries.size(); ++i) {
    const BigInt& N = target.boundaries[i];
    if (N < 1) throw Error(ErrorKind::BadParams, "boundaries must be positive");
    if (i > 0 && N <= target.boundaries[i - 1])
      throw Error(ErrorKind::BadParams, "boundaries must be strictly increasing");
  }
  for (const BigInt& N : target.boundaries) {
    DensityPoint p;
    p.N = N;
    p.count = count_in_window(target.construction, target.params, target.side, N);
    const BigInt den = target.side == Side::symmetric ? BigInt(2 * N) : N;
    p.ratio = Rational(p.count, den);
    out.push_back(std::move(p));
  }
  return out;
}

Rational closed_form(ConstructionId id, const ConstructionParams& params, LimitKind kind) {
  validate_params(id, params);
  const BigInt a = params.a;
  const BigInt n = params.n;
  switch (id) {
    case ConstructionId::R_prime: return Rational(1) - Rational(a, 2 * n * (a - 1));
    case ConstructionId::signed_parity:
      if (kind == LimitKind::liminf) return Rational(2, 3) - Rational(1, 3 * (a - 1));
      return Rational(1) - Rational(1, a - 1);
    case ConstructionId::K:
      if (kind == LimitKind::liminf) return Rational(3, 10);
      break;
    default: break;
  }
  throw Error(ErrorKind::UnsupportedKind,
              std::string(to_string(id)) + " has no known " + std::string(to_string(kind)));
}

std::vector<BigInt> boundary_family(ConstructionId id, const ConstructionParams& params,
                                    LimitKind kind, int last, int count) {
  if (count < 1 || last - count + 1 < 1) throw Error(ErrorKind::BadParams, "bad boundary range");
  std::vector<BigInt> out;
  for (int m = last - count + 1; m <= last; ++m) {
    const auto e = static_cast<std::uint64_t>(m);
    switch (id) {
      case ConstructionId::signed_parity: {
        const BigInt p = pow(BigInt(params.a), e);
        out.push_back(kind == LimitKind::liminf ? p : BigInt(p / 3));
        break;
      }
      case ConstructionId::R:
      case ConstructionId::R_prime: out.push_back(pow(BigInt(params.a), e)); break;
      case ConstructionId::K:
      case ConstructionId::K_prime:
      case ConstructionId::K_double_prime: out.push_back(pow(BigInt(2), e)); break;
      default: throw Error(ErrorKind::UnsupportedKind, "no boundary family for " + std::string(to_string(id)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr ConstructionId kParts[] = {ConstructionId::K, ConstructionId::K_prime,
                                     ConstructionId::K_double_prime};

std::vector<BlockDescriptor> part_blocks(ConstructionId id, std::int64_t i_max) {
  ConstructionStream stream(id, {});
  std::vector<BlockDescriptor> out;
  for (std::int64_t i = 0; i <= i_max; ++i)
    for (auto& b : stream.next_group()) out.push_back(std::move(b));
  return out;
}

// Largest W such that blocks of index <= i_max tile [-W, W]: odd indices fill
// [2^i, 2^(i+2)) on the positive side, even indices the mirror image.
BigInt tiled_radius(std::int64_t i_max) {
  const std::int64_t i_pos = (i_max % 2 == 1) ? i_max : i_max - 1;
  const std::int64_t i_neg = (i_max % 2 == 0) ? i_max : i_max - 1;
  const BigInt pos = pow(BigInt(2), static_cast<std::uint64_t>(i_pos + 2)) - 1;  // i_pos >= -1
  const BigInt neg = i_neg >= 0 ? BigInt(pow(BigInt(2), static_cast<std::uint64_t>(i_neg + 2)) - 1) : BigInt(1);
  return pos < neg ? pos : neg;
}

}  // namespace

std::vector<int> partition_owners(const BigInt& v, std::int64_t i_max) {
  std::vector<int> out;
  for (int part = 0; part < 3; ++part)
    for (const auto& b : part_blocks(kParts[part], i_max))
      if (b.contains(v)) out.push_back(part);
  return out;
}

PartitionReport partition_check(std::int64_t i_max) {
  if (i_max < 0) throw Error(ErrorKind::BadIndex, "i_max must be nonnegative");
  PartitionReport report;
  report.W = tiled_radius(i_max);
  const BigInt& W = report.W;

  // coverage multiplicity changes at interval endpoints
  std::map<BigInt, int> delta;
  for (ConstructionId id : kParts)
    for (const auto& b : part_blocks(id, i_max))
      for (const auto& iv : b.intervals) {
        ++delta[iv.lo];
        --delta[iv.hi + 1];
      }
  delta.try_emplace(-W, 0);
  delta.try_emplace(W + 1, 0);

  int depth = 0;
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    depth += it->second;
    auto next = std::next(it);
    if (next == delta.end()) break;
    BigInt lo = it->first;
    BigInt hi = next->first - 1;
    if (hi < -W || lo > W) continue;
    if (lo < -W) lo = -W;
    if (hi > W) hi = W;
    if (depth != 1) report.violations.push_back({lo, hi, depth});
  }
  report.exact = report.violations.empty();
  return report;
}

}  // namespace apfree
