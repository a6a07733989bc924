#include "apfree/constructions.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "apfree/blocks.hpp"

namespace apfree {

namespace {

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string idx(std::int64_t i) { return std::to_string(i); }

BlockDescriptor singleton(ConstructionId c, std::int64_t v, OrderingTag tag) {
  BlockDescriptor b;
  b.construction = c;
  b.block_index = 0;
  b.label = "{" + std::to_string(v) + "}";
  b.intervals = {{v, v}};
  b.ordering.tag = tag;
  return b;
}

// [-8^i, -8^(i-1) - 1] and [8^(i-1), 8^i - 1]
BlockDescriptor octal_descriptor(ConstructionId c, std::int64_t i, OrderingTag tag,
                                 const std::string& name) {
  const BigInt hi = pow(BigInt(8), static_cast<std::uint64_t>(i));
  const BigInt lo = pow(BigInt(8), static_cast<std::uint64_t>(i - 1));
  BlockDescriptor b;
  b.construction = c;
  b.block_index = i;
  b.label = name + "_" + idx(i);
  b.intervals = {{-hi, -lo - 1}, {lo, hi - 1}};
  b.ordering.tag = tag;
  return b;
}

// X_i^j of R (half = false) or R' (half = true); nullopt when empty.
std::optional<BlockDescriptor> residue_block(ConstructionId c, const ConstructionParams& p,
                                             std::int64_t i, std::uint64_t j) {
  const std::int64_t top = i + static_cast<std::int64_t>(p.n);
  if (top < 1) return std::nullopt;
  const BigInt upper = pow(BigInt(p.a), static_cast<std::uint64_t>(top));
  const BigInt lo = i >= 0 ? pow(BigInt(p.a), static_cast<std::uint64_t>(i)) : BigInt(1);
  const BigInt hi = c == ConstructionId::R_prime ? BigInt((upper - 1) / 2) : BigInt(upper - 1);
  BlockDescriptor b;
  b.construction = c;
  b.block_index = i;
  b.label = "X_" + idx(i) + "^" + std::to_string(j);
  b.intervals = {{lo, hi}};
  b.residue = Residue{j, p.n};
  b.ordering.tag = p.block_ordering;
  if (b.count() == 0) return std::nullopt;
  return b;
}

BlockDescriptor signed_parity_block(const ConstructionParams& p, std::int64_t i) {
  const BigInt lo = pow(BigInt(p.a), static_cast<std::uint64_t>(i));
  const BigInt top = pow(BigInt(p.a), static_cast<std::uint64_t>(i + 2));
  if (top % 3 != 0) throw std::logic_error("a^(i+2) must be divisible by 3");
  const BigInt hi = top / 3 - 1;
  const bool even = i % 2 == 0;
  BlockDescriptor b;
  b.construction = ConstructionId::signed_parity;
  b.block_index = i;
  b.label = (even ? "X_" : "Y_") + idx(i);
  b.intervals = {{-hi, -lo}, {lo, hi}};
  b.residue = Residue{even ? 2u : 1u, 2};
  b.ordering.tag = p.block_ordering;
  return b;
}

// Blocks of K, K' and K''. Odd indices sit on the positive side, even indices
// are mirrored to the negative side.
BlockDescriptor k_block(ConstructionId c, std::int64_t i, OrderingTag tag) {
  const BigInt two_i = pow(BigInt(2), static_cast<std::uint64_t>(i));
  BigInt lo, hi;
  std::string prime;
  switch (c) {
    case ConstructionId::K:
      lo = two_i;
      hi = floor_div(8 * two_i, 5);
      break;
    case ConstructionId::K_prime:
      lo = ceil_div(8 * two_i, 5);
      hi = floor_div(64 * two_i, 25);
      prime = "'";
      break;
    default:
      lo = ceil_div(64 * two_i, 25);
      hi = 4 * two_i - 1;
      prime = "''";
  }
  BlockDescriptor b;
  b.construction = c;
  b.block_index = i;
  b.ordering.tag = tag;
  if (i % 2 == 0) {
    b.label = "Y" + prime + "_" + idx(i);
    b.intervals = {{-hi, -lo}};
  } else {
    b.label = "X" + prime + "_" + idx(i);
    b.intervals = {{lo, hi}};
  }
  return b;
}

}  // namespace

void validate_params(ConstructionId id, const ConstructionParams& p) {
  switch (id) {
    case ConstructionId::R:
    case ConstructionId::R_prime:
      if (!is_power_of_two(p.n) || p.n < 2)
        throw Error(ErrorKind::BadParams, "n must be a power of 2 (at least 2), got " + std::to_string(p.n));
      if (p.a < 3) throw Error(ErrorKind::BadParams, "a must be at least 3, got " + std::to_string(p.a));
      break;
    case ConstructionId::signed_parity:
      if (p.a <= 3 || p.a % 3 != 0)
        throw Error(ErrorKind::BadParams, "a must exceed 3 and be divisible by 3, got " + std::to_string(p.a));
      break;
    default: break;
  }
}

ConstructionStream::ConstructionStream(ConstructionId id, ConstructionParams params)
    : id_(id), params_(params) {
  validate_params(id, params);
  if (id == ConstructionId::doubled_P)
    throw Error(ErrorKind::UnsupportedKind, "the 2P/2P+1 window has no one-sided block stream");
}

std::vector<BlockDescriptor> ConstructionStream::next_group() {
  const std::int64_t s = step_++;
  const OrderingTag tag = params_.block_ordering;
  std::vector<BlockDescriptor> out;
  switch (id_) {
    case ConstructionId::P:
    case ConstructionId::T: {
      const bool p = id_ == ConstructionId::P;
      const OrderingTag t = p ? OrderingTag::octal_recursion : tag;
      const char* name = p ? "X" : "Z";
      if (s == 0) {
        out.push_back(singleton(id_, 0, t));
        out.push_back(octal_descriptor(id_, 1, t, name));
        out.push_back(singleton(id_, -1, t));
      } else {
        out.push_back(octal_descriptor(id_, s + 1, t, name));
      }
      break;
    }
    case ConstructionId::R:
    case ConstructionId::R_prime: {
      const auto n = static_cast<std::int64_t>(params_.n);
      int bits = 0;
      while ((std::uint64_t{1} << bits) < params_.n) ++bits;
      const FinitePermutation S = canonical_mod_perm(bits);
      for (std::int64_t l = 0; l < n; ++l) {
        const std::int64_t i = s * n - l;
        const auto j = S[static_cast<std::size_t>(l)].convert_to<std::uint64_t>();
        if (auto b = residue_block(id_, params_, i, j)) out.push_back(std::move(*b));
      }
      break;
    }
    case ConstructionId::signed_parity:
      out.push_back(signed_parity_block(params_, 2 * s + 2));
      out.push_back(signed_parity_block(params_, 2 * s + 1));
      break;
    case ConstructionId::K:
    case ConstructionId::K_double_prime:
      out.push_back(k_block(id_, s, tag));
      break;
    case ConstructionId::K_prime:
      if (s == 0) {
        out.push_back(singleton(id_, 0, tag));
        out.push_back(singleton(id_, 1, tag));
      }
      out.push_back(k_block(id_, s, tag));
      break;
    case ConstructionId::doubled_P: break;
  }
  return out;
}

std::vector<BlockDescriptor> blocks_meeting(ConstructionId id, const ConstructionParams& params,
                                            const BigInt& N) {
  ConstructionStream stream(id, params);
  std::vector<BlockDescriptor> out;
  for (;;) {
    auto group = stream.next_group();
    bool any = group.empty();
    for (auto& b : group) {
      auto m = b.min_magnitude();
      if (m && *m <= N) {
        out.push_back(std::move(b));
        any = true;
      }
    }
    if (!any) return out;
  }
}

Window assemble(std::vector<BlockDescriptor> blocks, std::optional<std::uint64_t> count,
                std::int64_t origin) {
  const auto nb = static_cast<std::int64_t>(blocks.size());
  std::vector<FinitePermutation> parts(blocks.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < nb; ++b) {
    try {
      parts[static_cast<std::size_t>(b)] = materialize_block(blocks[static_cast<std::size_t>(b)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Window w;
  w.origin = origin;
  std::vector<BigInt> values;
  const std::uint64_t cap = count.value_or(UINT64_MAX);
  for (std::size_t b = 0; b < blocks.size() && values.size() < cap; ++b) {
    const auto part = parts[b].values();
    const std::size_t room = static_cast<std::size_t>(cap - values.size());
    if (part.size() <= room) {
      values.insert(values.end(), part.begin(), part.end());
      w.value_cover.add(blocks[b]);
      w.block_span.push_back(std::move(blocks[b]));
    } else {
      values.insert(values.end(), part.begin(), part.begin() + static_cast<std::ptrdiff_t>(room));
    }
  }
  w.terms = FinitePermutation::from_values(std::move(values));
  return w;
}

// ---------------------------------------------------------------------------

namespace {

// Blocks from the stream until at least `count` terms are described.
std::vector<BlockDescriptor> blocks_for_count(ConstructionStream& stream, std::uint64_t count) {
  std::vector<BlockDescriptor> blocks;
  BigInt have = 0;
  while (have < count) {
    for (auto& b : stream.next_group()) {
      if (have >= count) break;
      have += b.count();
      blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

}  // namespace

FinitePermutation p_block(std::int64_t i) { return FinitePermutation::from_values(octal_block(i)); }

Window p_prefix(std::uint64_t count) {
  ConstructionStream stream(ConstructionId::P, {});
  return assemble(blocks_for_count(stream, count), count);
}

Window p_through_block(std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::BadIndex, "block index must be at least 1, got " + idx(i));
  ConstructionStream stream(ConstructionId::P, {});
  std::vector<BlockDescriptor> blocks;
  for (std::int64_t s = 0; s < i; ++s)
    for (auto& b : stream.next_group()) blocks.push_back(std::move(b));
  return assemble(std::move(blocks));
}

Window t_window(std::int64_t i_max, OrderingTag ordering) {
  if (i_max < 1) throw Error(ErrorKind::BadIndex, "i_max must be at least 1, got " + idx(i_max));
  const auto id = ConstructionId::T;
  std::vector<BlockDescriptor> blocks;
  for (std::int64_t i = i_max - (i_max % 2); i >= 2; i -= 2) blocks.push_back(octal_descriptor(id, i, ordering, "Z"));
  std::int64_t left = 0;
  for (const auto& b : blocks) left += b.count().convert_to<std::int64_t>();
  blocks.push_back(singleton(id, 0, ordering));
  blocks.push_back(octal_descriptor(id, 1, ordering, "Z"));
  blocks.push_back(singleton(id, -1, ordering));
  for (std::int64_t i = 3; i <= i_max; i += 2) blocks.push_back(octal_descriptor(id, i, ordering, "Z"));
  return assemble(std::move(blocks), std::nullopt, -left);
}

Window doubled_p_window(std::uint64_t count_each_side) {
  const Window p = p_prefix(count_each_side);
  const auto n = p.terms.size();
  std::vector<BigInt> values(2 * n);
  for (std::size_t t = 0; t < n; ++t) {
    values[n + t] = 2 * p.terms[t];
    values[n - 1 - t] = 2 * p.terms[t] + 1;
  }

  auto image = [](const BlockDescriptor& b, int offset) {
    BlockDescriptor m = b;
    m.construction = ConstructionId::doubled_P;
    m.label = "2(" + b.label + (offset ? ")+1" : ")");
    for (auto& iv : m.intervals) iv = {2 * iv.lo + offset, 2 * iv.hi + offset};
    m.residue = Residue{offset ? 1u : 2u, 2};
    m.ordering.scale = 2;
    m.ordering.offset = offset;
    m.ordering.reversed = offset != 0;
    return m;
  };
  Window w;
  w.origin = -static_cast<std::int64_t>(n);
  for (auto it = p.block_span.rbegin(); it != p.block_span.rend(); ++it) w.block_span.push_back(image(*it, 1));
  for (const auto& b : p.block_span) w.block_span.push_back(image(b, 0));
  for (const auto& b : w.block_span) w.value_cover.add(b);
  w.terms = FinitePermutation::from_values(std::move(values));
  return w;
}

namespace {

ConstructionParams residue_params(std::uint64_t n, std::uint64_t a, OrderingTag ordering) {
  ConstructionParams p;
  p.n = n;
  p.a = a;
  p.block_ordering = ordering;
  return p;
}

Window residue_prefix(ConstructionId id, std::uint64_t n, std::uint64_t a, std::uint64_t count,
                      OrderingTag ordering) {
  ConstructionStream stream(id, residue_params(n, a, ordering));
  return assemble(blocks_for_count(stream, count), count);
}

Window residue_groups(ConstructionId id, std::uint64_t n, std::uint64_t a, std::uint64_t groups,
                      OrderingTag ordering) {
  ConstructionStream stream(id, residue_params(n, a, ordering));
  std::vector<BlockDescriptor> blocks;
  for (std::uint64_t g = 0; g < groups; ++g)
    for (auto& b : stream.next_group()) blocks.push_back(std::move(b));
  return assemble(std::move(blocks));
}

}  // namespace

Window r_prefix(std::uint64_t n, std::uint64_t a, std::uint64_t count, OrderingTag ordering) {
  return residue_prefix(ConstructionId::R, n, a, count, ordering);
}

Window r_groups(std::uint64_t n, std::uint64_t a, std::uint64_t groups, OrderingTag ordering) {
  return residue_groups(ConstructionId::R, n, a, groups, ordering);
}

Window r_prime_prefix(std::uint64_t n, std::uint64_t a, std::uint64_t count, OrderingTag ordering) {
  return residue_prefix(ConstructionId::R_prime, n, a, count, ordering);
}

Window r_prime_groups(std::uint64_t n, std::uint64_t a, std::uint64_t groups, OrderingTag ordering) {
  return residue_groups(ConstructionId::R_prime, n, a, groups, ordering);
}

Window signed_parity_window(std::uint64_t a, std::int64_t i_max, OrderingTag ordering) {
  ConstructionParams p;
  p.a = a;
  p.block_ordering = ordering;
  if (i_max < 2) throw Error(ErrorKind::BadIndex, "i_max must be at least 2, got " + idx(i_max));
  ConstructionStream stream(ConstructionId::signed_parity, p);
  std::vector<BlockDescriptor> blocks;
  for (;;) {
    for (auto& b : stream.next_group()) {
      if (b.block_index > i_max) return assemble(std::move(blocks));
      blocks.push_back(std::move(b));
    }
  }
}

namespace {

Window k_family_window(ConstructionId id, std::int64_t i_max, OrderingTag ordering) {
  if (i_max < 0) throw Error(ErrorKind::BadIndex, "i_max must be nonnegative, got " + idx(i_max));
  ConstructionParams p;
  p.block_ordering = ordering;
  ConstructionStream stream(id, p);
  std::vector<BlockDescriptor> blocks;
  for (std::int64_t i = 0; i <= i_max; ++i)
    for (auto& b : stream.next_group()) blocks.push_back(std::move(b));
  return assemble(std::move(blocks));
}

}  // namespace

Window k_window(std::int64_t i_max, OrderingTag ordering) {
  return k_family_window(ConstructionId::K, i_max, ordering);
}

PartitionWindows partition_windows(std::int64_t i_max, OrderingTag ordering) {
  return {k_family_window(ConstructionId::K, i_max, ordering),
          k_family_window(ConstructionId::K_prime, i_max, ordering),
          k_family_window(ConstructionId::K_double_prime, i_max, ordering)};
}

Window generate(ConstructionId id, const ConstructionParams& params) {
  validate_params(id, params);
  const OrderingTag tag = params.block_ordering;
  switch (id) {
    case ConstructionId::P:
      return params.count ? p_prefix(params.count) : p_through_block(params.i_max);
    case ConstructionId::T: return t_window(params.i_max, tag);
    case ConstructionId::doubled_P: {
      std::uint64_t c = params.count;
      if (!c) c = 2 * pow(BigInt(8), static_cast<std::uint64_t>(params.i_max)).convert_to<std::uint64_t>();
      return doubled_p_window(c);
    }
    case ConstructionId::R:
      return params.count ? r_prefix(params.n, params.a, params.count, tag)
                          : r_groups(params.n, params.a, params.groups, tag);
    case ConstructionId::R_prime:
      return params.count ? r_prime_prefix(params.n, params.a, params.count, tag)
                          : r_prime_groups(params.n, params.a, params.groups, tag);
    case ConstructionId::signed_parity: return signed_parity_window(params.a, params.i_max, tag);
    default: {
      if (params.count) {
        ConstructionStream stream(id, params);
        return assemble(blocks_for_count(stream, params.count), params.count);
      }
      return k_family_window(id, params.i_max, tag);
    }
  }
}

}  // namespace apfree
