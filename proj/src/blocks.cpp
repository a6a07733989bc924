#include "apfree/blocks.hpp"

#include <algorithm>
#include <string>

#include "apfree/apcheck.hpp"

namespace apfree {

namespace {

template <class T>
bool is_odd(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>)
    return v % 2 != 0;
  else
    return (v & 1) != 0;
}

// Entries carry the working key (halved at each level) and the original value.
template <class T>
struct Entry {
  T key;
  T value;
};

template <class T>
void parity_order(std::vector<Entry<T>>& items, std::size_t lo, std::size_t hi, bool odd_first) {
  if (hi - lo <= 2) {
    std::sort(items.begin() + lo, items.begin() + hi,
              [](const Entry<T>& a, const Entry<T>& b) { return a.value < b.value; });
    return;
  }
  auto first = [odd_first](const Entry<T>& e) { return is_odd(e.key) == odd_first; };
  auto mid = std::stable_partition(items.begin() + lo, items.begin() + hi, first);
  for (auto it = items.begin() + lo; it != items.begin() + hi; ++it) {
    // exact: key - 1 is even for odd keys
    if (is_odd(it->key)) it->key -= 1;
    it->key /= 2;
  }
  const auto split = static_cast<std::size_t>(mid - items.begin());
  parity_order(items, lo, split, odd_first);
  parity_order(items, split, hi, odd_first);
}

std::vector<std::size_t> bit_reversed_indices(std::size_t size) {
  int bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  std::vector<std::size_t> out;
  out.reserve(size);
  for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b)
      if (i >> b & 1) r |= std::size_t{1} << (bits - 1 - b);
    if (r < size) out.push_back(r);
  }
  return out;
}

template <class T>
std::vector<T> order_impl(std::vector<T> sorted, OrderingTag tag) {
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  switch (tag) {
    case OrderingTag::parity_recursion:
    case OrderingTag::parity_recursion_odd_first: {
      std::vector<Entry<T>> items;
      items.reserve(sorted.size());
      for (const T& v : sorted) items.push_back({v, v});
      parity_order(items, 0, items.size(), tag == OrderingTag::parity_recursion_odd_first);
      std::vector<T> out;
      out.reserve(items.size());
      for (auto& e : items) out.push_back(std::move(e.value));
      return out;
    }
    case OrderingTag::bit_reversal: {
      for (std::size_t i = 2; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] != sorted[1] - sorted[0])
          throw Error(ErrorKind::BadParams, "bit_reversal ordering needs an arithmetic progression");
      std::vector<T> out;
      out.reserve(sorted.size());
      for (std::size_t r : bit_reversed_indices(sorted.size())) out.push_back(sorted[r]);
      return out;
    }
    default:
      throw Error(ErrorKind::BadParams,
                  "ordering " + std::string(to_string(tag)) + " needs a block descriptor");
  }
}

}  // namespace

std::vector<std::int64_t> order_3ap_free_i64(std::span<const std::int64_t> set, OrderingTag tag) {
  return order_impl(std::vector<std::int64_t>(set.begin(), set.end()), tag);
}

FinitePermutation order_3ap_free(std::span<const BigInt> set, OrderingTag tag) {
  const bool small = std::all_of(set.begin(), set.end(), [](const BigInt& v) {
    return fits_int64(v) && abs(v) < (BigInt(1) << 62);
  });
  if (small) {
    std::vector<std::int64_t> ints;
    ints.reserve(set.size());
    for (const BigInt& v : set) ints.push_back(v.convert_to<std::int64_t>());
    auto ordered = order_impl(std::move(ints), tag);
    return FinitePermutation::from_ints(ordered);
  }
  return FinitePermutation::from_values(order_impl(std::vector<BigInt>(set.begin(), set.end()), tag));
}

FinitePermutation bit_reversal_residues(int k) {
  if (k < 0 || k > 30) throw Error(ErrorKind::BadParams, "bit reversal width out of range");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::size_t r : bit_reversed_indices(n)) out.push_back(static_cast<std::int64_t>(r));
  return FinitePermutation::from_ints(out);
}

FinitePermutation canonical_mod_perm(int k) {
  const auto base = bit_reversal_residues(k);
  const std::int64_t n = std::int64_t{1} << k;
  std::vector<std::int64_t> out;
  out.reserve(base.size());
  for (const BigInt& r : base.values()) out.push_back(r == 0 ? n : r.convert_to<std::int64_t>());
  auto perm = FinitePermutation::from_ints(out);
  if (k >= 2 && k <= 10 && !find_modular_aps(perm, 3, static_cast<std::uint64_t>(n), 1).empty())
    throw std::logic_error("bit reversal order contains a 3-AP mod 2^k");
  return perm;
}

std::vector<BigInt> octal_block(std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::BadIndex, "block index must be at least 1, got " + std::to_string(i));
  if (i > 8) throw Error(ErrorKind::BudgetExceeded, "block " + std::to_string(i) + " is too large to materialize");
  static constexpr std::int64_t first[] = {-8, -4, 4, -6, 2, -2, 6, -7, 1, -3, 5, -5, 3, 7};
  static constexpr std::int64_t even_order[] = {7, 3, 5, 1, 6, 2, 4, 0};
  static constexpr std::int64_t odd_order[] = {0, 4, 2, 6, 1, 5, 3, 7};
  std::vector<std::int64_t> cur(std::begin(first), std::end(first));
  for (std::int64_t j = 2; j <= i; ++j) {
    const auto& order = (j % 2 == 0) ? even_order : odd_order;
    std::vector<std::int64_t> next;
    next.reserve(cur.size() * 8);
    for (std::int64_t r : order)
      for (std::int64_t v : cur) next.push_back(8 * v + r);
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

FinitePermutation materialize_block(const BlockDescriptor& desc) {
  std::vector<BigInt> values = desc.enumerate();
  if (values.empty()) throw Error(ErrorKind::EmptyBlock, desc.label.empty() ? "block" : desc.label);
  const OrderingRule& rule = desc.ordering;
  if (rule.scale == 0) throw Error(ErrorKind::BadParams, "ordering scale must be nonzero");

  // pull the set back through v -> scale * v + offset
  std::vector<BigInt> base;
  base.reserve(values.size());
  for (const BigInt& v : values) {
    const BigInt shifted = v - rule.offset;
    if (shifted % rule.scale != 0)
      throw Error(ErrorKind::BadParams, "value " + v.str() + " is not in the image of the block map");
    base.push_back(shifted / rule.scale);
  }
  std::sort(base.begin(), base.end());

  std::vector<BigInt> ordered;
  switch (rule.tag) {
    case OrderingTag::explicit_list: {
      std::vector<BigInt> given = rule.explicit_order;
      std::sort(given.begin(), given.end());
      if (given != base) throw Error(ErrorKind::BadParams, "explicit order does not match the block set");
      auto perm = FinitePermutation::from_values(rule.explicit_order);
      if (!verify_ap_free(perm, 3).ap_free)
        throw Error(ErrorKind::BadParams, "explicit order contains a 3-AP");
      ordered = rule.explicit_order;
      break;
    }
    case OrderingTag::octal_recursion: {
      if (base.size() == 1) {
        ordered = base;
        break;
      }
      ordered = octal_block(desc.block_index);
      std::vector<BigInt> sorted = ordered;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != base) throw Error(ErrorKind::BadParams, "octal block does not match the block set");
      break;
    }
    default: {
      auto perm = order_3ap_free(base, rule.tag);
      ordered.assign(perm.values().begin(), perm.values().end());
    }
  }

  if (rule.scale != 1 || rule.offset != 0)
    for (BigInt& v : ordered) v = rule.scale * v + rule.offset;
  if (rule.reversed) std::reverse(ordered.begin(), ordered.end());
  return FinitePermutation::from_values(std::move(ordered));
}

}  // namespace apfree
