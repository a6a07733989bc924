#include "apfree/apcheck.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace apfree {

DiffFilter DiffFilter::divisible_by(std::uint64_t m) {
  if (m < 2) throw Error(ErrorKind::BadFilter, "divisor must be at least 2, got " + std::to_string(m));
  return {Mode::divisible_by, m};
}

DiffFilter DiffFilter::not_divisible_by(std::uint64_t m) {
  if (m < 2) throw Error(ErrorKind::BadFilter, "divisor must be at least 2, got " + std::to_string(m));
  return {Mode::not_divisible_by, m};
}

bool DiffFilter::accepts(const BigInt& d) const {
  if (mode == Mode::any) return true;
  const bool divisible = floor_mod(d, m) == 0;
  return mode == Mode::divisible_by ? divisible : !divisible;
}

namespace {

constexpr std::int64_t kSweepMaxRange = std::int64_t{1} << 26;

struct Extent {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t max_abs = 0;
};

Extent extent_of(std::span<const std::int64_t> v) {
  Extent e;
  if (v.empty()) return e;
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  e.lo = *mn;
  e.hi = *mx;
  // |INT64_MIN| does not fit; treat as huge
  e.max_abs = (e.lo == INT64_MIN) ? INT64_MAX : std::max(std::abs(e.lo), std::abs(e.hi));
  return e;
}

// Terms reached while extending a chain stay below (2k - 1) * max|v|.
bool fits_fast_path(const Extent& e, int k) {
  const std::int64_t bound = (std::int64_t{1} << 62) / (2 * static_cast<std::int64_t>(k));
  return e.max_abs < bound;
}

CheckKernel choose(std::span<const std::int64_t> seq, int k) {
  const Extent e = extent_of(seq);
  if (!fits_fast_path(e, k)) return CheckKernel::bigint;
  const auto n = static_cast<std::int64_t>(seq.size());
  if (n < 512) return CheckKernel::pair_parallel;
  const std::int64_t range = e.hi - e.lo + 1;
  // The sweep touches range / 64 words per term; the pair scan n per term.
  if (range <= kSweepMaxRange && range / 64 <= n) return CheckKernel::middle_sweep;
  return CheckKernel::pair_parallel;
}

}  // namespace

CheckKernel select_kernel(const FinitePermutation& seq, int k) {
  auto ints = seq.as_int64();
  if (!ints) return CheckKernel::bigint;
  return choose(*ints, k);
}

std::vector<Witness> find_monotone_aps(const FinitePermutation& seq, int k,
                                       const DiffFilter& filter,
                                       std::optional<std::size_t> limit, CheckKernel kernel) {
  if (k < 3) throw Error(ErrorKind::BadK, "k must be at least 3, got " + std::to_string(k));
  if (limit && *limit == 0) return {};
  if (seq.size() < static_cast<std::size_t>(k)) return {};

  auto ints = seq.as_int64();
  if (ints && !fits_fast_path(extent_of(*ints), k)) ints.reset();
  if (!ints || kernel == CheckKernel::bigint) return detail::bigint_kernel(seq, k, filter, limit);

  if (kernel == CheckKernel::automatic) kernel = choose(*ints, k);
  if (kernel == CheckKernel::middle_sweep) {
    const Extent e = extent_of(*ints);
    if (e.hi - e.lo + 1 > kSweepMaxRange) kernel = CheckKernel::pair_parallel;
  }
  switch (kernel) {
    case CheckKernel::pair_serial: return detail::pair_kernel(*ints, k, filter, limit, false);
    case CheckKernel::middle_sweep: return detail::sweep_kernel(*ints, k, filter, limit);
    default: return detail::pair_kernel(*ints, k, filter, limit, true);
  }
}

VerifyResult verify_ap_free(const FinitePermutation& seq, int k, const DiffFilter& filter,
                            CheckKernel kernel) {
  auto found = find_monotone_aps(seq, k, filter, 1, kernel);
  if (found.empty()) return {};
  return {false, std::move(found.front())};
}

namespace detail {

std::vector<Witness> bigint_kernel(const FinitePermutation& seq, int k, const DiffFilter& filter,
                                   std::optional<std::size_t> limit) {
  std::vector<Witness> out;
  const std::size_t n = seq.size();
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<Witness> row;
    for (std::size_t q = p + 1; q < n; ++q) {
      const BigInt d = seq[q] - seq[p];
      if (!filter.accepts(d)) continue;
      Witness w;
      w.values = {seq[p], seq[q]};
      w.positions = {p, q};
      w.difference = d;
      bool ok = true;
      for (int t = 2; t < k && ok; ++t) {
        BigInt next = w.values.back() + d;
        auto at = seq.position_of(next);
        ok = at && *at > w.positions.back();
        if (ok) {
          w.values.push_back(std::move(next));
          w.positions.push_back(*at);
        }
      }
      if (ok) row.push_back(std::move(w));
    }
    std::sort(row.begin(), row.end(),
              [](const Witness& a, const Witness& b) { return a.difference < b.difference; });
    for (auto& w : row) {
      out.push_back(std::move(w));
      if (limit && out.size() >= *limit) return out;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

std::vector<Witness> find_modular_aps(const FinitePermutation& perm, int k, std::uint64_t n,
                                      std::optional<std::size_t> limit) {
  if (k < 3) throw Error(ErrorKind::BadK, "k must be at least 3, got " + std::to_string(k));
  if (n == 0 || perm.size() != n)
    throw Error(ErrorKind::NotPermutationOfRange,
                "expected " + std::to_string(n) + " values, got " + std::to_string(perm.size()));
  std::vector<std::size_t> pos(n + 1);
  for (std::size_t p = 0; p < n; ++p) {
    const BigInt& v = perm[p];
    if (v < 1 || v > n)
      throw Error(ErrorKind::NotPermutationOfRange, "value " + v.str() + " outside [1, n]");
    pos[v.convert_to<std::uint64_t>()] = p;
  }

  std::vector<Witness> out;
  for (std::uint64_t d = 1; d < n; ++d) {
    // the k residues are distinct iff the additive order of d is at least k
    if (n / std::gcd(n, d) < static_cast<std::uint64_t>(k)) continue;
    for (std::uint64_t x = 1; x <= n; ++x) {
      std::uint64_t v = x;
      std::size_t last = pos[v];
      Witness w;
      w.kind = WitnessKind::modular;
      w.values.push_back(v);
      w.positions.push_back(last);
      bool ok = true;
      for (int t = 1; t < k && ok; ++t) {
        v = (v - 1 + d) % n + 1;
        ok = pos[v] > last;
        last = pos[v];
        w.values.push_back(v);
        w.positions.push_back(last);
      }
      if (!ok) continue;
      w.difference = d;
      w.modulus = n;
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
    return a.positions < b.positions;
  });
  if (limit && out.size() > *limit) out.resize(*limit);
  return out;
}

bool has_modular_ap(std::span<const int> perm, int k, std::span<int> pos) {
  const int n = static_cast<int>(perm.size());
  for (int p = 0; p < n; ++p) pos[perm[p]] = p;
  for (int d = 1; d < n; ++d) {
    if (n / std::gcd(n, d) < k) continue;
    for (int x = 1; x <= n; ++x) {
      int v = x;
      int t = 1;
      for (; t < k; ++t) {
        const int next = (v - 1 + d) % n + 1;
        if (pos[next] < pos[v]) break;
        v = next;
      }
      if (t == k) return true;
    }
  }
  return false;
}

}  // namespace apfree
