#include "apfree/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace apfree::oracle {

namespace {

void extend_monotone(std::span<const std::int64_t> seq, int k, const DiffFilter& filter,
                     std::vector<std::size_t>& idx, std::vector<Witness>& out) {
  if (idx.size() == static_cast<std::size_t>(k)) {
    const std::int64_t d = seq[idx[1]] - seq[idx[0]];
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (seq[idx[t]] - seq[idx[t - 1]] != d) return;
    if (d == 0 || !filter.accepts(d)) return;
    Witness w;
    for (std::size_t p : idx) {
      w.values.emplace_back(seq[p]);
      w.positions.push_back(p);
    }
    w.difference = d;
    out.push_back(std::move(w));
    return;
  }
  const std::size_t start = idx.empty() ? 0 : idx.back() + 1;
  for (std::size_t p = start; p < seq.size(); ++p) {
    // a prefix that already breaks the common difference cannot complete
    if (idx.size() >= 2 && seq[p] - seq[idx.back()] != seq[idx[1]] - seq[idx[0]]) continue;
    idx.push_back(p);
    extend_monotone(seq, k, filter, idx, out);
    idx.pop_back();
  }
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

void extend_modular(std::span<const std::int64_t> perm, int k, std::int64_t n,
                    std::vector<std::size_t>& idx, std::vector<Witness>& out) {
  if (idx.size() == static_cast<std::size_t>(k)) {
    const std::int64_t d = mod(perm[idx[1]] - perm[idx[0]], n);
    if (d == 0) return;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (mod(perm[idx[t]] - perm[idx[t - 1]], n) != d) return;
    std::vector<std::int64_t> vals;
    for (std::size_t p : idx) vals.push_back(perm[p]);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return;
    Witness w;
    w.kind = WitnessKind::modular;
    for (std::size_t p : idx) {
      w.values.emplace_back(perm[p]);
      w.positions.push_back(p);
    }
    w.difference = d;
    w.modulus = static_cast<std::uint64_t>(n);
    out.push_back(std::move(w));
    return;
  }
  const std::size_t start = idx.empty() ? 0 : idx.back() + 1;
  for (std::size_t p = start; p < perm.size(); ++p) {
    idx.push_back(p);
    extend_modular(perm, k, n, idx, out);
    idx.pop_back();
  }
}

}  // namespace

std::vector<Witness> monotone_aps(std::span<const std::int64_t> seq, int k, const DiffFilter& filter) {
  std::vector<Witness> out;
  std::vector<std::size_t> idx;
  extend_monotone(seq, k, filter, idx, out);
  std::stable_sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
    if (a.positions[0] != b.positions[0]) return a.positions[0] < b.positions[0];
    return a.difference < b.difference;
  });
  return out;
}

std::vector<Witness> modular_aps(std::span<const std::int64_t> perm, int k, std::uint64_t n) {
  std::vector<Witness> out;
  std::vector<std::size_t> idx;
  extend_modular(perm, k, static_cast<std::int64_t>(n), idx, out);
  std::sort(out.begin(), out.end(),
            [](const Witness& a, const Witness& b) { return a.positions < b.positions; });
  return out;
}

std::vector<std::vector<std::int64_t>> mod_free_permutations(int n, int k) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<std::int64_t>> out;
  do {
    if (modular_aps(perm, k, static_cast<std::uint64_t>(n)).empty()) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace apfree::oracle
