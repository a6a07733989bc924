#include "apfree/modperm.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "apfree/apcheck.hpp"
#include "apfree/blocks.hpp"

namespace apfree {

namespace {

bool mod_free(const FinitePermutation& p, int k) {
  return find_modular_aps(p, k, p.size(), 1).empty();
}

std::vector<std::uint64_t> as_u64(const FinitePermutation& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.size());
  for (const BigInt& v : p.values()) out.push_back(v.convert_to<std::uint64_t>());
  return out;
}

FinitePermutation from_u64(const std::vector<std::uint64_t>& v) {
  std::vector<std::int64_t> s(v.begin(), v.end());
  return FinitePermutation::from_ints(s);
}

}  // namespace

FinitePermutation product_mod_perm(const FinitePermutation& A, const FinitePermutation& B, int k) {
  if (A.empty() || !mod_free(A, k)) throw Error(ErrorKind::PrereqFailed, "A");
  if (B.empty() || !mod_free(B, k)) throw Error(ErrorKind::PrereqFailed, "B");
  const std::uint64_t m = B.size();
  const auto a = as_u64(A);
  std::vector<std::uint64_t> out;
  out.reserve(a.size() * m);
  for (std::uint64_t bj : as_u64(B))
    for (std::uint64_t ai : a) out.push_back(m * (ai - 1) + bj);
  return from_u64(out);
}

FinitePermutation structured_mod_perm(int k, std::uint64_t anchor,
                                      const std::vector<FinitePermutation>& sub_perms) {
  if (k < 0 || k > 30) throw Error(ErrorKind::BadParams, "k out of range: " + std::to_string(k));
  const std::uint64_t n = std::uint64_t{1} << k;
  if (anchor < 1 || anchor > n)
    throw Error(ErrorKind::BadAnchor, std::to_string(anchor) + " is outside [1, " + std::to_string(n) + "]");
  if (sub_perms.size() != static_cast<std::size_t>(k))
    throw Error(ErrorKind::BadChoice, "expected " + std::to_string(k) + " sub-permutations, got " +
                                          std::to_string(sub_perms.size()));
  auto reduce = [n](std::uint64_t v) { return (v - 1) % n + 1; };

  std::vector<std::uint64_t> out{anchor};
  out.reserve(n);
  for (int t = 1; t <= k; ++t) {
    const FinitePermutation& sub = sub_perms[static_cast<std::size_t>(t - 1)];
    const std::uint64_t size = std::uint64_t{1} << (t - 1);
    const std::string where = "level " + std::to_string(t);
    if (sub.size() != size) throw Error(ErrorKind::BadChoice, where + ": wrong size");
    try {
      if (size >= 3 && !mod_free(sub, 3)) throw Error(ErrorKind::BadChoice, where + ": contains a 3-AP");
      if (size < 3) find_modular_aps(sub, 3, size);  // range check only
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BadChoice) throw;
      throw Error(ErrorKind::BadChoice, where + ": not a permutation of [1, " + std::to_string(size) + "]");
    }
    const std::uint64_t step = std::uint64_t{1} << (k - t + 1);
    const std::uint64_t shift = std::uint64_t{1} << (k - t);
    // anchor + n keeps the value positive before reduction
    for (std::uint64_t s : as_u64(sub)) out.push_back(reduce(s * step + anchor + n - shift));
  }
  return from_u64(out);
}

// ---------------------------------------------------------------------------

namespace {

// Member `index` of the structured family of [1, 2^k]; lower[t] is the family
// of [1, 2^t] for t < k.
FinitePermutation decode(int k, std::uint64_t index,
                         const std::vector<std::vector<FinitePermutation>>& lower) {
  const std::uint64_t n = std::uint64_t{1} << k;
  const std::uint64_t anchor = index % n + 1;
  std::uint64_t rest = index / n;
  std::vector<FinitePermutation> choices;
  for (int t = 1; t <= k; ++t) {
    const auto& level = lower[static_cast<std::size_t>(t - 1)];
    choices.push_back(level[rest % level.size()]);
    rest /= level.size();
  }
  return structured_mod_perm(k, anchor, choices);
}

}  // namespace

StructuredFamily::StructuredFamily(int k) : k_(k) {
  if (k < 0) throw Error(ErrorKind::BadParams, "k must be nonnegative");
  if (k > kMaxK)
    throw Error(ErrorKind::BudgetExceeded,
                "enumeration is capped at k = " + std::to_string(kMaxK) + "; use the count formula");
  lower_.push_back({FinitePermutation::from_ints({1})});
  for (int j = 1; j < k; ++j) {
    const auto size = structured_count_recurrence(j).convert_to<std::uint64_t>();
    std::vector<FinitePermutation> family;
    family.reserve(size);
    for (std::uint64_t i = 0; i < size; ++i) family.push_back(decode(j, i, lower_));
    lower_.push_back(std::move(family));
  }
  count_ = structured_count_recurrence(k).convert_to<std::uint64_t>();
}

FinitePermutation StructuredFamily::at(std::uint64_t index) const {
  if (index >= count_) throw Error(ErrorKind::BadIndex, "index beyond the family size");
  if (k_ == 0) return FinitePermutation::from_ints({1});
  return decode(k_, index, lower_);
}

std::vector<FinitePermutation> StructuredFamily::all() const {
  std::vector<FinitePermutation> out;
  out.reserve(count_);
  for (std::uint64_t i = 0; i < count_; ++i) out.push_back(at(i));
  return out;
}

std::vector<FinitePermutation> enumerate_structured(int k) { return StructuredFamily(k).all(); }

BigInt structured_count_closed(int k) {
  if (k < 0) throw Error(ErrorKind::BadParams, "k must be nonnegative");
  return pow(BigInt(2), (std::uint64_t{1} << k) - 1);
}

BigInt structured_count_recurrence(int k) {
  if (k < 0) throw Error(ErrorKind::BadParams, "k must be nonnegative");
  std::vector<BigInt> phi{1};
  for (int j = 1; j <= k; ++j) {
    BigInt v = pow(BigInt(2), static_cast<std::uint64_t>(j));
    for (const BigInt& p : phi) v *= p;
    phi.push_back(std::move(v));
  }
  return phi.back();
}

// ---------------------------------------------------------------------------

std::uint64_t brute_count_mod_free(int n, int k, int cap, bool parallel) {
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be positive");
  if (k < 3) throw Error(ErrorKind::BadK, "k must be at least 3, got " + std::to_string(k));
  if (n > cap) throw Error(ErrorKind::BudgetExceeded, std::to_string(n) + "! permutations exceed the cap");
  std::uint64_t total = 0;
  // one task per first element; each permutes the remaining values in order
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total) if (parallel)
  for (int first = 1; first <= n; ++first) {
    std::vector<int> perm{first};
    for (int v = 1; v <= n; ++v)
      if (v != first) perm.push_back(v);
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    do {
      if (!has_modular_ap(perm, k, pos)) ++total;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

class ModSearch {
 public:
  ModSearch(std::uint64_t n, int k, std::uint64_t budget)
      : n_(static_cast<std::int64_t>(n)), k_(k), budget_(budget),
        pos_(static_cast<std::size_t>(n) + 1, -1) {
    for (std::int64_t d = 1; d < n_; ++d)
      if (n_ / std::gcd(n_, d) >= k_) diffs_.push_back(d);
  }

  PermissibilityResult run() {
    PermissibilityResult r;
    r.n = static_cast<std::uint64_t>(n_);
    r.k = k_;
    const bool found = place(0);
    r.nodes = nodes_;
    if (found) {
      r.witness = FinitePermutation::from_ints(placed_);
      r.exhausted = false;
    } else {
      r.exhausted = !out_of_budget_;
    }
    return r;
  }

 private:
  std::int64_t wrap(std::int64_t v) const { return ((v - 1) % n_ + n_) % n_ + 1; }

  // Would value v at position p be the last term of a k-AP mod n?
  bool completes(std::int64_t v, std::int64_t p) const {
    for (std::int64_t d : diffs_) {
      std::int64_t last = p;
      std::int64_t u = v;
      int t = 1;
      for (; t < k_; ++t) {
        u = wrap(u - d);
        const std::int64_t q = pos_[static_cast<std::size_t>(u)];
        if (q < 0 || q >= last) break;
        last = q;
      }
      if (t == k_) return true;
    }
    return false;
  }

  bool place(std::int64_t p) {
    if (p == n_) return true;
    for (std::int64_t v = 1; v <= n_; ++v) {
      if (pos_[static_cast<std::size_t>(v)] >= 0) continue;
      if (++nodes_ > budget_) {
        out_of_budget_ = true;
        return false;
      }
      if (completes(v, p)) continue;
      pos_[static_cast<std::size_t>(v)] = p;
      placed_.push_back(v);
      if (place(p + 1)) return true;
      placed_.pop_back();
      pos_[static_cast<std::size_t>(v)] = -1;
      if (out_of_budget_) return false;
    }
    return false;
  }

  std::int64_t n_;
  int k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<std::int64_t> diffs_;
  std::vector<std::int64_t> pos_;
  std::vector<std::int64_t> placed_;
};

}  // namespace

PermissibilityResult search_mod_free(std::uint64_t n, int k, std::uint64_t budget) {
  if (k < 3) throw Error(ErrorKind::BadK, "k must be at least 3, got " + std::to_string(k));
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be positive");
  return ModSearch(n, k, budget).run();
}

const std::map<std::uint64_t, FinitePermutation>& prime_witness_table() {
  static const auto table = [] {
    const std::map<std::uint64_t, std::vector<std::int64_t>> rows = {
        {2, {2, 1}},
        {3, {3, 1, 2}},
        {5, {5, 1, 3, 4, 2}},
        {7, {7, 4, 2, 6, 3, 5, 1}},
        {11, {11, 2, 7, 9, 10, 6, 1, 4, 8, 5, 3}},
        {13, {13, 10, 3, 5, 4, 12, 8, 1, 2, 9, 6, 7, 11}},
        {17, {17, 3, 8, 7, 12, 1, 5, 13, 4, 15, 14, 9, 16, 6, 11, 10, 2}},
        {19, {19, 3, 1, 9, 6, 5, 2, 15, 7, 13, 14, 10, 8, 17, 4, 16, 18, 12, 11}},
        {23, {23, 1, 22, 15, 3, 11, 2, 13, 18, 17, 20, 7, 8, 10, 5, 9, 6, 21, 4, 19, 14, 12, 16}},
    };
    std::map<std::uint64_t, FinitePermutation> out;
    for (const auto& [p, row] : rows) {
      auto perm = FinitePermutation::from_ints(row);
      if (!find_modular_aps(perm, 4, p, 1).empty())
        throw std::logic_error("witness row for " + std::to_string(p) + " contains a 4-AP");
      out.emplace(p, std::move(perm));
    }
    return out;
  }();
  return table;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Permissibility permissible(std::uint64_t n, int k, std::uint64_t budget) {
  if (k < 3) throw Error(ErrorKind::BadK, "k must be at least 3, got " + std::to_string(k));
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be positive");
  constexpr std::uint64_t kMaxWitness = 1 << 20;

  if (k == 3) {
    Permissibility r;
    r.permissible = (n & (n - 1)) == 0;
    if (r.permissible && n <= kMaxWitness) {
      int bits = 0;
      while ((std::uint64_t{1} << bits) < n) ++bits;
      r.witness = canonical_mod_perm(bits);
    }
    return r;
  }

  // one witness per prime factor, folded with the product construction
  std::vector<FinitePermutation> rows;
  bool complete = true;
  for (std::uint64_t p : prime_factors(n)) {
    const auto& table = prime_witness_table();
    if (auto it = table.find(p); it != table.end()) {
      rows.push_back(it->second);
      continue;
    }
    if (k >= 5) {
      complete = false;
      continue;
    }
    auto found = search_mod_free(p, k, budget);
    if (found.witness) {
      rows.push_back(*found.witness);
    } else if (found.exhausted) {
      return {false, std::nullopt};
    } else {
      throw Error(ErrorKind::Undecidable, std::to_string(p));
    }
  }

  Permissibility r;
  r.permissible = true;
  if (n == 1) {
    r.witness = FinitePermutation::from_ints({1});
  } else if (complete && n <= kMaxWitness) {
    FinitePermutation w = rows.front();
    for (std::size_t i = 1; i < rows.size(); ++i) w = product_mod_perm(w, rows[i], k);
    r.witness = w;
  }
  return r;
}

}  // namespace apfree
