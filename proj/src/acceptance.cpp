#include "apfree/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "apfree/apcheck.hpp"
#include "apfree/blocks.hpp"
#include "apfree/constructions.hpp"
#include "apfree/density.hpp"
#include "apfree/modperm.hpp"
#include "apfree/oracles.hpp"

namespace apfree {

namespace {

// Collects the outcome of one criterion: every `expect` must hold.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  bool passed() const { return passed_; }
  std::string detail() const { return passed_ ? notes_ : "FAILED: " + failures_ + (notes_.empty() ? "" : " | " + notes_); }

 private:
  bool passed_ = true;
  std::string failures_;
  std::string notes_;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string n_terms(const Window& w) { return std::to_string(w.terms.size()) + " terms"; }

void window_free(Check& c, const std::string& name, const Window& w, int k,
                 const DiffFilter& filter = DiffFilter::any()) {
  const auto res = verify_ap_free(w.terms, k, filter);
  c.expect(res.ap_free, name + " contains a " + std::to_string(k) + "-AP");
  c.note(name + ": " + n_terms(w));
}

void density_near(Check& c, const std::string& name, ConstructionId id, const ConstructionParams& params,
                  Side side, const BigInt& N, const Rational& target, const Rational& tol) {
  DensityTarget t{id, params, side, {N}};
  const auto pts = density_series(t);
  Rational err = pts[0].ratio - target;
  if (err < 0) err = -err;
  c.expect(err <= tol, name + " ratio " + fmt(to_double(pts[0].ratio)) + " misses " + to_string(target));
  c.note(name + " ratio " + fmt(to_double(pts[0].ratio)) + " vs " + to_string(target));
}

// --- criteria --------------------------------------------------------------

void p_window(Check& c) {
  const Window w = p_through_block(4);
  c.expect(w.terms.size() == 8192, "P through X_4 has " + n_terms(w));
  c.expect(w.value_cover.covers_interval(-4096, 4095), "P through X_4 misses part of [-4096, 4095]");
  window_free(c, "P through X_4", w, 5);
}

void p_stretch(Check& c) {
  const Window w = p_through_block(5);
  c.expect(w.terms.size() == 65536, "P through X_5 has " + n_terms(w));
  window_free(c, "P through X_5", w, 5);
}

void t_windows(Check& c) {
  const Window t = t_window(4);
  c.expect(t.terms.size() == 8192, "T through Z_4 has " + n_terms(t));
  window_free(c, "T through Z_4", t, 5);
  const Window d = doubled_p_window(8192);
  c.expect(d.terms.size() == 2 * 8192, "doubled-P window has " + n_terms(d));
  window_free(c, "doubled-P", d, 5);
}

void r_windows(Check& c) {
  for (std::uint64_t n : {2u, 4u}) {
    const Window w = r_groups(n, 3, 3);
    window_free(c, "R(n=" + std::to_string(n) + ")", w, 4, DiffFilter::not_divisible_by(n));
  }
}

void r_prime(Check& c) {
  const Window w = r_prime_groups(2, 3, 3);
  window_free(c, "R-prime(n=2, a=3)", w, 4);
  ConstructionParams p;
  p.n = 2;
  p.a = 3;
  const Rational target = closed_form(ConstructionId::R_prime, p, LimitKind::liminf);
  c.expect(target == Rational(5, 8), "closed form is " + to_string(target));
  density_near(c, "at 3^12", ConstructionId::R_prime, p, Side::positive_half, pow(BigInt(3), 12), target,
               Rational(1, 100));
}

void signed_parity(Check& c) {
  const Window w = signed_parity_window(6, 6);
  window_free(c, "signed-parity(a=6) through 6", w, 4);
  ConstructionParams p;
  p.a = 6;
  const Rational lo = closed_form(ConstructionId::signed_parity, p, LimitKind::liminf);
  const Rational hi = closed_form(ConstructionId::signed_parity, p, LimitKind::limsup);
  c.expect(lo == Rational(3, 5) && hi == Rational(4, 5), "closed forms " + to_string(lo) + ", " + to_string(hi));
  constexpr int kLast = 60;
  const auto lows = boundary_family(ConstructionId::signed_parity, p, LimitKind::liminf, kLast, 1);
  const auto highs = boundary_family(ConstructionId::signed_parity, p, LimitKind::limsup, kLast, 1);
  density_near(c, "at 6^60", ConstructionId::signed_parity, p, Side::symmetric, lows.back(), lo, Rational(1, 100));
  density_near(c, "at 6^60/3", ConstructionId::signed_parity, p, Side::symmetric, highs.back(), hi,
               Rational(1, 100));
}

void k_family(Check& c) {
  const Window w = k_window(16);
  window_free(c, "K through 16", w, 3);
  density_near(c, "at 2^30", ConstructionId::K, {}, Side::symmetric, pow(BigInt(2), 30), Rational(3, 10),
               Rational(1, 10000));
}

void partition(Check& c) {
  const auto report = partition_check(12);
  c.expect(report.exact && report.violations.empty(),
           std::to_string(report.violations.size()) + " cover violations");
  c.note("exact cover of [-" + to_decimal(report.W) + ", " + to_decimal(report.W) + "]");
  const auto ws = partition_windows(16);
  window_free(c, "K-prime through 16", ws.kprime, 3);
  window_free(c, "K-double-prime through 16", ws.kdoubleprime, 3);
}

void prime_rows(Check& c) {
  const auto& table = prime_witness_table();
  c.expect(table.size() == 9, std::to_string(table.size()) + " rows");
  for (const auto& [p, row] : table)
    c.expect(find_modular_aps(row, 4, p).empty(), "row " + std::to_string(p) + " has a 4-AP mod p");
  c.note(std::to_string(table.size()) + " rows clean");
}

void brute_counts(Check& c) {
  const std::uint64_t expected[] = {2, 0, 8, 0, 0, 0, 128};
  std::string got;
  for (int n = 2; n <= 8; ++n) {
    const auto v = brute_count_mod_free(n, 3);
    c.expect(v == expected[n - 2], "n=" + std::to_string(n) + " gives " + std::to_string(v));
    got += (n > 2 ? " " : "") + std::to_string(v);
  }
  c.note("counts n=2..8: " + got);
}

void structured(Check& c) {
  for (int k = 1; k <= 3; ++k) {
    const auto fam = enumerate_structured(k);
    const std::uint64_t n = std::uint64_t{1} << k;
    c.expect(BigInt(fam.size()) == structured_count_closed(k),
             "k=" + std::to_string(k) + " enumerates " + std::to_string(fam.size()));
    std::set<std::vector<BigInt>> seen;
    for (const auto& perm : fam) {
      c.expect(find_modular_aps(perm, 3, n).empty(), "k=" + std::to_string(k) + " emits a 3-AP mod 2^k");
      seen.emplace(perm.values().begin(), perm.values().end());
    }
    c.expect(seen.size() == fam.size(), "k=" + std::to_string(k) + " repeats a permutation");
    if (k <= 2) {
      std::set<std::vector<BigInt>> brute;
      for (const auto& p : oracle::mod_free_permutations(static_cast<int>(n), 3))
        brute.emplace(p.begin(), p.end());
      c.expect(brute == seen, "k=" + std::to_string(k) + " set differs from brute force");
    }
  }
  for (int k = 0; k <= 16; ++k)
    c.expect(structured_count_recurrence(k) == structured_count_closed(k),
             "recurrence differs at k=" + std::to_string(k));
  c.note("k=1..3 counts 2, 8, 128; recurrence matches closed form for k<=16");
}

void products(Check& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // verified factors per k, grown by the compositions themselves
  std::map<int, std::vector<std::pair<std::uint64_t, FinitePermutation>>> pool;
  for (int j = 1; j <= 5; ++j) pool[3].emplace_back(std::uint64_t{1} << j, canonical_mod_perm(j));
  for (const auto& [p, row] : prime_witness_table()) pool[4].emplace_back(p, row);
  for (auto& [k, factors] : pool)
    for (const auto& [n, perm] : factors)
      c.expect(find_modular_aps(perm, k, n).empty(), "factor " + std::to_string(n) + " not clean");

  int done = 0;
  std::set<std::string> shapes;
  while (done < 50) {
    const int k = 3 + static_cast<int>(rng() % 2);
    auto& factors = pool[k];
    const auto& [n, A] = factors[rng() % factors.size()];
    const auto& [m, B] = factors[rng() % factors.size()];
    if (n * m > 64) continue;
    const auto prod = product_mod_perm(A, B, k);
    const bool clean = prod.size() == n * m && find_modular_aps(prod, k, n * m).empty();
    c.expect(clean, std::to_string(n) + "x" + std::to_string(m) + " for k=" + std::to_string(k));
    shapes.insert(std::to_string(n * m));
    if (clean && std::none_of(factors.begin(), factors.end(), [&](const auto& f) { return f.first == n * m; }))
      factors.emplace_back(n * m, prod);
    ++done;
  }
  c.note("50 compositions, " + std::to_string(shapes.size()) + " distinct sizes");

  const auto r = permissible(12, 4);
  c.expect(r.permissible && r.witness, "12 not reported 4-permissible with a witness");
  if (r.witness) c.expect(find_modular_aps(*r.witness, 4, 12).empty(), "witness for 12 has a 4-AP mod 12");
}

void search(Check& c) {
  constexpr std::uint64_t kBudget = 100'000'000;
  std::uint64_t nodes = 0;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto r = search_mod_free(p, 4, kBudget);
    nodes += r.nodes;
    c.expect(r.witness.has_value(), "no witness for p=" + std::to_string(p));
    if (r.witness) c.expect(find_modular_aps(*r.witness, 4, p).empty(), "bad witness for p=" + std::to_string(p));
  }
  for (std::uint64_t n : {3u, 5u, 6u, 7u}) {
    const auto r = search_mod_free(n, 3, kBudget);
    nodes += r.nodes;
    c.expect(r.exhausted && !r.witness, "n=" + std::to_string(n) + " not exhausted");
  }
  c.note(std::to_string(nodes) + " nodes");
}

void oracle_equivalence(Check& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr CheckKernel kernels[] = {CheckKernel::automatic, CheckKernel::pair_serial, CheckKernel::pair_parallel,
                                     CheckKernel::middle_sweep, CheckKernel::bigint};
  std::size_t witnesses = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto len = static_cast<std::size_t>(rng() % 41);
    const int k = 3 + static_cast<int>(rng() % 3);
    // narrow value ranges make progressions plentiful
    const std::int64_t span = static_cast<std::int64_t>(len) + static_cast<std::int64_t>(rng() % (3 * len + 10));
    const std::int64_t base = static_cast<std::int64_t>(rng() % 200) - 100;
    std::vector<std::int64_t> pool(static_cast<std::size_t>(span));
    std::iota(pool.begin(), pool.end(), base);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(len, pool.size()));
    const auto filter = trial % 5 == 0   ? DiffFilter::divisible_by(2 + rng() % 3)
                        : trial % 5 == 1 ? DiffFilter::not_divisible_by(2 + rng() % 3)
                                         : DiffFilter::any();
    const auto expected = oracle::monotone_aps(pool, k, filter);
    witnesses += expected.size();
    const auto seq = FinitePermutation::from_ints(pool);
    for (auto kernel : kernels)
      if (find_monotone_aps(seq, k, filter, std::nullopt, kernel) != expected) {
        c.expect(false, "trial " + std::to_string(trial) + " mismatch");
        break;
      }
  }
  c.note("500 sequences, " + std::to_string(witnesses) + " witnesses");

  std::vector<std::int64_t> perm{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t perms = 0, mismatches = 0;
  do {
    ++perms;
    const auto expected = oracle::modular_aps(perm, 3, 8);
    if (find_modular_aps(FinitePermutation::from_ints(perm), 3, 8) != expected) ++mismatches;
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.expect(mismatches == 0, std::to_string(mismatches) + " modular mismatches");
  c.note(std::to_string(perms) + " permutations of [1, 8]");
}

struct Entry {
  const char* name;
  std::function<void(Check&, const AcceptanceOptions&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"P window through X_4 has no monotone 5-AP", [](Check& c, const auto&) { p_window(c); }},
      {"T window and doubled-P window have no monotone 5-AP", [](Check& c, const auto&) { t_windows(c); }},
      {"R windows: no 4-AP with difference not divisible by n", [](Check& c, const auto&) { r_windows(c); }},
      {"R-prime window has no 4-AP; density near 5/8", [](Check& c, const auto&) { r_prime(c); }},
      {"signed-parity window has no 4-AP; densities near 3/5 and 4/5",
       [](Check& c, const auto&) { signed_parity(c); }},
      {"K window has no 3-AP; density at 2^30 near 3/10", [](Check& c, const auto&) { k_family(c); }},
      {"K, K-prime, K-double-prime partition the integers", [](Check& c, const auto&) { partition(c); }},
      {"prime witness rows have no 4-AP mod p", [](Check& c, const auto&) { prime_rows(c); }},
      {"brute-force counts of 3-AP-free permutations mod n", [](Check& c, const auto&) { brute_counts(c); }},
      {"structured mod-2^k family: counts, cleanliness, exact sets",
       [](Check& c, const auto&) { structured(c); }},
      {"product construction preserves freeness; 12 is 4-permissible",
       [](Check& c, const AcceptanceOptions& o) { products(c, o.seed); }},
      {"search finds prime witnesses and exhausts impossible n", [](Check& c, const auto&) { search(c); }},
      {"checkers agree with naive enumeration",
       [](Check& c, const AcceptanceOptions& o) { oracle_equivalence(c, o.seed); }},
  };
  return table;
}

CriterionResult run_entry(int id, const std::string& name, bool gating,
                          const std::function<void(Check&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.gating = gating;
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = c.passed();
  r.detail = c.detail();
  return r;
}

}  // namespace

int criterion_count() { return static_cast<int>(entries().size()); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) throw Error(ErrorKind::BadIndex, "no criterion " + std::to_string(id));
  return entries()[static_cast<std::size_t>(id - 1)].name;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > criterion_count()) {
    CriterionResult r;
    r.id = id;
    r.detail = "no such criterion";
    return r;
  }
  const auto& e = entries()[static_cast<std::size_t>(id - 1)];
  return run_entry(id, e.name, true, [&](Check& c) { e.run(c, options); });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id)
    if (options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end())
      out.push_back(run_criterion(id, options));
  if (options.stretch)
    out.push_back(run_entry(0, "P window through X_5 has no monotone 5-AP (stretch)", false, p_stretch));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : (r.gating ? "FAIL" : "MISS")) << "  ";
  if (r.gating) {
    os << (r.id < 10 ? " " : "") << r.id;
  } else {
    os << " *";
  }
  os << "  " << r.name << "  (" << fmt(r.seconds, 2) << " s)";
  if (!r.detail.empty()) os << "  " << r.detail;
  return os.str();
}

}  // namespace apfree
