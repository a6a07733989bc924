#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <catch_amalgamated.hpp>

#include "apfree/apcheck.hpp"
#include "apfree/blocks.hpp"
#include "apfree/modperm.hpp"
#include "apfree/oracles.hpp"

using namespace apfree;

namespace {

std::vector<std::int64_t> ints(const FinitePermutation& p) { return *p.as_int64(); }

bool mod_free(const FinitePermutation& p, int k) { return find_modular_aps(p, k, p.size(), 1).empty(); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::DuplicateValue;
}

}  // namespace

TEST_CASE("product construction examples") {
  const auto a = FinitePermutation::from_ints({2, 1});
  CHECK(ints(product_mod_perm(a, a, 3)) == std::vector<std::int64_t>{4, 2, 3, 1});
  const auto b = FinitePermutation::from_ints({4, 2, 3, 1});
  CHECK(product_mod_perm(FinitePermutation::from_ints({1}), b, 3) == b);
  const auto ab = product_mod_perm(a, b, 3);
  CHECK(ab.size() == 8);
  CHECK(mod_free(ab, 3));
  CHECK(kind_of([&] { product_mod_perm(FinitePermutation::from_ints({1, 2, 3}), a, 3); }) == ErrorKind::PrereqFailed);
  CHECK(kind_of([&] { product_mod_perm(a, FinitePermutation::from_ints({1, 3, 2}), 3); }) == ErrorKind::PrereqFailed);
}

TEST_CASE("products of verified factors stay free") {
  std::vector<std::pair<int, FinitePermutation>> pool;
  for (int j = 1; j <= 5; ++j) pool.emplace_back(3, canonical_mod_perm(j));
  for (const auto& [p, row] : prime_witness_table()) pool.emplace_back(4, row);
  for (const auto& [k, A] : pool)
    for (const auto& [k2, B] : pool) {
      if (A.size() * B.size() > 64) continue;
      const int kk = std::max(k, k2);
      if (!mod_free(A, kk) || !mod_free(B, kk)) {
        CHECK(kind_of([&] { product_mod_perm(A, B, kk); }) == ErrorKind::PrereqFailed);
        continue;
      }
      INFO(A.size() << " x " << B.size() << ", k = " << kk);
      CHECK(mod_free(product_mod_perm(A, B, kk), kk));
    }
}

TEST_CASE("structured permutations") {
  const std::vector<FinitePermutation> one{FinitePermutation::from_ints({1})};
  CHECK(ints(structured_mod_perm(1, 1, one)) == std::vector<std::int64_t>{1, 2});
  CHECK(ints(structured_mod_perm(1, 2, one)) == std::vector<std::int64_t>{2, 1});
  const std::vector<FinitePermutation> two{FinitePermutation::from_ints({1}), FinitePermutation::from_ints({2, 1})};
  CHECK(ints(structured_mod_perm(2, 4, two)) == std::vector<std::int64_t>{4, 2, 3, 1});
  const std::vector<FinitePermutation> canon{FinitePermutation::from_ints({1}), FinitePermutation::from_ints({2, 1}),
                                             canonical_mod_perm(2)};
  const auto p8 = ints(structured_mod_perm(3, 8, canon));
  CHECK(p8[0] == 8);
  CHECK(p8[1] == 4);
  CHECK(kind_of([&] { structured_mod_perm(2, 5, two); }) == ErrorKind::BadAnchor);
  CHECK(kind_of([&] { structured_mod_perm(2, 1, one); }) == ErrorKind::BadChoice);
}

TEST_CASE("structured family enumeration") {
  const auto k1 = enumerate_structured(1);
  REQUIRE(k1.size() == 2);
  std::set<std::vector<std::int64_t>> s1;
  for (const auto& p : k1) s1.insert(ints(p));
  CHECK(s1 == std::set<std::vector<std::int64_t>>{{1, 2}, {2, 1}});

  for (int k = 0; k <= StructuredFamily::kMaxK; ++k) {
    const StructuredFamily fam(k);
    INFO("k = " << k);
    CHECK(BigInt(fam.size()) == structured_count_closed(k));
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& p : fam.all()) {
      REQUIRE(mod_free(p, 3));
      seen.insert(ints(p));
    }
    CHECK(seen.size() == fam.size());
    if (k <= 3) {
      const auto brute = oracle::mod_free_permutations(1 << k, 3);
      CHECK(seen == std::set<std::vector<std::int64_t>>(brute.begin(), brute.end()));
    }
  }
  CHECK(kind_of([] { StructuredFamily(5); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("count recurrence equals the closed form") {
  for (int k = 0; k <= 16; ++k) CHECK(structured_count_recurrence(k) == structured_count_closed(k));
  CHECK(structured_count_closed(3) == 128);
}

TEST_CASE("brute-force counts") {
  const std::uint64_t expected[] = {1, 2, 0, 8, 0, 0, 0, 128};
  for (int n = 1; n <= 8; ++n) {
    CHECK(brute_count_mod_free(n, 3, 10, false) == expected[n - 1]);
    CHECK(brute_count_mod_free(n, 3, 10, true) == expected[n - 1]);
    CHECK(brute_count_mod_free(n, 3) == oracle::mod_free_permutations(n, 3).size());
  }
  for (int n = 2; n <= 7; ++n)
    CHECK(brute_count_mod_free(n, 4, 10, true) == oracle::mod_free_permutations(n, 4).size());
  CHECK(kind_of([] { brute_count_mod_free(11, 3); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("accepted permutations of [1, 2^k] split by parity halves") {
  for (int k = 1; k <= 3; ++k)
    for (const auto& p : oracle::mod_free_permutations(1 << k, 3)) {
      const std::size_t half = p.size() / 2;
      const bool first = p[0] % 2 == 0;
      for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(((p[i] % 2 == 0) == first) == (i < half));
    }
}

TEST_CASE("search") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto r = search_mod_free(p, 4, 100'000'000);
    REQUIRE(r.witness);
    CHECK(r.witness->size() == p);
    CHECK(mod_free(*r.witness, 4));
  }
  for (std::uint64_t n : {3u, 5u, 6u, 7u}) {
    const auto r = search_mod_free(n, 3, 100'000'000);
    CHECK(r.exhausted);
    CHECK_FALSE(r.witness);
  }
  const auto tiny = search_mod_free(13, 4, 10);
  CHECK_FALSE(tiny.witness);
  CHECK_FALSE(tiny.exhausted);
}

TEST_CASE("prime witness table") {
  const auto& t = prime_witness_table();
  CHECK(t.size() == 9);
  CHECK(ints(t.at(7)) == std::vector<std::int64_t>{7, 4, 2, 6, 3, 5, 1});
  CHECK(ints(t.at(11)) == std::vector<std::int64_t>{11, 2, 7, 9, 10, 6, 1, 4, 8, 5, 3});
  const auto r23 = ints(t.at(23));
  CHECK(std::vector<std::int64_t>(r23.begin(), r23.begin() + 6) == std::vector<std::int64_t>{23, 1, 22, 15, 3, 11});
  for (const auto& [p, row] : t) CHECK(find_modular_aps(row, 4, p).empty());
}

TEST_CASE("permissibility") {
  const auto r12 = permissible(12, 4);
  CHECK(r12.permissible);
  REQUIRE(r12.witness);
  CHECK(mod_free(*r12.witness, 4));
  CHECK_FALSE(permissible(6, 3).permissible);
  CHECK(permissible(16, 3).permissible);
  CHECK(permissible(9, 5).permissible);
  CHECK(kind_of([] { permissible(12, 2); }) == ErrorKind::BadK);
  CHECK(kind_of([] { permissible(29, 4, 5); }) == ErrorKind::Undecidable);
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 2, 2, 3, 3, 5});
}
