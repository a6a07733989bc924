#include <algorithm>
#include <random>
#include <set>

#include <catch_amalgamated.hpp>

#include "apfree/apcheck.hpp"
#include "apfree/blocks.hpp"
#include "apfree/oracles.hpp"

using namespace apfree;

namespace {

std::vector<std::int64_t> ints(const FinitePermutation& p) { return *p.as_int64(); }

// Evens (or odds) form a prefix at this level, then each class recursively.
bool parity_split(std::vector<std::int64_t> seq, bool evens_first) {
  if (seq.size() <= 2) return std::is_sorted(seq.begin(), seq.end());
  auto is_first = [&](std::int64_t v) { return ((v % 2 == 0) == evens_first); };
  const auto mid = std::find_if_not(seq.begin(), seq.end(), is_first);
  if (!std::all_of(mid, seq.end(), [&](std::int64_t v) { return !is_first(v); })) return false;
  auto half = [](std::int64_t v) { return (v - ((v % 2) + 2) % 2) / 2; };
  std::vector<std::int64_t> a, b;
  std::transform(seq.begin(), mid, std::back_inserter(a), half);
  std::transform(mid, seq.end(), std::back_inserter(b), half);
  return parity_split(a, evens_first) && parity_split(b, evens_first);
}

}  // namespace

TEST_CASE("parity recursion examples") {
  const std::vector<BigInt> s1{1, 2, 3, 4};
  CHECK(ints(order_3ap_free(s1)) == std::vector<std::int64_t>{2, 4, 1, 3});
  const std::vector<BigInt> s2{5};
  CHECK(ints(order_3ap_free(s2)) == std::vector<std::int64_t>{5});
  const std::vector<BigInt> s3{-6, -5, -4};
  CHECK(ints(order_3ap_free(s3)) == std::vector<std::int64_t>{-6, -4, -5});
  const std::vector<std::int64_t> evens{2, 4, 6, 8};
  CHECK(order_3ap_free_i64(evens) == std::vector<std::int64_t>{4, 8, 2, 6});
  const std::vector<std::int64_t> dup{3, 1, 3, 2};
  CHECK(order_3ap_free_i64(dup).size() == 3);
}

TEST_CASE("random sets come out 3-AP-free and parity split") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::set<std::int64_t> set;
    const std::size_t size = rng() % 201;
    while (set.size() < size) set.insert(static_cast<std::int64_t>(rng() % 2'000'001) - 1'000'000);
    const std::vector<std::int64_t> v(set.begin(), set.end());
    for (auto tag : {OrderingTag::parity_recursion, OrderingTag::parity_recursion_odd_first}) {
      const auto out = order_3ap_free_i64(v, tag);
      REQUIRE(std::is_permutation(out.begin(), out.end(), v.begin(), v.end()));
      REQUIRE(find_monotone_aps(FinitePermutation::from_ints(out), 3, DiffFilter::any(), 1).empty());
      REQUIRE(parity_split(out, tag == OrderingTag::parity_recursion));
    }
  }
}

TEST_CASE("small sets agree with the naive check") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::set<std::int64_t> set;
    const std::size_t size = rng() % 25;
    while (set.size() < size) set.insert(static_cast<std::int64_t>(rng() % 60) - 30);
    const std::vector<std::int64_t> v(set.begin(), set.end());
    REQUIRE(oracle::monotone_aps(order_3ap_free_i64(v), 3).empty());
  }
}

TEST_CASE("bit reversal") {
  CHECK(ints(bit_reversal_residues(3)) == std::vector<std::int64_t>{0, 4, 2, 6, 1, 5, 3, 7});
  CHECK(ints(bit_reversal_residues(0)) == std::vector<std::int64_t>{0});
  CHECK(ints(bit_reversal_residues(2)) == std::vector<std::int64_t>{0, 2, 1, 3});
  for (int k = 1; k <= 12; ++k) {
    const auto r = bit_reversal_residues(k);
    std::vector<BigInt> shifted(r.values().begin(), r.values().end());
    for (auto& v : shifted)
      if (v == 0) v = BigInt(1) << k;
    INFO("k = " << k);
    CHECK(find_modular_aps(perm_from_values(shifted), 3, std::uint64_t{1} << k, 1).empty());
    CHECK(perm_from_values(shifted) == canonical_mod_perm(k));
  }
  // only progressions can be bit-reversal ordered
  const std::vector<BigInt> ap{3, 7, 11, 15};
  CHECK(ints(order_3ap_free(ap, OrderingTag::bit_reversal)) == std::vector<std::int64_t>{3, 11, 7, 15});
  const std::vector<BigInt> not_ap{1, 2, 4};
  CHECK_THROWS_AS(order_3ap_free(not_ap, OrderingTag::bit_reversal), Error);
}

TEST_CASE("octal blocks") {
  CHECK(octal_block(1) == std::vector<BigInt>{-8, -4, 4, -6, 2, -2, 6, -7, 1, -3, 5, -5, 3, 7});
  const auto x2 = octal_block(2);
  REQUIRE(x2.size() == 112);
  CHECK(std::vector<BigInt>(x2.begin(), x2.begin() + 4) == std::vector<BigInt>{-57, -25, 39, -41});
  CHECK_THROWS_AS(octal_block(0), Error);

  // residue groups mod 8 are contiguous, in the order of the block's parity
  const std::vector<int> odd_order{0, 4, 2, 6, 1, 5, 3, 7};
  const std::vector<int> even_order{7, 3, 5, 1, 6, 2, 4, 0};
  for (std::int64_t i = 2; i <= 5; ++i) {
    const auto blk = octal_block(i);
    std::vector<int> groups;
    for (const auto& v : blk) {
      const int r = static_cast<int>(floor_mod(v, 8));
      if (groups.empty() || groups.back() != r) groups.push_back(r);
    }
    CHECK(groups == (i % 2 ? odd_order : even_order));
  }
}

TEST_CASE("materializing descriptors") {
  BlockDescriptor evens;
  evens.intervals = {{1, 8}};
  evens.residue = Residue{2, 2};
  CHECK(ints(materialize_block(evens)) == std::vector<std::int64_t>{4, 8, 2, 6});

  BlockDescriptor pair;
  pair.intervals = {{2, 3}};
  CHECK(ints(materialize_block(pair)) == std::vector<std::int64_t>{2, 3});

  BlockDescriptor x1;
  x1.intervals = {{-8, -2}, {1, 7}};
  x1.ordering.tag = OrderingTag::explicit_list;
  for (auto v : {-8, -4, 4, -6, 2, -2, 6, -7, 1, -3, 5, -5, 3, 7}) x1.ordering.explicit_order.emplace_back(v);
  CHECK(materialize_block(x1) == FinitePermutation::from_values(x1.ordering.explicit_order));

  x1.ordering.explicit_order.pop_back();
  CHECK_THROWS_AS(materialize_block(x1), Error);

  BlockDescriptor empty;
  empty.intervals = {{5, 4}};
  try {
    materialize_block(empty);
    FAIL("empty block accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyBlock);
  }
}
