#include <algorithm>
#include <numeric>
#include <random>

#include <catch_amalgamated.hpp>

#include "apfree/apcheck.hpp"
#include "apfree/oracles.hpp"

using namespace apfree;

namespace {

constexpr CheckKernel kKernels[] = {CheckKernel::pair_serial, CheckKernel::pair_parallel, CheckKernel::middle_sweep,
                                    CheckKernel::bigint, CheckKernel::automatic};

std::vector<std::int64_t> random_distinct(std::mt19937_64& rng, std::size_t len, std::int64_t lo, std::int64_t span) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(std::max<std::int64_t>(span, static_cast<std::int64_t>(len))));
  std::iota(pool.begin(), pool.end(), lo);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(len);
  return pool;
}

std::vector<BigInt> big(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("monotone checker examples") {
  const auto w = find_monotone_aps(FinitePermutation::from_ints({1, 2, 3}), 3);
  REQUIRE(w.size() == 1);
  CHECK(w[0].values == big({1, 2, 3}));
  CHECK(w[0].difference == 1);
  CHECK(find_monotone_aps(FinitePermutation::from_ints({-8, -4, 4, -6, 2, -2, 6, -7, 1, -3, 5, -5, 3, 7}), 3).empty());
  CHECK(find_monotone_aps(FinitePermutation::from_ints({2, 4, 1, 3}), 3).empty());

  CHECK(verify_ap_free(FinitePermutation::from_ints({5, 1, 3, 4, 2}), 4).ap_free);
  const auto r = verify_ap_free(FinitePermutation::from_ints({1, 2, 3, 4}), 4);
  CHECK_FALSE(r.ap_free);
  REQUIRE(r.witness);
  CHECK(r.witness->values == big({1, 2, 3, 4}));
  CHECK(verify_ap_free(FinitePermutation(), 5).ap_free);
}

TEST_CASE("argument errors") {
  const auto seq = FinitePermutation::from_ints({1, 2, 3});
  CHECK_THROWS_AS(find_monotone_aps(seq, 2), Error);
  try {
    DiffFilter::divisible_by(1);
    FAIL("m = 1 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadFilter);
  }
  try {
    find_modular_aps(FinitePermutation::from_ints({1, 2, 4}), 3, 3);
    FAIL("not a permutation of the range");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPermutationOfRange);
  }
}

TEST_CASE("every k-window is reported, in canonical order") {
  const auto w = find_monotone_aps(FinitePermutation::from_ints({0, 1, 2, 3, 4}), 3);
  // (0,1,2) (0,2,4) (1,2,3) (2,3,4)
  REQUIRE(w.size() == 4);
  CHECK(w[0].positions == std::vector<std::size_t>{0, 1, 2});
  CHECK(w[1].positions == std::vector<std::size_t>{0, 2, 4});
  CHECK(w[3].positions == std::vector<std::size_t>{2, 3, 4});
  const auto limited = find_monotone_aps(FinitePermutation::from_ints({0, 1, 2, 3, 4}), 3, DiffFilter::any(), 2);
  CHECK(limited == std::vector<Witness>(w.begin(), w.begin() + 2));
}

TEST_CASE("all kernels match the naive enumeration") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t len = rng() % 41;
    const int k = 3 + static_cast<int>(rng() % 3);
    const auto vals = random_distinct(rng, len, static_cast<std::int64_t>(rng() % 100) - 50,
                                      static_cast<std::int64_t>(len + rng() % (2 * len + 5)));
    const DiffFilter filter = trial % 3 == 0   ? DiffFilter::divisible_by(2 + rng() % 4)
                              : trial % 3 == 1 ? DiffFilter::not_divisible_by(2 + rng() % 4)
                                               : DiffFilter::any();
    const auto expected = oracle::monotone_aps(vals, k, filter);
    const auto seq = FinitePermutation::from_ints(vals);
    for (auto kernel : kKernels) {
      const auto got = find_monotone_aps(seq, k, filter, std::nullopt, kernel);
      REQUIRE(got == expected);
      for (const auto& w : got) REQUIRE(witness_is_valid(w, seq));
      const std::size_t lim = 1 + rng() % 3;
      const auto head = find_monotone_aps(seq, k, filter, lim, kernel);
      REQUIRE(head == std::vector<Witness>(expected.begin(), expected.begin() + std::min(lim, expected.size())));
    }
  }
}

TEST_CASE("kernels agree on long sequences") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t len = 600 + rng() % 1500;
    const auto vals = random_distinct(rng, len, -static_cast<std::int64_t>(len), static_cast<std::int64_t>(3 * len));
    const auto seq = FinitePermutation::from_ints(vals);
    const int k = 3 + trial % 3;
    const auto ref = find_monotone_aps(seq, k, DiffFilter::any(), std::nullopt, CheckKernel::pair_serial);
    CHECK(find_monotone_aps(seq, k, DiffFilter::any(), std::nullopt, CheckKernel::pair_parallel) == ref);
    CHECK(find_monotone_aps(seq, k, DiffFilter::any(), std::nullopt, CheckKernel::middle_sweep) == ref);
    CHECK(find_monotone_aps(seq, k, DiffFilter::any(), 5, CheckKernel::middle_sweep) ==
          std::vector<Witness>(ref.begin(), ref.begin() + std::min<std::size_t>(5, ref.size())));
  }
}

TEST_CASE("huge values fall back to arbitrary precision") {
  const BigInt big_step = pow(BigInt(2), 80);
  const auto seq = perm_from_values({BigInt(0), big_step * 3, big_step, big_step * 2, BigInt(7)});
  CHECK(select_kernel(seq, 3) == CheckKernel::bigint);
  const auto w = find_monotone_aps(seq, 3);
  REQUIRE(w.size() == 1);
  CHECK(w[0].difference == big_step);
  CHECK(w[0].positions == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("reversal, negation and affine maps preserve the witness structure") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = rng() % 60;
    const int k = 3 + static_cast<int>(rng() % 2);
    const auto vals = random_distinct(rng, len, -30, static_cast<std::int64_t>(len + 20));
    const auto base = find_monotone_aps(FinitePermutation::from_ints(vals), k);

    auto rev = vals;
    std::reverse(rev.begin(), rev.end());
    auto neg = vals;
    for (auto& v : neg) v = -v;
    CHECK(find_monotone_aps(FinitePermutation::from_ints(rev), k).size() == base.size());
    CHECK(find_monotone_aps(FinitePermutation::from_ints(neg), k).size() == base.size());

    std::int64_t c = static_cast<std::int64_t>(rng() % 7) + 1;
    if (rng() % 2) c = -c;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 1000) - 500;
    auto img = vals;
    for (auto& v : img) v = c * v + b;
    const auto mapped = find_monotone_aps(FinitePermutation::from_ints(img), k);
    REQUIRE(mapped.size() == base.size());
    // same position tuples, values mapped, difference scaled
    std::vector<std::vector<std::size_t>> a, bpos;
    for (const auto& w : base) a.push_back(w.positions);
    for (const auto& w : mapped) bpos.push_back(w.positions);
    std::sort(a.begin(), a.end());
    std::sort(bpos.begin(), bpos.end());
    CHECK(a == bpos);
    for (const auto& w : mapped) {
      const auto orig = std::find_if(base.begin(), base.end(), [&](const Witness& x) { return x.positions == w.positions; });
      REQUIRE(orig != base.end());
      CHECK(w.difference == c * orig->difference);
      for (std::size_t t = 0; t < w.values.size(); ++t) CHECK(w.values[t] == c * orig->values[t] + b);
    }
  }
}

TEST_CASE("modular checker examples") {
  const auto w = find_modular_aps(FinitePermutation::from_ints({4, 2, 5, 1, 3}), 3, 5);
  auto has = [&](std::initializer_list<std::int64_t> v) {
    return std::any_of(w.begin(), w.end(), [&](const Witness& x) { return x.values == big(v); });
  };
  CHECK(has({4, 2, 5}));
  CHECK(has({4, 5, 1}));
  for (const auto& x : w) CHECK(witness_is_valid(x, FinitePermutation::from_ints({4, 2, 5, 1, 3})));
  CHECK(find_modular_aps(FinitePermutation::from_ints({2, 1}), 3, 2).empty());
  CHECK(find_modular_aps(FinitePermutation::from_ints({7, 4, 2, 6, 3, 5, 1}), 4, 7).empty());
}

TEST_CASE("modular checker matches naive enumeration on all small permutations") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<int> plain(perm.begin(), perm.end());
    std::vector<int> scratch(static_cast<std::size_t>(n) + 1);
    do {
      const auto expected = oracle::modular_aps(perm, 3, static_cast<std::uint64_t>(n));
      const auto seq = FinitePermutation::from_ints(perm);
      REQUIRE(find_modular_aps(seq, 3, static_cast<std::uint64_t>(n)) == expected);
      std::copy(perm.begin(), perm.end(), plain.begin());
      REQUIRE(has_modular_ap(plain, 3, scratch) == !expected.empty());
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("modular checker matches naive enumeration for k = 4") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    REQUIRE(find_modular_aps(FinitePermutation::from_ints(perm), 4, static_cast<std::uint64_t>(n)) ==
            oracle::modular_aps(perm, 4, static_cast<std::uint64_t>(n)));
  }
}
