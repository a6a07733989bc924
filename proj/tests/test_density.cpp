#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "apfree/constructions.hpp"
#include "apfree/density.hpp"

using namespace apfree;

namespace {

Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational ratio(ConstructionId id, const ConstructionParams& p, Side side, const BigInt& N) {
  return density_series({id, p, side, {N}}).front().ratio;
}

// Every term of absolute value <= limit, from materialized blocks.
std::vector<std::int64_t> terms_up_to(ConstructionId id, const ConstructionParams& params, std::int64_t limit) {
  ConstructionStream stream(id, params);
  std::vector<BlockDescriptor> blocks;
  for (;;) {
    auto group = stream.next_group();
    BigInt lowest = -1;
    for (const auto& b : group) {
      const auto m = b.min_magnitude();
      if (m && (lowest < 0 || *m < lowest)) lowest = *m;
    }
    if (lowest > limit) break;
    for (auto& b : group)
      if (*b.min_magnitude() <= limit) blocks.push_back(std::move(b));
  }
  const auto w = assemble(std::move(blocks));
  std::vector<std::int64_t> out;
  for (const auto& v : w.terms.values())
    if (abs(v) <= limit) out.push_back(v.convert_to<std::int64_t>());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("small window counts") {
  CHECK(count_in_window(ConstructionId::K, {}, Side::symmetric, 8) == 7);
  ConstructionParams rp{.n = 2, .a = 3};
  // {1, 2, 3, 4}: 3 is in the first odd block
  CHECK(count_in_window(ConstructionId::R_prime, rp, Side::positive_half, 4) == 4);
  CHECK_THROWS_AS(count_in_window(ConstructionId::doubled_P, {}, Side::symmetric, 8), Error);
  CHECK_THROWS_AS(count_in_window(ConstructionId::K, {}, Side::symmetric, 0), Error);
}

TEST_CASE("symbolic counts match enumeration") {
  constexpr std::int64_t kLimit = 10'000;
  const std::pair<ConstructionId, ConstructionParams> cases[] = {
      {ConstructionId::P, {}},
      {ConstructionId::T, {}},
      {ConstructionId::R, {.n = 2, .a = 3}},
      {ConstructionId::R, {.n = 4, .a = 3}},
      {ConstructionId::R_prime, {.n = 2, .a = 3}},
      {ConstructionId::R_prime, {.n = 4, .a = 5}},
      {ConstructionId::signed_parity, {.a = 6}},
      {ConstructionId::signed_parity, {.a = 9}},
      {ConstructionId::K, {}},
      {ConstructionId::K_prime, {}},
      {ConstructionId::K_double_prime, {}},
  };
  std::mt19937_64 rng(17);
  for (const auto& [id, params] : cases) {
    INFO(to_string(id) << " n=" << params.n << " a=" << params.a);
    const auto terms = terms_up_to(id, params, kLimit);
    std::vector<std::int64_t> Ns;
    for (std::int64_t N = 1; N <= 300; ++N) Ns.push_back(N);
    for (int i = 0; i < 100; ++i) Ns.push_back(1 + static_cast<std::int64_t>(rng() % kLimit));
    Ns.push_back(kLimit);
    for (std::int64_t N : Ns) {
      const auto lo_sym = std::lower_bound(terms.begin(), terms.end(), -N);
      const auto lo_pos = std::lower_bound(terms.begin(), terms.end(), 1);
      const auto hi = std::upper_bound(terms.begin(), terms.end(), N);
      REQUIRE(count_in_window(id, params, Side::symmetric, N) == hi - lo_sym);
      REQUIRE(count_in_window(id, params, Side::positive_half, N) == hi - lo_pos);
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(closed_form(ConstructionId::R_prime, {.n = 2, .a = 3}, LimitKind::liminf) == Rational(5, 8));
  CHECK(closed_form(ConstructionId::signed_parity, {.a = 6}, LimitKind::liminf) == Rational(3, 5));
  CHECK(closed_form(ConstructionId::signed_parity, {.a = 6}, LimitKind::limsup) == Rational(4, 5));
  CHECK(closed_form(ConstructionId::K, {}, LimitKind::liminf) == Rational(3, 10));
  CHECK_THROWS_AS(closed_form(ConstructionId::K, {}, LimitKind::limsup), Error);
  CHECK_THROWS_AS(closed_form(ConstructionId::P, {}, LimitKind::liminf), Error);
}

TEST_CASE("boundary lists are validated") {
  CHECK_THROWS_AS(density_series({ConstructionId::K, {}, Side::symmetric, {10, 5}}), Error);
  CHECK_THROWS_AS(density_series({ConstructionId::K, {}, Side::symmetric, {0}}), Error);
  CHECK(density_series({ConstructionId::K, {}, Side::symmetric, {}}).empty());
}

TEST_CASE("K density converges to 3/10") {
  Rational prev = 1;
  for (int m = 10; m <= 30; ++m) {
    const Rational err = abs_r(ratio(ConstructionId::K, {}, Side::symmetric, pow(BigInt(2), m)) - Rational(3, 10));
    const Rational noise(m, pow(BigInt(2), m));
    CHECK(err <= prev + noise);
    prev = err;
  }
  CHECK(prev <= Rational(1, 10000));
}

TEST_CASE("R-prime density near its limit") {
  const ConstructionParams p{.n = 2, .a = 3};
  const Rational r = ratio(ConstructionId::R_prime, p, Side::positive_half, pow(BigInt(3), 12));
  CHECK(abs_r(r - Rational(5, 8)) <= Rational(1, 100));
}

TEST_CASE("signed-parity densities oscillate between the two limits") {
  for (std::uint64_t a : {6u, 9u}) {
    const ConstructionParams p{.a = a};
    const auto lo = boundary_family(ConstructionId::signed_parity, p, LimitKind::liminf, 30, 27);
    const auto hi = boundary_family(ConstructionId::signed_parity, p, LimitKind::limsup, 30, 27);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      INFO("a = " << a << ", exponent " << i + 4);
      CHECK(ratio(ConstructionId::signed_parity, p, Side::symmetric, lo[i]) <=
            ratio(ConstructionId::signed_parity, p, Side::symmetric, hi[i]));
    }
    const Rational lim = closed_form(ConstructionId::signed_parity, p, LimitKind::liminf);
    const Rational sup = closed_form(ConstructionId::signed_parity, p, LimitKind::limsup);
    CHECK(abs_r(ratio(ConstructionId::signed_parity, p, Side::symmetric, lo.back()) - lim) <= Rational(1, 100));
    CHECK(abs_r(ratio(ConstructionId::signed_parity, p, Side::symmetric, hi.back()) - sup) <= Rational(1, 100));
  }
}

TEST_CASE("the three K companions partition the integers") {
  const auto r4 = partition_check(4);
  CHECK(r4.exact);
  CHECK(r4.W == 31);
  const auto r12 = partition_check(12);
  CHECK(r12.exact);
  CHECK(r12.violations.empty());
  CHECK(r12.W == 8191);
  for (std::int64_t v = -300; v <= 300; ++v) REQUIRE(partition_owners(v, 8).size() == 1);
  // beyond the tiled window a value may be missing
  CHECK(partition_owners(1'000'000, 8).empty());
  CHECK_THROWS_AS(partition_check(-1), Error);
}
