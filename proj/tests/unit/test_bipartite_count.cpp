#include <braidgrowth/bipartite_count.hpp>

#include <braidgrowth/errors.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"

using namespace braidgrowth;

namespace {

DegreeSequence seq(std::vector<int> entries) { return DegreeSequence{std::move(entries)}; }

BigInt count(std::vector<int> a, std::vector<int> b) {
  CountCache cache;
  return count_graphs(seq(std::move(a)), seq(std::move(b)), cache);
}

// Random sequence with the given sum, possibly with zeros.
std::vector<int> random_sequence(std::mt19937_64& rng, int sum) {
  std::vector<int> out;
  while (sum > 0) {
    const int part = std::uniform_int_distribution<int>(1, sum)(rng);
    out.push_back(part);
    sum -= part;
    if (rng() % 4 == 0) out.push_back(0);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("canonical keys sort, drop zeros and order the pair") {
  const CountKey key = canonicalize(seq({1, 2, 0, 1}), seq({2, 2}));
  CHECK(key.first == Partition({2, 2}));
  CHECK(key.second == Partition({2, 1, 1}));
  const CountKey same = canonicalize(seq({3}), seq({1, 1, 1}));
  CHECK(same.first == Partition({3}));
  CHECK(same.second == Partition({1, 1, 1}));
  const CountKey empty = canonicalize(seq({}), seq({}));
  CHECK(empty.first.empty());
  CHECK(empty.second.empty());
  CHECK_THROWS_AS(canonicalize(seq({2}), seq({1})), SumMismatch);
}

TEST_CASE("degree sequence parsing") {
  CHECK(parse_degree_sequence("2,1,1").entries == std::vector<int>{2, 1, 1});
  CHECK(parse_degree_sequence("0,3").total() == 3);
  CHECK_THROWS_AS(parse_degree_sequence("2,-1"), ParseError);
  CHECK_THROWS_AS(parse_degree_sequence("2,,1"), ParseError);
  CHECK_THROWS_AS(parse_degree_sequence("x"), ParseError);
}

TEST_CASE("known counts") {
  CHECK(count({2, 1, 1}, {1, 1, 1, 1}) == 12);
  CHECK(count({2, 2}, {2, 1, 1}) == 2);
  CHECK(count({2, 2}, {2, 2}) == 1);
  CHECK(count({1}, {1}) == 1);
  CHECK(count({4}, {4}) == 0);
  CHECK(count({1, 1}, {2}) == 1);
  CHECK(count({}, {}) == 1);
  CHECK(count({3, 2, 1}, {2, 2, 1, 1}) == brute_force_count(seq({3, 2, 1}), seq({2, 2, 1, 1})));
  CHECK_THROWS_AS(count({2, 1}, {2}), SumMismatch);
}

TEST_CASE("sum mismatch names both sums") {
  try {
    count({2, 1}, {2});
    FAIL("expected SumMismatch");
  } catch (const SumMismatch& e) {
    CHECK(e.left() == 3);
    CHECK(e.right() == 2);
    CHECK(std::string(e.what()).find("3 vs 2") != std::string::npos);
  }
}

TEST_CASE("brute force oracle") {
  CHECK(brute_force_count(seq({1, 1, 1, 1}), seq({1, 1, 1, 1})) == 24);
  CHECK(brute_force_count(seq({2}), seq({1, 1})) == 1);
  CHECK(brute_force_count(seq({2, 2}), seq({2, 2})) == 1);
  CHECK_THROWS_AS(brute_force_count(seq({5, 4}), seq({3, 3, 3})), ThresholdExceeded);
  CHECK(brute_force_count(seq({5, 4}), seq({3, 3, 3}), 9) == count({5, 4}, {3, 3, 3}));
}

TEST_CASE("recurrence equals brute force for every pair with sum <= 8") {
  CountCache cache;
  for (int m = 0; m <= 8; ++m) {
    const PartitionIndex index(m);
    for (const auto& a : index)
      for (const auto& b : index) {
        const DegreeSequence da{a.parts()}, db{b.parts()};
        CHECK(count_graphs(da, db, cache) == brute_force_count(da, db));
      }
  }
}

TEST_CASE("base identities") {
  CountCache cache;
  for (int m = 1; m <= 10; ++m) {
    CHECK(count_graphs(Partition::ones(m), Partition::ones(m), cache) == factorial(static_cast<unsigned>(m)));
    for (const auto& a : PartitionIndex(m)) {
      BigInt multinomial = factorial(static_cast<unsigned>(m));
      for (int part : a.parts()) multinomial /= factorial(static_cast<unsigned>(part));
      CHECK(count_graphs(a, Partition::ones(m), cache) == multinomial);
    }
  }
}

TEST_CASE("symmetry and zero padding on random sequences") {
  std::mt19937_64 rng(20240601);
  CountCache shared;
  for (int trial = 0; trial < 1000; ++trial) {
    const int sum = std::uniform_int_distribution<int>(0, 10)(rng);
    const auto a = random_sequence(rng, sum);
    const auto b = random_sequence(rng, sum);
    const BigInt forward = count_graphs(seq(a), seq(b), shared);
    CHECK(forward == count(b, a));
    auto padded = a;
    padded.insert(padded.begin(), 0);
    padded.push_back(0);
    std::reverse(padded.begin(), padded.end());
    CHECK(forward == count(padded, b));
  }
}

TEST_CASE("large values leave the 128-bit fast path") {
  CountCache cache;
  // N of ones(n) with itself is n!, which passes 2^128 at n = 35.
  CHECK(count_graphs(Partition::ones(36), Partition::ones(36), cache) == factorial(36));
  const BigInt mixed = count_graphs(Partition({2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}),
                                    Partition::ones(40), cache);
  CHECK(mixed == factorial(40) / (BigInt(1) << 20));

  // These sums are past the dense tables; the hash-backed levels round-trip too.
  std::stringstream text;
  cache.save(text);
  CountCache restored;
  restored.load(text);
  CHECK(restored.size() == cache.size());
  const auto hit = restored.lookup(canonicalize(Partition::ones(36), Partition::ones(36)));
  REQUIRE(hit);
  CHECK(*hit == factorial(36));
}

TEST_CASE("pivot heuristic") {
  const Pivot p = choose_pivot(Partition({1, 1, 1, 1}), Partition({2, 1, 1}));
  CHECK(p.consumed_side == Pivot::Side::A);
  CHECK_FALSE(p.use_max);
  CHECK(p.degree == 1);
  CHECK(p.terms == 3);
  // A single vertex of degree 5 cannot fit on a one-vertex side.
  CHECK(choose_pivot(Partition({5}), Partition({5})).terms == 0);
  CHECK(choose_pivot(Partition({1}), Partition({1})).terms == 1);
  const Pivot square = choose_pivot(Partition({2, 2}), Partition({2, 2}));
  CHECK(square.terms == 1);
  CHECK(square.consumed_side == Pivot::Side::B);
}

TEST_CASE("cache stores, rejects conflicts and round-trips") {
  CountCache cache;
  count_graphs(Partition({3, 2, 1}), Partition({2, 2, 1, 1}), cache);
  CHECK(cache.size() > 0);
  const CountKey key = canonicalize(Partition({2, 2}), Partition({2, 1, 1}));
  REQUIRE(cache.lookup(key));
  CHECK(*cache.lookup(key) == 2);
  CHECK_NOTHROW(cache.store(key, 2));
  CHECK_THROWS_AS(cache.store(key, 3), InvariantViolation);

  std::stringstream text;
  cache.save(text);
  CountCache restored;
  restored.load(text);
  CHECK(restored.size() == cache.size());
  CHECK(*restored.lookup(key) == 2);
}

TEST_CASE("cache loader reports the offending line") {
  CountCache cache;
  std::stringstream bad("2+1;3;2\n2;1+1;x\n");
  try {
    cache.load(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::stringstream mismatch("2+1;2;1\n");
  CHECK_THROWS_AS(cache.load(mismatch), ParseError);
}
