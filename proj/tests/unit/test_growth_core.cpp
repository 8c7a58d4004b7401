#include <braidgrowth/growth_core.hpp>

#include <braidgrowth/errors.hpp>
#include <braidgrowth/oracle_automata.hpp>

#include "doctest.h"
#include "oracles.hpp"

using namespace braidgrowth;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> values) {
  std::vector<BigInt> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("B4 reduced system") {
  CountCache cache;
  const ReducedSystem system = build_reduced_system(4, cache);
  CHECK(system.ntilde == BigMatrix::from_rows({{0, 0, 0, 0, 1},
                                               {0, 0, 0, 1, 4},
                                               {0, 0, 1, 2, 6},
                                               {0, 1, 2, 5, 12},
                                               {24, 24, 24, 24, 24}}));
  CHECK(system.core == BigMatrix::from_rows({{-1, 2, 1, -3, 1},
                                             {2, -2, -2, 2, 0},
                                             {1, -2, 0, 1, 0},
                                             {-3, 2, 1, 0, 0},
                                             {1, 0, 0, 0, 0}}));
  CHECK(system.ttilde == BigMatrix::from_rows({{24, 21, 19, 13, 1},
                                               {0, 2, 2, 4, 6},
                                               {0, 1, 2, 3, 5},
                                               {0, 0, 1, 4, 11},
                                               {0, 0, 0, 0, 1}}));
  CHECK(system.u_tilde == BigVector{0, 0, 0, 0, 1});
  CHECK(system.v_tilde == BigVector{0, 1, 1, 1, 1});
  CHECK(mat_vec(system.ttilde, system.u_tilde) == BigVector{1, 6, 5, 11, 1});
}

TEST_CASE("B2 reduced system") {
  CountCache cache;
  const ReducedSystem system = build_reduced_system(2, cache);
  CHECK(system.ntilde == BigMatrix::from_rows({{0, 1}, {2, 2}}));
  CHECK(system.core == BigMatrix::from_rows({{-1, 1}, {1, 0}}));
  CHECK(system.ttilde == BigMatrix::from_rows({{2, 1}, {0, 1}}));
}

TEST_CASE("core agrees with the defining sum") {
  for (int n = 2; n <= 9; ++n) CHECK(build_core(n) == testing::core_by_definition(n));
}

TEST_CASE("T-tilde is core times N-tilde") {
  for (int n = 2; n <= 12; ++n) {
    CountCache cache;
    const ReducedSystem system = build_reduced_system(n, cache);
    CHECK(system.ttilde == mat_mul(system.core, system.ntilde));
    CHECK(system.ntilde == build_ntilde(n, cache));
  }
}

TEST_CASE("growth series: small cases") {
  CHECK(growth_series(4, 2).coefficients == ints({1, 23, 187}));
  CHECK(growth_series(2, 3).coefficients == ints({1, 1, 1, 1}));
  CHECK(growth_series(1, 2).coefficients == ints({1, 0, 0}));
  CHECK(growth_series(3, 0).coefficients == ints({1}));
  CHECK_THROWS_AS(growth_series(0, 2), std::invalid_argument);
}

TEST_CASE("growth series matches the pair-chain oracle") {
  for (int n = 2; n <= 5; ++n) {
    const auto expected = testing::pair_chain_counts(n, 5);
    CHECK(growth_series(n, 5).coefficients == expected);
  }
}

TEST_CASE("coefficients grow strictly and start with 1, n! - 1") {
  for (int n = 3; n <= 7; ++n) {
    const auto a = growth_series(n, 6).coefficients;
    CHECK(a[0] == 1);
    CHECK(a[1] == factorial(static_cast<unsigned>(n)) - 1);
    for (std::size_t l = 1; l < a.size(); ++l) CHECK(a[l] > a[l - 1]);
  }
}

TEST_CASE("the fail class absorbs") {
  CountCache cache;
  const ReducedSystem system = build_reduced_system(6, cache);
  // Column [n] only feeds itself: from the fail state every simple fails.
  for (std::size_t r = 1; r < system.index.size(); ++r) CHECK(system.ttilde.at(r, 0) == 0);
  CHECK(system.ttilde.at(0, 0) == factorial(6));
}

TEST_CASE("validate catches a corrupted system") {
  CountCache cache;
  ReducedSystem system = build_reduced_system(5, cache);
  CHECK_NOTHROW(validate(system));
  ReducedSystem broken = system;
  broken.ttilde.set(1, 1, broken.ttilde.at(1, 1) + 1);
  CHECK_THROWS_AS(validate(broken), InvariantViolation);
  broken = system;
  broken.core.set(0, 1, 99);
  CHECK_THROWS_AS(validate(broken), InvariantViolation);
  broken = system;
  broken.u_tilde[0] = 1;
  CHECK_THROWS_AS(validate(broken), InvariantViolation);
}

TEST_CASE("serialisations") {
  const GrowthSeries series = growth_series(4, 2);
  CHECK(to_csv(series) == "l,a\n0,1\n1,23\n2,187\n");
  CHECK(to_plain(series) == "1\n23\n187\n");
  CHECK(to_json(series) == R"({"n":4,"generators":"simple-elements","coefficients":["1","23","187"]})");
}
