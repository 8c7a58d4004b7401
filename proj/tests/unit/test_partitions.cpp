#include <braidgrowth/partitions.hpp>

#include <braidgrowth/exact_linalg.hpp>

#include "doctest.h"
#include "oracles.hpp"

using namespace braidgrowth;

namespace {

std::vector<std::vector<int>> parts_of(const PartitionIndex& index) {
  std::vector<std::vector<int>> out;
  for (const auto& p : index) out.push_back(p.parts());
  return out;
}

}  // namespace

TEST_CASE("partitions of 4 come in decreasing lexicographic order") {
  const auto index = enumerate_partitions(4);
  CHECK(parts_of(index) == std::vector<std::vector<int>>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
  CHECK(parts_of(enumerate_partitions(1)) == std::vector<std::vector<int>>{{1}});
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK(enumerate_partitions(0)[0].empty());
}

TEST_CASE("partition counts agree with the pentagonal recurrence") {
  const auto expected = testing::partition_counts(40);
  const PartitionCounter counter(40);
  for (int m = 0; m <= 40; ++m) CHECK(counter.count(m) == expected[static_cast<std::size_t>(m)]);
  for (int m = 0; m <= 20; ++m) CHECK(enumerate_partitions(m).size() == expected[static_cast<std::size_t>(m)]);
  CHECK(enumerate_partitions(6).size() == 11);
  CHECK(PartitionCounter(30).count(30) == 5604);
}

TEST_CASE("ranking inverts enumeration") {
  for (int n : {1, 5, 9, 14}) {
    const PartitionIndex index(n);
    for (std::size_t i = 0; i < index.size(); ++i) {
      CHECK(index.position(index[i]) == i);
      CHECK(index.position(std::span<const int>(index[i].parts())) == i);
    }
  }
  CHECK_THROWS_AS(PartitionIndex(4).position(Partition({3, 2})), std::invalid_argument);
}

TEST_CASE("partition construction and text form") {
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
  CHECK(Partition::from_unsorted({1, 0, 2, 1}).parts() == std::vector<int>{2, 1, 1});
  CHECK(to_string(Partition({2, 1, 1})) == "2+1+1");
  CHECK(to_string(Partition()) == "");
  CHECK(parse_partition("1+2+1") == Partition({2, 1, 1}));
  CHECK(Partition::ones(3) == Partition({1, 1, 1}));
}

TEST_CASE("sign is (-1)^(n - r)") {
  CHECK(sign(Partition({4})) == -1);
  CHECK(sign(Partition({1, 1, 1, 1})) == 1);
  CHECK(sign(Partition({2, 2})) == 1);
  CHECK(sign(Partition({3, 1})) == 1);
  CHECK(sign(Partition({2, 1, 1})) == -1);
  for (int n = 1; n <= 12; ++n) CHECK(sign(Partition::ones(n)) == 1);
}

TEST_CASE("class counts partition the atom subsets") {
  CHECK(class_count(Partition({3, 1})) == 2);
  CHECK(class_count(Partition({1, 1, 1, 1})) == 1);
  CHECK(class_count(Partition({2, 1, 1})) == 3);
  for (int n = 1; n <= 12; ++n) {
    BigInt total = 0;
    for (const auto& p : PartitionIndex(n)) total += class_count(p);
    CHECK(total == BigInt(1UL << (n - 1)));
  }
}

TEST_CASE("join is the multiset union of parts") {
  CHECK(join(Partition({2, 1}), Partition({3})) == Partition({3, 2, 1}));
  CHECK(join(Partition(), Partition({2, 2})) == Partition({2, 2}));
  CHECK(join(Partition({1, 1}), Partition({2, 1})) == Partition({2, 1, 1, 1}));

  PartitionMultiset left, right;
  left.add(Partition({1}), 2);
  right.add(Partition({2}), 3);
  right.add(Partition({1, 1}), 1);
  const auto joined = join(left, right);
  CHECK(joined.multiplicity(Partition({2, 1})) == 6);
  CHECK(joined.multiplicity(Partition({1, 1, 1})) == 2);
  CHECK(joined.total() == 8);
}

TEST_CASE("class multisets carry class counts") {
  const auto q = class_multiset(4);
  CHECK(q.distinct() == 5);
  CHECK(q.total() == 8);
  CHECK(q.multiplicity(Partition({2, 1, 1})) == 3);
}

TEST_CASE("refinement matrix for n = 4") {
  const BigMatrix expected = BigMatrix::from_rows(
      {{1, 2, 1, 3, 1}, {0, 1, 0, 2, 1}, {0, 0, 1, 2, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}});
  const BigMatrix m = refinement_matrix(4);
  CHECK(m == expected);
  CHECK(m.at(2, 3) == 2);
  REQUIRE(m.row_labels());
  CHECK((*m.row_labels())[3] == "2+1+1");
}

TEST_CASE("refinement rows match the kappa procedure") {
  for (int n = 1; n <= 9; ++n) {
    const PartitionIndex index(n);
    const BigMatrix m = refinement_matrix(n);
    for (std::size_t a = 0; a < index.size(); ++a) {
      const auto row = refinement_row(index[a]);
      for (std::size_t b = 0; b < index.size(); ++b) CHECK(m.at(a, b) == row.multiplicity(index[b]));
    }
  }
}

TEST_CASE("refinement matrix agrees with subset enumeration up to n = 7") {
  for (int n = 1; n <= 7; ++n) {
    const BigMatrix m = refinement_matrix(n);
    CHECK(m == testing::refinement_by_subsets(n));
  }
}

TEST_CASE("refinement matrix is unitriangular with a ones column") {
  for (int n = 1; n <= 14; ++n) {
    const PartitionIndex index(n);
    const RefinementTable table = refinement_table(index);
    const std::size_t last = index.size() - 1;
    for (std::size_t a = 0; a < index.size(); ++a) {
      REQUIRE(!table.rows[a].empty());
      CHECK(table.rows[a].front().index == a);
      CHECK(table.rows[a].front().count == 1);
      CHECK(table.rows[a].back().index == last);
      CHECK(table.rows[a].back().count == 1);
      // Row sums count all subsets of a subset with n - r atoms.
      std::uint64_t total = 0;
      for (const auto& e : table.rows[a]) total += e.count;
      CHECK(total == (std::uint64_t{1} << (n - index[a].length())));
    }
    std::size_t col_entries = 0;
    for (const auto& c : table.cols) col_entries += c.size();
    CHECK(col_entries == table.nonzeros());
  }
}
