#pragma once

#include <braidgrowth/bigint.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace braidgrowth {

class BigMatrix;

/// A partition of n: positive parts in non-increasing order. The empty
/// partition is the unique partition of 0.
class Partition {
 public:
  Partition() = default;

  /// Throws std::invalid_argument unless `parts` is positive and
  /// non-increasing.
  explicit Partition(std::vector<int> parts);

  /// Sorts, drops zeros. Negative entries throw std::invalid_argument.
  static Partition from_unsorted(std::vector<int> parts);
  static Partition ones(int n);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int n() const noexcept { return n_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  bool is_all_ones() const noexcept { return parts_.empty() || parts_.front() == 1; }

  /// Lexicographic on the part sequence.
  std::strong_ordering operator<=>(const Partition& other) const {
    return parts_ <=> other.parts_;
  }
  bool operator==(const Partition& other) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// "2+1+1"; the empty partition prints as "".
std::string to_string(const Partition& p);

/// Accepts "+"-joined non-negative integers in any order; zeros are dropped.
Partition parse_partition(std::string_view text);

/// Counting and ranking of partitions of every m <= max_n in decreasing
/// lexicographic order, in O(length) per rank.
class PartitionCounter {
 public:
  explicit PartitionCounter(int max_n);

  int max_n() const noexcept { return max_n_; }

  /// p(m).
  std::uint64_t count(int m) const { return bounded(m, m); }

  /// Number of partitions of m with every part <= k.
  std::uint64_t bounded(int m, int k) const;

  /// Position of a canonical part sequence among all partitions of its sum.
  std::size_t rank(std::span<const int> parts) const;

 private:
  int max_n_;
  std::vector<std::uint64_t> table_;  // (max_n+1)^2, row m, column k
};

/// All partitions of n in decreasing lexicographic order, with O(length)
/// lookup of a partition's position.
class PartitionIndex {
 public:
  PartitionIndex() : PartitionIndex(0) {}
  explicit PartitionIndex(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return partitions_.size(); }
  const Partition& operator[](std::size_t i) const { return partitions_[i]; }
  auto begin() const { return partitions_.begin(); }
  auto end() const { return partitions_.end(); }

  /// Throws std::invalid_argument if `p` is not a partition of n().
  std::size_t position(const Partition& p) const;
  std::size_t position(std::span<const int> canonical_parts) const {
    return counter_.rank(canonical_parts);
  }

  std::vector<std::string> labels() const;
  const PartitionCounter& counter() const noexcept { return counter_; }

 private:
  int n_;
  PartitionCounter counter_;
  std::vector<Partition> partitions_;
};

PartitionIndex enumerate_partitions(int n);

/// (-1)^(n - r) for a partition of n with r parts.
int sign(const Partition& alpha);

/// Number of atom subsets whose partition type is alpha: r!/(m_1!...m_k!)
/// over the multiplicities of the distinct parts.
BigInt class_count(const Partition& alpha);

/// Multiset union of parts.
Partition join(const Partition& partial, const Partition& addition);

/// Multiset of partitions with positive arbitrary-precision multiplicities.
class PartitionMultiset {
 public:
  using Map = std::map<Partition, BigInt, std::greater<>>;

  void add(const Partition& p, const BigInt& multiplicity);
  BigInt multiplicity(const Partition& p) const;
  std::size_t distinct() const noexcept { return items_.size(); }
  BigInt total() const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  Map items_;
};

/// Every partition gamma of m with multiplicity class_count(gamma).
PartitionMultiset class_multiset(int m);

/// Image of the product of two multisets under joining of partitions.
PartitionMultiset join(const PartitionMultiset& left, const PartitionMultiset& right);

/// Types of the subsets of a fixed subset of type alpha, with multiplicity:
/// the join of the class multisets of alpha's parts.
PartitionMultiset refinement_row(const Partition& alpha);

/// Sparse form of the refinement matrix M for partitions of n. Entry
/// (gamma, beta) is the number of subsets of type beta inside a fixed subset
/// of type gamma; it is non-zero exactly when beta refines gamma.
struct RefinementTable {
  struct Entry {
    std::uint32_t index;
    std::uint64_t count;
  };

  int n = 0;
  /// rows[gamma]: refinements of gamma, ascending index.
  std::vector<std::vector<Entry>> rows;
  /// cols[beta]: partitions refined by beta, ascending index.
  std::vector<std::vector<Entry>> cols;

  std::size_t nonzeros() const;
};

/// Builds M by joining class multisets along a depth-first walk over part
/// prefixes. Counts are bounded by 2^(n-1), so n must stay below 64.
RefinementTable refinement_table(const PartitionIndex& index);

/// Dense labelled form of refinement_table.
BigMatrix refinement_matrix(int n);

}  // namespace braidgrowth
