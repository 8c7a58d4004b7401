#pragma once

#include <braidgrowth/bigint.hpp>
#include <braidgrowth/partitions.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace braidgrowth {

/// Ordered degree list of one side of a bipartite graph. Zeros are allowed.
struct DegreeSequence {
  std::vector<int> entries;

  long long total() const;
};

/// Parses "2,1,1"; throws ParseError on anything but non-negative integers.
DegreeSequence parse_degree_sequence(const std::string& text);

/// Unordered pair of partitions with equal sums, lexicographically larger
/// one first.
struct CountKey {
  Partition first;
  Partition second;

  bool operator==(const CountKey&) const = default;
};

/// Sorts both sequences, drops zeros, orders the pair. Throws SumMismatch.
CountKey canonicalize(const DegreeSequence& a, const DegreeSequence& b);
CountKey canonicalize(const Partition& a, const Partition& b);

/// Memo table of N_{A,B} keyed by canonical partition pairs.
///
/// Each sum m owns a dense triangular table over pairs of partitions of m.
/// Values below 2^128 live inline, larger ones in a side map. Lookups and
/// stores through the public methods are safe to mix across threads;
/// count_graphs holds the writer lock for the whole recursion.
class CountCache {
 public:
  CountCache();
  ~CountCache();
  CountCache(CountCache&&) noexcept;
  CountCache& operator=(CountCache&&) noexcept;

  std::optional<BigInt> lookup(const CountKey& key) const;
  /// Idempotent for equal values. Throws InvariantViolation if a different
  /// value is already stored for the key.
  void store(const CountKey& key, const BigInt& value);

  /// Number of stored entries.
  std::size_t size() const;

  /// One "A;B;count" line per entry, by ascending sum.
  void save(std::ostream& out) const;
  /// Merges records; throws ParseError naming the line on malformed input.
  void load(std::istream& in);

  struct Impl;

 private:
  friend class GraphCounter;
  friend BigInt count_graphs(const Partition&, const Partition&, CountCache&);
  std::unique_ptr<Impl> impl_;
  mutable std::shared_mutex mutex_;
};

/// N_{A,B}: simple vertex-labelled bipartite graphs with the given degree
/// sequences. Populates `cache` with every sub-result.
BigInt count_graphs(const DegreeSequence& a, const DegreeSequence& b, CountCache& cache);
BigInt count_graphs(const Partition& a, const Partition& b, CountCache& cache);

/// Which recursion step the pivot heuristic selected: a vertex of degree
/// `degree` on side `consumed_side` is removed, and its neighbourhood is a
/// `degree`-subset of the other side's vertices.
struct Pivot {
  enum class Side { A, B };
  Side consumed_side;
  bool use_max;  // false: min of the consumed side, true: max
  int degree;
  /// Binomial coefficient that was minimised.
  std::uint64_t terms;

  bool operator==(const Pivot&) const = default;
};

/// Compares C(|A|, min B), C(|A|, max B), C(|B|, min A), C(|B|, max A) and
/// returns the first minimal choice in that order. Both sides non-empty.
Pivot choose_pivot(const Partition& a, const Partition& b);

/// Direct enumeration of neighbourhoods of the B-side vertices. Throws
/// ThresholdExceeded if the common sum exceeds `threshold`.
BigInt brute_force_count(const DegreeSequence& a, const DegreeSequence& b, int threshold = 8);

}  // namespace braidgrowth
