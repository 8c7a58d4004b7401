#include <braidgrowth/partitions.hpp>

#include <braidgrowth/errors.hpp>
#include <braidgrowth/exact_linalg.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace braidgrowth {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be non-increasing");
    n_ += parts_[i];
  }
}

Partition Partition::from_unsorted(std::vector<int> parts) {
  if (std::any_of(parts.begin(), parts.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("partition parts must be non-negative");
  std::erase(parts, 0);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

Partition Partition::ones(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

std::string to_string(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += '+';
    out += std::to_string(p[i]);
  }
  return out;
}

Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return {};
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(text.find('+', start), text.size());
    const std::string_view token = text.substr(start, end - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0)
      throw ParseError("malformed partition '" + std::string(text) + "'");
    parts.push_back(value);
    if (end == text.size()) break;
    start = end + 1;
  }
  return Partition::from_unsorted(std::move(parts));
}

// ---------------------------------------------------------------------------

PartitionCounter::PartitionCounter(int max_n) : max_n_(max_n) {
  if (max_n < 0) throw std::invalid_argument("max_n must be non-negative");
  const std::size_t w = static_cast<std::size_t>(max_n) + 1;
  table_.assign(w * w, 0);
  for (std::size_t k = 0; k < w; ++k) table_[k] = 1;  // m = 0
  for (std::size_t m = 1; m < w; ++m) {
    for (std::size_t k = 1; k < w; ++k) {
      const std::uint64_t without_k = table_[m * w + k - 1];
      const std::uint64_t with_k = k <= m ? table_[(m - k) * w + k] : 0;
      table_[m * w + k] = without_k + with_k;
    }
  }
}

std::uint64_t PartitionCounter::bounded(int m, int k) const {
  if (m < 0 || m > max_n_) throw std::out_of_range("partition sum outside counter range");
  k = std::clamp(k, 0, max_n_);
  return table_[static_cast<std::size_t>(m) * (static_cast<std::size_t>(max_n_) + 1) +
                static_cast<std::size_t>(k)];
}

std::size_t PartitionCounter::rank(std::span<const int> parts) const {
  int remaining = 0;
  for (int part : parts) remaining += part;
  int bound = remaining;
  std::size_t position = 0;
  for (int part : parts) {
    // Partitions of `remaining` with parts <= bound whose first part exceeds
    // `part` precede this one.
    position += bounded(remaining, bound) - bounded(remaining, part);
    remaining -= part;
    bound = part;
  }
  return position;
}

namespace {

void enumerate_into(int remaining, int max_part, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    enumerate_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

PartitionIndex::PartitionIndex(int n) : n_(n), counter_(n) {
  partitions_.reserve(counter_.count(n));
  std::vector<int> prefix;
  enumerate_into(n, n, prefix, partitions_);
}

std::size_t PartitionIndex::position(const Partition& p) const {
  if (p.n() != n_)
    throw std::invalid_argument("partition " + to_string(p) + " is not a partition of " +
                                std::to_string(n_));
  return counter_.rank(p.parts());
}

std::vector<std::string> PartitionIndex::labels() const {
  std::vector<std::string> out;
  out.reserve(partitions_.size());
  for (const auto& p : partitions_) out.push_back(to_string(p));
  return out;
}

PartitionIndex enumerate_partitions(int n) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  return PartitionIndex(n);
}

int sign(const Partition& alpha) {
  return ((alpha.n() - static_cast<int>(alpha.length())) % 2 == 0) ? 1 : -1;
}

BigInt class_count(const Partition& alpha) {
  BigInt result = factorial(static_cast<unsigned>(alpha.length()));
  const auto& parts = alpha.parts();
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    result /= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  return result;
}

Partition join(const Partition& partial, const Partition& addition) {
  std::vector<int> parts = partial.parts();
  parts.insert(parts.end(), addition.parts().begin(), addition.parts().end());
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------

void PartitionMultiset::add(const Partition& p, const BigInt& multiplicity) {
  if (sgn(multiplicity) < 0) throw std::invalid_argument("negative multiplicity");
  if (sgn(multiplicity) == 0) return;
  items_[p] += multiplicity;
}

BigInt PartitionMultiset::multiplicity(const Partition& p) const {
  const auto it = items_.find(p);
  return it == items_.end() ? BigInt(0) : it->second;
}

BigInt PartitionMultiset::total() const {
  BigInt sum = 0;
  for (const auto& [p, m] : items_) sum += m;
  return sum;
}

PartitionMultiset class_multiset(int m) {
  PartitionMultiset out;
  for (const auto& gamma : enumerate_partitions(m)) out.add(gamma, class_count(gamma));
  return out;
}

PartitionMultiset join(const PartitionMultiset& left, const PartitionMultiset& right) {
  PartitionMultiset out;
  for (const auto& [a, ma] : left)
    for (const auto& [b, mb] : right) out.add(join(a, b), ma * mb);
  return out;
}

PartitionMultiset refinement_row(const Partition& alpha) {
  PartitionMultiset q;
  q.add(Partition{}, 1);
  for (int part : alpha.parts()) q = join(q, class_multiset(part));
  return q;
}

// ---------------------------------------------------------------------------

std::size_t RefinementTable::nonzeros() const {
  std::size_t total = 0;
  for (const auto& row : rows) total += row.size();
  return total;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("refinement count overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("refinement count overflow");
  return r;
}

// Depth-first walk over part prefixes a_1 >= a_2 >= ... ; each node carries
// the multiset obtained by joining the class multisets of its parts, so
// partitions sharing a prefix share that work.
class RefinementBuilder {
 public:
  explicit RefinementBuilder(const PartitionIndex& index)
      : n_(index.n()), counter_(index.counter()), index_(index) {
    levels_.reserve(static_cast<std::size_t>(n_) + 1);
    for (int m = 0; m <= n_; ++m) {
      std::vector<std::vector<int>> parts;
      if (m == n_) {
        for (const auto& p : index) parts.push_back(p.parts());
      } else {
        for (const auto& p : PartitionIndex(m)) parts.push_back(p.parts());
      }
      levels_.push_back(std::move(parts));
    }
    scratch_.resize(levels_.size());
    for (std::size_t m = 0; m < levels_.size(); ++m) scratch_[m].assign(levels_[m].size(), 0);
    classes_.resize(levels_.size());
    for (int a = 1; a <= n_; ++a) {
      for (std::size_t j = 0; j < levels_[a].size(); ++j) {
        std::uint64_t count = 0;
        if (!to_u64(class_count(Partition(levels_[a][j])), count))
          throw std::overflow_error("class count exceeds 64 bits");
        classes_[a].push_back({static_cast<std::uint32_t>(j), count});
      }
    }
  }

  RefinementTable build() {
    RefinementTable table;
    table.n = n_;
    table.rows.resize(index_.size());
    std::vector<RefinementTable::Entry> root{{0, 1}};
    std::vector<int> prefix;
    walk(prefix, 0, n_, root, table);

    table.cols.resize(index_.size());
    for (std::size_t g = 0; g < table.rows.size(); ++g)
      for (const auto& e : table.rows[g])
        table.cols[e.index].push_back({static_cast<std::uint32_t>(g), e.count});
    return table;
  }

 private:
  static bool to_u64(const BigInt& value, std::uint64_t& out) {
    if (!value.fits_ulong_p()) return false;
    out = value.get_ui();
    return true;
  }

  void walk(std::vector<int>& prefix, int sum, int last,
            const std::vector<RefinementTable::Entry>& current, RefinementTable& table) {
    if (sum == n_) {
      auto& row = table.rows[counter_.rank(prefix)];
      row = current;
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.index < y.index; });
      return;
    }
    for (int a = std::min(last, n_ - sum); a >= 1; --a) {
      const int target = sum + a;
      auto& dense = scratch_[target];
      std::vector<std::uint32_t> touched;
      std::vector<int> merged;
      for (const auto& left : current) {
        const auto& lp = levels_[sum][left.index];
        for (const auto& right : classes_[a]) {
          const auto& rp = levels_[a][right.index];
          merged.resize(lp.size() + rp.size());
          std::merge(lp.begin(), lp.end(), rp.begin(), rp.end(), merged.begin(), std::greater<>());
          const auto pos = static_cast<std::uint32_t>(counter_.rank(merged));
          if (dense[pos] == 0) touched.push_back(pos);
          dense[pos] = checked_add(dense[pos], checked_mul(left.count, right.count));
        }
      }
      std::vector<RefinementTable::Entry> next;
      next.reserve(touched.size());
      for (auto pos : touched) {
        next.push_back({pos, dense[pos]});
        dense[pos] = 0;
      }
      prefix.push_back(a);
      walk(prefix, target, a, next, table);
      prefix.pop_back();
    }
  }

  int n_;
  const PartitionCounter& counter_;
  const PartitionIndex& index_;
  std::vector<std::vector<std::vector<int>>> levels_;
  std::vector<std::vector<std::uint64_t>> scratch_;
  std::vector<std::vector<RefinementTable::Entry>> classes_;
};

}  // namespace

RefinementTable refinement_table(const PartitionIndex& index) {
  if (index.n() >= 64) throw std::invalid_argument("refinement table requires n < 64");
  return RefinementBuilder(index).build();
}

BigMatrix refinement_matrix(int n) {
  if (n < 1) throw std::invalid_argument("refinement_matrix requires n >= 1");
  const PartitionIndex index(n);
  const RefinementTable table = refinement_table(index);
  BigMatrix m(index.size(), index.size());
  for (std::size_t g = 0; g < table.rows.size(); ++g)
    for (const auto& e : table.rows[g]) m.set_u128(g, e.index, e.count);
  m.set_row_labels(index.labels());
  m.set_col_labels(index.labels());
  return m;
}

}  // namespace braidgrowth
