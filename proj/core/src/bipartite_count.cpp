#include <braidgrowth/bipartite_count.hpp>

#include <braidgrowth/errors.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace braidgrowth {

using u128 = unsigned __int128;

long long DegreeSequence::total() const {
  return std::accumulate(entries.begin(), entries.end(), 0LL);
}

DegreeSequence parse_degree_sequence(const std::string& text) {
  DegreeSequence seq;
  if (text.empty()) return seq;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view token(text.data() + start, end - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0)
      throw ParseError("malformed degree sequence '" + text + "'");
    seq.entries.push_back(value);
    if (end == text.size()) break;
    start = end + 1;
  }
  return seq;
}

CountKey canonicalize(const Partition& a, const Partition& b) {
  if (a.n() != b.n()) throw SumMismatch(a.n(), b.n());
  if (a < b) return {b, a};
  return {a, b};
}

CountKey canonicalize(const DegreeSequence& a, const DegreeSequence& b) {
  if (a.total() != b.total()) throw SumMismatch(a.total(), b.total());
  return canonicalize(Partition::from_unsorted(a.entries), Partition::from_unsorted(b.entries));
}

// ---------------------------------------------------------------------------

namespace {

constexpr u128 kUnknown = ~u128(0);
constexpr u128 kBig = ~u128(0) - 1;

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

struct Overflow {};

}  // namespace

// Each sum m owns the upper triangle of a p(m) x p(m) grid of cells. Levels
// up to kDenseCells cells are flat arrays; larger ones go to a hash map, since
// only a thin slice of their cells is ever reached.
struct CountCache::Impl {
  static constexpr std::size_t kDenseCells = std::size_t{40} << 20;
  static constexpr std::size_t kMaxCells = std::size_t{1} << 48;

  std::unique_ptr<PartitionCounter> counter;
  std::vector<std::vector<u128>> levels;
  std::vector<char> prepared;
  std::unordered_map<std::uint64_t, u128> sparse;
  std::unordered_map<std::uint64_t, BigInt> big;
  std::size_t stored = 0;

  void ensure(int n) {
    if (!counter || counter->max_n() < n) counter = std::make_unique<PartitionCounter>(n);
    if (levels.size() <= static_cast<std::size_t>(n)) {
      levels.resize(static_cast<std::size_t>(n) + 1);
      prepared.resize(static_cast<std::size_t>(n) + 1, 0);
    }
  }

  std::size_t cells(int m) const {
    const std::size_t p = counter->count(m);
    return p * (p + 1) / 2;
  }

  void prepare(int m) {
    ensure(m);
    if (prepared[static_cast<std::size_t>(m)]) return;
    const std::size_t n = cells(m);
    if (n >= kMaxCells) throw BoundExceeded("graph counts of sum " + std::to_string(m) + " are out of range");
    if (n <= kDenseCells) levels[static_cast<std::size_t>(m)].assign(n, kUnknown);
    prepared[static_cast<std::size_t>(m)] = 1;
  }

  bool dense(int m) const { return !levels[static_cast<std::size_t>(m)].empty(); }

  u128 read(int m, std::size_t c) const {
    if (prepared.size() <= static_cast<std::size_t>(m) || !prepared[static_cast<std::size_t>(m)]) return kUnknown;
    if (dense(m)) return levels[static_cast<std::size_t>(m)][c];
    const auto it = sparse.find(big_key(m, c));
    return it == sparse.end() ? kUnknown : it->second;
  }

  // Raw write to a prepared level.
  void write(int m, std::size_t c, u128 v) {
    if (dense(m))
      levels[static_cast<std::size_t>(m)][c] = v;
    else
      sparse[big_key(m, c)] = v;
  }

  std::size_t cell(int m, std::size_t ia, std::size_t ib) const {
    const std::size_t p = counter->count(m);
    const std::size_t i = std::min(ia, ib);
    const std::size_t j = std::max(ia, ib);
    return i * p - i * (i - 1) / 2 + (j - i);
  }

  std::size_t cell(int m, std::span<const int> a, std::span<const int> b) const {
    return cell(m, counter->rank(a), counter->rank(b));
  }

  static std::uint64_t big_key(int m, std::size_t cell) {
    return (static_cast<std::uint64_t>(m) << 48) | static_cast<std::uint64_t>(cell);
  }

  std::optional<BigInt> get(int m, std::size_t c) const {
    const u128 v = read(m, c);
    if (v == kUnknown) return std::nullopt;
    if (v == kBig) return big.at(big_key(m, c));
    return from_uint128(v);
  }

  void put(int m, std::size_t c, const BigInt& value) {
    prepare(m);
    u128 small = 0;
    const bool fits = to_uint128(value, small) && small < kBig;
    const u128 current = read(m, c);
    if (current != kUnknown) {
      const BigInt existing = current == kBig ? big.at(big_key(m, c)) : from_uint128(current);
      if (existing != value)
        throw InvariantViolation("conflicting graph counts for one key: " + to_decimal(existing) + " vs " +
                                 to_decimal(value));
      return;
    }
    ++stored;
    if (fits) {
      write(m, c, small);
    } else {
      write(m, c, kBig);
      big[big_key(m, c)] = value;
    }
  }
};

CountCache::CountCache() : impl_(std::make_unique<Impl>()) {}
CountCache::~CountCache() = default;
CountCache::CountCache(CountCache&& other) noexcept : impl_(std::move(other.impl_)) {}
CountCache& CountCache::operator=(CountCache&& other) noexcept {
  impl_ = std::move(other.impl_);
  return *this;
}

std::optional<BigInt> CountCache::lookup(const CountKey& key) const {
  std::shared_lock lock(mutex_);
  const int m = key.first.n();
  if (!impl_->counter || impl_->counter->max_n() < m) return std::nullopt;
  return impl_->get(m, impl_->cell(m, key.first.parts(), key.second.parts()));
}

void CountCache::store(const CountKey& key, const BigInt& value) {
  if (key.first.n() != key.second.n()) throw SumMismatch(key.first.n(), key.second.n());
  if (sgn(value) < 0) throw std::invalid_argument("graph counts are non-negative");
  std::unique_lock lock(mutex_);
  const int m = key.first.n();
  impl_->ensure(m);
  impl_->put(m, impl_->cell(m, key.first.parts(), key.second.parts()), value);
}

std::size_t CountCache::size() const {
  std::shared_lock lock(mutex_);
  return impl_->stored;
}

void CountCache::save(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  // Sparse levels are written in the same (i, j) order as dense ones.
  std::vector<std::vector<std::size_t>> sparse_cells(impl_->levels.size());
  for (const auto& [key, value] : impl_->sparse) sparse_cells[key >> 48].push_back(key & (Impl::kMaxCells - 1));
  for (auto& list : sparse_cells) std::sort(list.begin(), list.end());

  for (std::size_t m = 0; m < impl_->levels.size(); ++m) {
    if (!impl_->prepared[m]) continue;
    const int level = static_cast<int>(m);
    const PartitionIndex index(level);
    const std::size_t p = index.size();
    const std::vector<std::string> labels = index.labels();
    const auto emit = [&](std::size_t i, std::size_t j, std::size_t c) {
      out << labels[i] << ';' << labels[j] << ';' << to_decimal(*impl_->get(level, c)) << '\n';
    };
    if (impl_->dense(level)) {
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
          const std::size_t c = impl_->cell(level, i, j);
          if (impl_->read(level, c) != kUnknown) emit(i, j, c);
        }
      continue;
    }
    std::size_t i = 0;
    for (std::size_t c : sparse_cells[m]) {
      while (impl_->cell(level, i + 1, i + 1) <= c) ++i;
      emit(i, i + (c - impl_->cell(level, i, i)), c);
    }
  }
}

void CountCache::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fail = [&](const std::string& why) {
      throw ParseError("count cache line " + std::to_string(line_no) + ": " + why);
    };
    const auto s1 = line.find(';');
    const auto s2 = s1 == std::string::npos ? s1 : line.find(';', s1 + 1);
    if (s2 == std::string::npos || line.find(';', s2 + 1) != std::string::npos)
      fail("expected three ';'-separated fields");
    Partition a;
    Partition b;
    BigInt value;
    try {
      a = parse_partition(std::string_view(line).substr(0, s1));
      b = parse_partition(std::string_view(line).substr(s1 + 1, s2 - s1 - 1));
      value = parse_decimal(line.substr(s2 + 1));
    } catch (const Error& e) {
      fail(e.what());
    }
    if (a.n() != b.n())
      fail("partition sums differ (" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
    if (sgn(value) < 0) fail("negative count");
    try {
      store(canonicalize(a, b), value);
    } catch (const InvariantViolation& e) {
      fail(e.what());
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

Pivot pivot_for(std::span<const int> a, std::span<const int> b) {
  const std::uint64_t size_a = a.size();
  const std::uint64_t size_b = b.size();
  const int min_a = a.back(), max_a = a.front();
  const int min_b = b.back(), max_b = b.front();
  const Pivot options[4] = {
      {Pivot::Side::B, false, min_b, saturating_binomial(size_a, static_cast<std::uint64_t>(min_b))},
      {Pivot::Side::B, true, max_b, saturating_binomial(size_a, static_cast<std::uint64_t>(max_b))},
      {Pivot::Side::A, false, min_a, saturating_binomial(size_b, static_cast<std::uint64_t>(min_a))},
      {Pivot::Side::A, true, max_a, saturating_binomial(size_b, static_cast<std::uint64_t>(max_a))},
  };
  const Pivot* best = &options[0];
  for (const auto& o : options)
    if (o.terms < best->terms) best = &o;
  return *best;
}

}  // namespace

Pivot choose_pivot(const Partition& a, const Partition& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("choose_pivot needs non-empty partitions");
  if (a.n() != b.n()) throw SumMismatch(a.n(), b.n());
  return pivot_for(a.parts(), b.parts());
}

namespace {

struct Group {
  int value;
  int count;
};

// Arithmetic policies for the recursion: 128-bit with overflow detection, or
// GMP integers.
struct WideArith {
  using Value = u128;
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value add(Value a, Value b) {
    Value r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Value mul(Value a, Value b) {
    Value r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Value mul_binomial(Value a, std::uint64_t n, std::uint64_t k) {
    const std::uint64_t c = saturating_binomial(n, k);
    if (c == std::numeric_limits<std::uint64_t>::max()) throw Overflow{};
    return mul(a, c);
  }
  static Value from_cell(const CountCache::Impl&, int, std::size_t, u128 cell) {
    if (cell == kBig) throw Overflow{};
    return cell;
  }
  static void to_cell(CountCache::Impl& impl, int m, std::size_t c, Value v) {
    if (v >= kBig) {
      impl.put(m, c, from_uint128(v));
      return;
    }
    if (impl.read(m, c) == kUnknown) ++impl.stored;
    impl.write(m, c, v);
  }
};

struct BigArith {
  using Value = BigInt;
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value mul_binomial(const Value& a, std::uint64_t n, std::uint64_t k) {
    Value c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return a * c;
  }
  static Value from_cell(const CountCache::Impl& impl, int m, std::size_t c, u128 cell) {
    if (cell == kBig) return impl.big.at(CountCache::Impl::big_key(m, c));
    return from_uint128(cell);
  }
  static void to_cell(CountCache::Impl& impl, int m, std::size_t c, const Value& v) {
    if (impl.read(m, c) == kUnknown) impl.put(m, c, v);
  }
};

}  // namespace

/// Memoised evaluation of the pivot recurrence on canonical sequences.
class GraphCounter {
 public:
  explicit GraphCounter(CountCache::Impl& impl) : impl_(impl) {}

  template <class Arith>
  typename Arith::Value count(std::span<const int> a, std::span<const int> b) {
    const int m = std::accumulate(a.begin(), a.end(), 0);
    impl_.ensure(m);
    if (workspaces_.size() <= static_cast<std::size_t>(m)) workspaces_.resize(static_cast<std::size_t>(m) + 1);
    return recurse<Arith>(a, b, m);
  }

 private:
  struct Workspace {
    std::vector<Group> groups;
    std::vector<int> choice;
    std::vector<int> expanded;
    std::vector<int> consumed;
    std::vector<int> capacity;
  };

  template <class Arith>
  static typename Arith::Value multinomial(std::span<const int> parts) {
    // prod_i C(a_1 + ... + a_i, a_i); every partial product divides the result.
    auto result = Arith::one();
    std::uint64_t running = 0;
    for (int part : parts) {
      running += static_cast<std::uint64_t>(part);
      result = Arith::mul_binomial(result, running, static_cast<std::uint64_t>(part));
    }
    return result;
  }

  template <class Arith>
  typename Arith::Value recurse(std::span<const int> a, std::span<const int> b, int m) {
    if (m == 0) return Arith::one();
    if (static_cast<std::size_t>(a.front()) > b.size() || static_cast<std::size_t>(b.front()) > a.size())
      return Arith::zero();

    impl_.prepare(m);
    const std::size_t c = impl_.cell(m, a, b);
    if (const u128 cell = impl_.read(m, c); cell != kUnknown) return Arith::from_cell(impl_, m, c, cell);

    typename Arith::Value result;
    if (b.front() == 1) {
      result = multinomial<Arith>(a);
    } else if (a.front() == 1) {
      result = multinomial<Arith>(b);
    } else {
      result = expand<Arith>(a, b, m);
    }
    Arith::to_cell(impl_, m, c, result);
    return result;
  }

  template <class Arith>
  typename Arith::Value expand(std::span<const int> a, std::span<const int> b, int m) {
    const Pivot pivot = pivot_for(a, b);
    const auto consumed_side = pivot.consumed_side == Pivot::Side::B ? b : a;
    const auto expanded_side = pivot.consumed_side == Pivot::Side::B ? a : b;

    Workspace& ws = workspaces_[static_cast<std::size_t>(m)];
    ws.consumed.assign(consumed_side.begin(), consumed_side.end());
    if (pivot.use_max)
      ws.consumed.erase(ws.consumed.begin());
    else
      ws.consumed.pop_back();

    ws.groups.clear();
    for (int value : expanded_side) {
      if (!ws.groups.empty() && ws.groups.back().value == value)
        ++ws.groups.back().count;
      else
        ws.groups.push_back({value, 1});
    }
    ws.choice.assign(ws.groups.size(), 0);

    // suffix capacities, for pruning
    ws.capacity.assign(ws.groups.size() + 1, 0);
    for (std::size_t g = ws.groups.size(); g-- > 0;) ws.capacity[g] = ws.capacity[g + 1] + ws.groups[g].count;

    auto total = Arith::zero();
    choose<Arith>(ws, 0, pivot.degree, Arith::one(), m - pivot.degree, total);
    return total;
  }

  // Distributes `remaining` neighbours over the groups of equal degree; the
  // term for one distribution k_g is prod_g C(count_g, k_g) N(A', B').
  template <class Arith>
  void choose(Workspace& ws, std::size_t g, int remaining,
              const typename Arith::Value& weight, int sub_sum, typename Arith::Value& total) {
    if (g == ws.groups.size()) {
      if (remaining != 0) return;
      if (sub_sum == 0) {
        total = Arith::add(total, weight);
        return;
      }
      // Groups are descending, so the decremented sequence comes out sorted.
      // Nested calls only touch workspaces of smaller sums.
      auto& next = ws.expanded;
      next.clear();
      for (std::size_t i = 0; i < ws.groups.size(); ++i) {
        const auto [value, count] = ws.groups[i];
        next.insert(next.end(), static_cast<std::size_t>(count - ws.choice[i]), value);
        if (value > 1) next.insert(next.end(), static_cast<std::size_t>(ws.choice[i]), value - 1);
      }
      total = Arith::add(total, Arith::mul(recurse<Arith>(next, ws.consumed, sub_sum), weight));
      return;
    }
    const int count = ws.groups[g].count;
    const int low = std::max(0, remaining - ws.capacity[g + 1]);
    const int high = std::min(count, remaining);
    for (int k = low; k <= high; ++k) {
      ws.choice[g] = k;
      choose<Arith>(ws, g + 1, remaining - k,
                    Arith::mul_binomial(weight, static_cast<std::uint64_t>(count), static_cast<std::uint64_t>(k)),
                    sub_sum, total);
    }
    ws.choice[g] = 0;
  }

  CountCache::Impl& impl_;
  std::vector<Workspace> workspaces_;
};

BigInt count_graphs(const Partition& a, const Partition& b, CountCache& cache) {
  if (a.n() != b.n()) throw SumMismatch(a.n(), b.n());
  if (a.n() == 0) return 1;
  std::unique_lock lock(cache.mutex_);
  GraphCounter counter(*cache.impl_);
  try {
    return from_uint128(counter.count<WideArith>(a.parts(), b.parts()));
  } catch (const Overflow&) {
    GraphCounter big_counter(*cache.impl_);
    return big_counter.count<BigArith>(a.parts(), b.parts());
  }
}

BigInt count_graphs(const DegreeSequence& a, const DegreeSequence& b, CountCache& cache) {
  const CountKey key = canonicalize(a, b);
  return count_graphs(key.first, key.second, cache);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t brute_force(std::vector<int>& capacity, const std::vector<int>& right, std::size_t j,
                          std::size_t start, int needed) {
  if (j == right.size())
    return std::all_of(capacity.begin(), capacity.end(), [](int c) { return c == 0; }) ? 1 : 0;
  if (needed == 0) return brute_force(capacity, right, j + 1, 0, j + 1 < right.size() ? right[j + 1] : 0);
  std::uint64_t total = 0;
  for (std::size_t i = start; i < capacity.size(); ++i) {
    if (capacity[i] == 0) continue;
    --capacity[i];
    total += brute_force(capacity, right, j, i + 1, needed - 1);
    ++capacity[i];
  }
  return total;
}

}  // namespace

BigInt brute_force_count(const DegreeSequence& a, const DegreeSequence& b, int threshold) {
  if (a.total() != b.total()) throw SumMismatch(a.total(), b.total());
  if (a.total() > threshold)
    throw ThresholdExceeded("brute_force_count: degree sum " + std::to_string(a.total()) +
                            " exceeds threshold " + std::to_string(threshold));
  for (int x : a.entries)
    if (x < 0) throw std::invalid_argument("negative degree");
  for (int x : b.entries)
    if (x < 0) throw std::invalid_argument("negative degree");
  std::vector<int> capacity = a.entries;
  const std::vector<int>& right = b.entries;
  if (right.empty()) return a.total() == 0 ? 1 : 0;
  const std::uint64_t n = brute_force(capacity, right, 0, 0, right[0]);
  return BigInt(static_cast<unsigned long>(n));
}

}  // namespace braidgrowth
