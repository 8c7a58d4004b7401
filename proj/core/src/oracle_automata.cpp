#include <braidgrowth/oracle_automata.hpp>

#include <braidgrowth/errors.hpp>
#include <braidgrowth/growth_core.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace braidgrowth {

namespace {

void require_bound(int n, int bound, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
  if (n > bound)
    throw BoundExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds the oracle bound " +
                        std::to_string(bound));
}

std::size_t state_count(int n) { return std::size_t{1} << (n - 1); }

std::uint64_t descents(const std::vector<int>& images) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i + 1 < images.size(); ++i)
    if (images[i] > images[i + 1]) bits |= std::uint64_t{1} << i;
  return bits;
}

// Starting and finishing sets of every simple, permutations in lexicographic order.
struct Simple {
  std::uint64_t start;
  std::uint64_t finish;
};

std::vector<Simple> all_simples(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Simple> simples;
  do {
    const PermutationBraid b(images);
    simples.push_back({starting_set(b).bits(), finishing_set(b).bits()});
  } while (std::next_permutation(images.begin(), images.end()));
  return simples;
}

BigMatrix zero_matrix(std::size_t rows, std::size_t cols) { return BigMatrix(rows, cols); }

std::string describe_mismatch(const BigMatrix& lhs, const BigMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    return "shape " + std::to_string(lhs.rows()) + "x" + std::to_string(lhs.cols()) + " vs " +
           std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r)
    for (std::size_t c = 0; c < lhs.cols(); ++c)
      if (lhs.at(r, c) != rhs.at(r, c))
        return "first difference at (" + std::to_string(r) + "," + std::to_string(c) + "): " +
               to_decimal(lhs.at(r, c)) + " vs " + to_decimal(rhs.at(r, c));
  return "equal";
}

IdentityCheck compare(std::string identity, int n, const BigMatrix& lhs, const BigMatrix& rhs) {
  const bool pass = lhs == rhs;
  return {std::move(identity), n, pass, pass ? "exact match" : describe_mismatch(lhs, rhs)};
}

}  // namespace

PermutationBraid::PermutationBraid(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int x : images_) {
    if (x < 1 || x > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("PermutationBraid: not a permutation of 1..n");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

PermutationBraid PermutationBraid::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return PermutationBraid(std::move(images));
}

PermutationBraid PermutationBraid::delta(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = n - i;
  return PermutationBraid(std::move(images));
}

PermutationBraid PermutationBraid::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  return PermutationBraid(std::move(inv));
}

AtomSubset::AtomSubset(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > 64) throw std::invalid_argument("AtomSubset: n must lie in 1..64");
  if (n <= 64 && (n == 1 ? bits != 0 : (bits >> (n - 1)) != 0))
    throw std::invalid_argument("AtomSubset: atom index outside 1..n-1");
}

AtomSubset AtomSubset::from_atoms(int n, const std::vector<int>& atoms) {
  std::uint64_t bits = 0;
  for (int a : atoms) {
    if (a < 1 || a >= n) throw std::invalid_argument("AtomSubset: atom index outside 1..n-1");
    bits |= std::uint64_t{1} << (a - 1);
  }
  return AtomSubset(n, bits);
}

AtomSubset AtomSubset::all(int n) { return AtomSubset(n, (std::uint64_t{1} << (n - 1)) - 1); }

AtomSubset AtomSubset::complement() const { return AtomSubset(n_, ~bits_ & all(n_).bits_); }

std::size_t AtomSubset::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<int> AtomSubset::atoms() const {
  std::vector<int> out;
  for (int i = 1; i < n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string to_string(const AtomSubset& x) {
  std::string out = "{";
  for (int a : x.atoms()) {
    if (out.size() > 1) out += ',';
    out += std::to_string(a);
  }
  return out + "}";
}

AtomSubset starting_set(const PermutationBraid& b) { return AtomSubset(b.n(), descents(b.images())); }

AtomSubset finishing_set(const PermutationBraid& b) { return starting_set(b.inverse()); }

PermutationBraid right_complement(const PermutationBraid& b) {
  const int n = b.n();
  const PermutationBraid inv = b.inverse();
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) images[static_cast<std::size_t>(i - 1)] = n + 1 - inv(i);
  return PermutationBraid(std::move(images));
}

DegreeSequence orbits_and_degree(const AtomSubset& x) {
  DegreeSequence out;
  int run = 1;
  for (int i = 1; i < x.n(); ++i) {
    if (x.contains(i)) {
      ++run;
    } else {
      out.entries.push_back(run);
      run = 1;
    }
  }
  out.entries.push_back(run);
  return out;
}

AtomSubset subset_from_partition(int n, const Partition& alpha) {
  if (alpha.n() != n)
    throw SumMismatch(alpha.n(), n);
  std::uint64_t bits = 0;
  int point = 1;
  for (int part : alpha.parts()) {
    for (int k = 1; k < part; ++k, ++point) bits |= std::uint64_t{1} << (point - 1);
    ++point;
  }
  return AtomSubset(n, bits);
}

Partition partition_type(const AtomSubset& x) { return Partition::from_unsorted(orbits_and_degree(x).entries); }

Partition state_class(const AtomSubset& x) { return partition_type(x.complement()); }

AtomSubset class_representative(int n, const Partition& alpha) {
  std::vector<int> ascending(alpha.parts().rbegin(), alpha.parts().rend());
  if (alpha.n() != n) throw SumMismatch(alpha.n(), n);
  std::uint64_t bits = 0;
  int point = 1;
  for (int part : ascending) {
    for (int k = 1; k < part; ++k, ++point) bits |= std::uint64_t{1} << (point - 1);
    ++point;
  }
  return AtomSubset(n, bits).complement();
}

std::vector<std::string> subset_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(state_count(n));
  for (std::uint64_t bits = 0; bits < state_count(n); ++bits) labels.push_back(to_string(AtomSubset(n, bits)));
  return labels;
}

FullAutomaton full_transition_matrix(int n, const OracleBounds& bounds) {
  require_bound(n, bounds.max_automaton_n, "full_transition_matrix");
  const std::size_t states = state_count(n);
  const auto simples = all_simples(n);

  std::vector<std::vector<long long>> counts(states, std::vector<long long>(states, 0));
  for (std::uint64_t x = 0; x < states; ++x)
    for (const auto& s : simples) {
      const std::uint64_t target = (s.start & ~x) == 0 ? s.finish : 0;
      ++counts[target][x];
    }

  FullAutomaton automaton;
  automaton.n = n;
  automaton.T = BigMatrix(states, states);
  for (std::size_t y = 0; y < states; ++y)
    for (std::size_t x = 0; x < states; ++x) automaton.T.set(y, x, counts[y][x]);
  const auto labels = subset_labels(n);
  automaton.T.set_row_labels(labels);
  automaton.T.set_col_labels(labels);

  automaton.u = BigVector::unit(states, states - 1);
  automaton.v = BigVector(states);
  for (std::size_t x = 1; x < states; ++x) automaton.v[x] = 1;
  automaton.u.labels = labels;
  automaton.v.labels = labels;
  return automaton;
}

ReductionMatrices reduction_matrices(int n, const OracleBounds& bounds) {
  require_bound(n, bounds.max_automaton_n, "reduction_matrices");
  const std::size_t states = state_count(n);
  const PartitionIndex index(n);
  const std::size_t p = index.size();
  const auto subsets = subset_labels(n);
  const auto partitions = index.labels();

  ReductionMatrices m{zero_matrix(p, states), zero_matrix(states, p), zero_matrix(states, states),
                      zero_matrix(states, states), zero_matrix(states, states)};
  for (std::uint64_t x = 0; x < states; ++x) {
    const AtomSubset subset(n, x);
    m.P.set(index.position(state_class(subset)), x, 1);
    m.C.set(x, subset.complement().bits(), 1);
    for (std::uint64_t y = 0; y < states; ++y) {
      if ((x & ~y) != 0) continue;
      m.S.set(x, y, 1);
      m.S_inv.set(x, y, std::popcount(y & ~x) % 2 == 0 ? 1 : -1);
    }
  }
  for (std::size_t a = 0; a < p; ++a) m.Q.set(class_representative(n, index[a]).bits(), a, 1);

  m.P.set_row_labels(partitions);
  m.P.set_col_labels(subsets);
  m.Q.set_row_labels(subsets);
  m.Q.set_col_labels(partitions);
  for (BigMatrix* square : {&m.C, &m.S, &m.S_inv}) {
    square->set_row_labels(subsets);
    square->set_col_labels(subsets);
  }
  return m;
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

VerificationReport verify_identities(int n, const OracleBounds& bounds) {
  require_bound(n, bounds.max_automaton_n, "verify_identities");
  if (n < 2) throw std::invalid_argument("verify_identities: n must be at least 2");
  VerificationReport report;
  const FullAutomaton automaton = full_transition_matrix(n, bounds);
  const ReductionMatrices m = reduction_matrices(n, bounds);
  CountCache cache;
  const ReducedSystem system = build_reduced_system(n, cache);
  const std::size_t states = state_count(n);
  const std::size_t p = system.index.size();

  const BigMatrix Pt = m.P.transpose();
  const BigMatrix SinvCPt = mat_mul(mat_mul(m.S_inv, m.C), Pt);
  report.checks.push_back(compare("T = S^-1 C P^t Ntilde P", n, automaton.T, mat_mul(mat_mul(SinvCPt, system.ntilde), m.P)));
  report.checks.push_back(compare("Ttilde = P T Q", n, system.ttilde, mat_mul(mat_mul(m.P, automaton.T), m.Q)));
  report.checks.push_back(compare("T Q P = T", n, mat_mul(mat_mul(automaton.T, m.Q), m.P), automaton.T));
  report.checks.push_back(compare("core = P S^-1 C P^t", n, system.core, mat_mul(m.P, SinvCPt)));
  report.checks.push_back(compare("P Q = 1", n, mat_mul(m.P, m.Q), BigMatrix::identity(p)));
  report.checks.push_back(compare("S S^-1 = 1", n, mat_mul(m.S, m.S_inv), BigMatrix::identity(states)));

  {
    IdentityCheck check{"columns of T agree within a class", n, true, "all classes uniform"};
    for (std::uint64_t x = 0; x < states && check.pass; ++x) {
      const std::uint64_t rep = class_representative(n, state_class(AtomSubset(n, x))).bits();
      if (column(automaton.T, x) != column(automaton.T, rep)) {
        check.pass = false;
        check.detail = "column " + to_string(AtomSubset(n, x)) + " differs from " + to_string(AtomSubset(n, rep));
      }
    }
    report.checks.push_back(check);
  }
  {
    const BigInt n_factorial = factorial(static_cast<unsigned>(n));
    const BigVector sums = column_sums(automaton.T);
    const bool pass = std::all_of(sums.entries.begin(), sums.entries.end(),
                                  [&](const BigInt& s) { return s == n_factorial; });
    report.checks.push_back({"column sums of T = n!", n, pass, pass ? "all " + to_decimal(n_factorial) : "mismatch"});
  }
  {
    IdentityCheck check{"F(x) and S(dx) partition the atoms", n, true, "all simples"};
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    const std::uint64_t all = AtomSubset::all(n).bits();
    do {
      const PermutationBraid x(images);
      const std::uint64_t f = finishing_set(x).bits();
      const std::uint64_t s = starting_set(right_complement(x)).bits();
      if ((f & s) != 0 || (f | s) != all) {
        check.pass = false;
        check.detail = "fails at the permutation starting with " + std::to_string(images.front());
        break;
      }
    } while (std::next_permutation(images.begin(), images.end()));
    report.checks.push_back(check);
  }
  return report;
}

VerificationReport verify_all(int n, int max_length, const OracleBounds& bounds) {
  VerificationReport report = verify_identities(n, bounds);
  if (max_length < 0) throw std::invalid_argument("verify_all: max_length must be non-negative");

  const FullAutomaton automaton = full_transition_matrix(n, bounds);
  const auto full = automaton_coefficients(automaton, max_length);
  const auto reduced = growth_series(n, static_cast<std::size_t>(max_length)).coefficients;
  for (int l = 0; l <= max_length; ++l) {
    const auto i = static_cast<std::size_t>(l);
    const bool pass = full[i] == reduced[i];
    report.checks.push_back({"v T^" + std::to_string(l) + " u = v~ Ttilde^" + std::to_string(l) + " u~", n, pass,
                             to_decimal(full[i]) + " vs " + to_decimal(reduced[i])});
  }

  // Enumeration costs roughly a_(l-1) * n! steps; skip once that gets large.
  constexpr double kEnumerationBudget = 2e8;
  const double simples = factorial(static_cast<unsigned>(n)).get_d();
  for (int l = 0; l <= max_length; ++l) {
    const std::string name = "enumerated a_" + std::to_string(l) + " = v T^" + std::to_string(l) + " u";
    const auto i = static_cast<std::size_t>(l);
    const double cost = l == 0 ? 1.0 : full[i - 1].get_d() * simples;
    if (n > bounds.max_enumeration_n || l > bounds.max_enumeration_length || cost > kEnumerationBudget) {
      report.checks.push_back({name, n, true, "skipped: outside enumeration bounds"});
      continue;
    }
    const BigInt enumerated = enumerate_normal_forms(n, l, bounds);
    const bool pass = enumerated == full[i];
    report.checks.push_back({name, n, pass, to_decimal(enumerated) + " vs " + to_decimal(full[i])});
  }
  return report;
}

std::string to_json(const VerificationReport& report, int indent) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["identity"] = c.identity;
    entry["n"] = c.n;
    entry["pass"] = c.pass;
    entry["detail"] = c.detail;
    list.push_back(std::move(entry));
  }
  return list.dump(indent);
}

BigInt enumerate_normal_forms(int n, int length, const OracleBounds& bounds) {
  require_bound(n, bounds.max_enumeration_n, "enumerate_normal_forms");
  if (length < 0) throw std::invalid_argument("enumerate_normal_forms: length must be non-negative");
  if (length > bounds.max_enumeration_length)
    throw BoundExceeded("enumerate_normal_forms: length " + std::to_string(length) + " exceeds the oracle bound " +
                        std::to_string(bounds.max_enumeration_length));
  if (length == 0) return 1;

  std::vector<Simple> simples = all_simples(n);
  std::erase_if(simples, [](const Simple& s) { return s.start == 0; });

  // Depth-first over words; `allowed` is the finishing set of the previous letter.
  std::uint64_t total = 0;
  auto walk = [&](auto&& self, int depth, std::uint64_t allowed) -> void {
    if (depth == length - 1) {
      for (const auto& s : simples) total += (s.start & ~allowed) == 0;
      return;
    }
    for (const auto& s : simples)
      if ((s.start & ~allowed) == 0) self(self, depth + 1, s.finish);
  };
  walk(walk, 0, AtomSubset::all(n).bits());
  return BigInt(static_cast<unsigned long>(total));
}

std::vector<BigInt> automaton_coefficients(const FullAutomaton& automaton, int max_length) {
  std::vector<BigInt> out;
  BigVector x = automaton.u;
  out.push_back(dot(automaton.v, x));
  for (int l = 1; l <= max_length; ++l) {
    x = mat_vec(automaton.T, x);
    out.push_back(dot(automaton.v, x));
  }
  return out;
}

}  // namespace braidgrowth
