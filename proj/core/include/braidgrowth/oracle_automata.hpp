#pragma once

// Ground truth at small n: permutation braids, the finishing-set automaton
// over all 2^(n-1) atom subsets, and the explicit reduction matrices. Every
// routine here enumerates; nothing is meant to scale.

#include <braidgrowth/bigint.hpp>
#include <braidgrowth/bipartite_count.hpp>
#include <braidgrowth/exact_linalg.hpp>
#include <braidgrowth/partitions.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace braidgrowth {

struct OracleBounds {
  int max_automaton_n = 8;
  int max_enumeration_n = 6;
  int max_enumeration_length = 5;
};

/// A simple element of B_n^+, identified with its permutation (1-based
/// image list).
class PermutationBraid {
 public:
  /// Throws std::invalid_argument unless `images` is a bijection of 1..n.
  explicit PermutationBraid(std::vector<int> images);
  static PermutationBraid identity(int n);
  /// The half twist: i -> n + 1 - i.
  static PermutationBraid delta(int n);

  int n() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const noexcept { return images_; }
  PermutationBraid inverse() const;

  bool operator==(const PermutationBraid&) const = default;

 private:
  std::vector<int> images_;
};

/// Subset of the atoms sigma_1..sigma_{n-1}; bit i-1 stands for sigma_i.
class AtomSubset {
 public:
  AtomSubset() = default;
  AtomSubset(int n, std::uint64_t bits);
  static AtomSubset from_atoms(int n, const std::vector<int>& atoms);
  static AtomSubset all(int n);

  int n() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(int atom) const { return (bits_ >> (atom - 1)) & 1U; }
  bool is_subset_of(const AtomSubset& other) const { return (bits_ & ~other.bits_) == 0; }
  AtomSubset complement() const;
  std::size_t size() const;
  std::vector<int> atoms() const;

  bool operator==(const AtomSubset&) const = default;

 private:
  int n_ = 1;
  std::uint64_t bits_ = 0;
};

/// "{1,3}" for {sigma_1, sigma_3}; "{}" for the empty set.
std::string to_string(const AtomSubset& x);

/// Descent set of the permutation.
AtomSubset starting_set(const PermutationBraid& b);
/// Descent set of the inverse permutation.
AtomSubset finishing_set(const PermutationBraid& b);
/// Right complement of b in the half twist, as the permutation
/// i -> w0(pi^-1(i)).
PermutationBraid right_complement(const PermutationBraid& b);

/// Sizes of the orbits of the parabolic subgroup generated by X, left to
/// right. The orbits are runs of consecutive points.
DegreeSequence orbits_and_degree(const AtomSubset& x);

/// The unique subset whose left-to-right orbit sizes equal `alpha` read as a
/// composition.
AtomSubset subset_from_partition(int n, const Partition& alpha);

/// Partition type of X: orbit sizes of X, sorted.
Partition partition_type(const AtomSubset& x);
/// Class of the automaton state X: partition type of its complement.
Partition state_class(const AtomSubset& x);
/// Section of state_class: the binary-smallest state of class alpha, which
/// is the complement of the subset realising alpha in ascending order.
AtomSubset class_representative(int n, const Partition& alpha);

std::vector<std::string> subset_labels(int n);

struct FullAutomaton {
  int n = 0;
  BigMatrix T;  ///< T[Y][X]: transitions from state X to state Y
  BigVector u;  ///< indicator of the initial state (all atoms)
  BigVector v;  ///< accept states: everything but the empty set
};

/// Scans all n! simples from each of the 2^(n-1) states. Throws
/// BoundExceeded above bounds.max_automaton_n.
FullAutomaton full_transition_matrix(int n, const OracleBounds& bounds = {});

struct ReductionMatrices {
  BigMatrix P;      ///< p(n) x 2^(n-1): P[a][X] = [a = state_class(X)]
  BigMatrix Q;      ///< 2^(n-1) x p(n): Q[X][a] = [X = class_representative(a)]
  BigMatrix C;      ///< complement permutation
  BigMatrix S;      ///< subset indicator S[X][Y] = [X subset of Y]
  BigMatrix S_inv;  ///< (-1)^|Y \ X| on X subset of Y
};

ReductionMatrices reduction_matrices(int n, const OracleBounds& bounds = {});

struct IdentityCheck {
  std::string identity;
  int n = 0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
};

/// Checks exactly: T = S^-1 C P^t Ntilde P, Ttilde = P T Q, T Q P = T,
/// equal columns within classes, core = P S^-1 C P^t, P Q = 1, S S^-1 = 1.
VerificationReport verify_identities(int n, const OracleBounds& bounds = {});

/// verify_identities plus coefficient agreement v T^l u = v~ T~^l u~ for
/// l <= max_length, and against enumerate_normal_forms where that stays
/// within bounds and a modest work budget.
VerificationReport verify_all(int n, int max_length, const OracleBounds& bounds = {});

/// List of {"identity","n","pass","detail"} objects.
std::string to_json(const VerificationReport& report, int indent = -1);

/// Counts words x_1...x_l of non-trivial simples with S(x_{i+1}) inside
/// F(x_i), by depth-first enumeration.
BigInt enumerate_normal_forms(int n, int length, const OracleBounds& bounds = {});

/// v T^l u for l = 0..max_length from the full automaton.
std::vector<BigInt> automaton_coefficients(const FullAutomaton& automaton, int max_length);

}  // namespace braidgrowth
