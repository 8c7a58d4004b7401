#pragma once

#include <braidgrowth/bigint.hpp>
#include <braidgrowth/bipartite_count.hpp>
#include <braidgrowth/exact_linalg.hpp>
#include <braidgrowth/partitions.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace braidgrowth {

/// Transfer data of the braid monoid B_n^+ over partition classes.
struct ReducedSystem {
  int n = 0;
  PartitionIndex index;
  BigMatrix ntilde;  ///< graph counts; row [1,...,1] is n!
  BigMatrix core;    ///< signed class-level Moebius inverse, symmetric
  BigMatrix ttilde;  ///< core * ntilde
  BigVector u_tilde; ///< indicator of [1,...,1]
  BigVector v_tilde; ///< all ones except 0 at [n]
};

struct GrowthSeries {
  int n = 0;
  std::vector<BigInt> coefficients;  ///< a_0, ..., a_L
};

/// p(n) x p(n) matrix of N_{alpha,beta}, with row [1,...,1] set to n!.
BigMatrix build_ntilde(int n, CountCache& cache);

/// core[a][b] = sgn(a) sgn(b) sum_g sgn(g) N_g M[g][a] M[g][b], evaluated on
/// the sparse refinement table. No atom subset is ever enumerated.
BigMatrix build_core(int n);

/// Assembles and validates the full reduced system. Throws
/// InvariantViolation if a structural check fails.
ReducedSystem build_reduced_system(int n, CountCache& cache);

/// Re-runs the structural checks of build_reduced_system.
void validate(const ReducedSystem& system);

/// a_k = v~ . (T~^k u~) for k = 0..L by iterated matrix-vector products.
GrowthSeries growth_coefficients(const ReducedSystem& system, std::size_t max_length);

/// One-call facade; n = 1 is the trivial monoid.
GrowthSeries growth_series(int n, std::size_t max_length);
GrowthSeries growth_series(int n, std::size_t max_length, CountCache& cache);

std::string to_json(const GrowthSeries& series);
/// Header "l,a" then one "l,a_l" row per coefficient.
std::string to_csv(const GrowthSeries& series);
/// One coefficient per line.
std::string to_plain(const GrowthSeries& series);

}  // namespace braidgrowth
