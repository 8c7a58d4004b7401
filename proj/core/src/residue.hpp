#pragma once

// Multi-modular evaluation of the class-level transfer product
//   D M^t W M D X
// where M is the sparse refinement table, D the partition signs and W the
// signed class sizes. Each prime below 2^28 keeps products under 2^56, so a
// 64-bit accumulator absorbs 255 of them between reductions.

#include <braidgrowth/bigint.hpp>
#include <braidgrowth/exact_linalg.hpp>
#include <braidgrowth/partitions.hpp>

#include <cstdint>
#include <vector>

namespace braidgrowth::detail {

/// Distinct primes below 2^28, largest first, whose product exceeds
/// 2^(bits + 1).
std::vector<std::uint32_t> crt_primes(std::size_t bits);

struct SandwichInput {
  const RefinementTable* table;
  std::vector<int> signs;        ///< sgn(beta) per partition
  std::vector<BigInt> weights;   ///< sgn(gamma) N_gamma per partition
  const BigMatrix* rhs;          ///< X
};

/// Exact D M^t W M D X, reconstructed by CRT from enough primes to cover
/// |entries| <= 2^bound_bits.
BigMatrix refinement_sandwich(const SandwichInput& input, std::size_t bound_bits);

}  // namespace braidgrowth::detail
