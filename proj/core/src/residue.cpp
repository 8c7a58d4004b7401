#include "residue.hpp"

#include <braidgrowth/errors.hpp>

#include <algorithm>
#include <cmath>

namespace braidgrowth::detail {

namespace {

constexpr std::uint32_t kPrimeCeiling = 1U << 28;
constexpr std::uint32_t kFoldMask = kPrimeCeiling - 1;
constexpr int kTermsBetweenFolds = 255;

bool is_prime(std::uint32_t x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (std::uint32_t d = 3; d * d <= x; d += 2)
    if (x % d == 0) return false;
  return true;
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t q) {
  std::uint64_t result = 1;
  base %= q;
  while (exp) {
    if (exp & 1) result = result * base % q;
    base = base * base % q;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) { return pow_mod(a, q - 2, q); }

// acc holds values < 2^64; folding the bits above 2^28 through
// 2^28 = (2^28 - q) mod q leaves < 2^49, room for 255 more products < 2^56.
inline void fold(std::uint64_t* __restrict acc, std::size_t len, std::uint32_t excess) {
  for (std::size_t j = 0; j < len; ++j) acc[j] = (acc[j] >> 28) * excess + (acc[j] & kFoldMask);
}

inline void axpy(std::uint64_t* __restrict acc, const std::uint32_t* __restrict x, std::uint32_t c,
                 std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) acc[j] += static_cast<std::uint64_t>(c) * x[j];
}

class RowAccumulator {
 public:
  RowAccumulator(std::size_t len, std::uint32_t q) : acc_(len, 0), q_(q), excess_(kPrimeCeiling - q) {}

  void add(std::uint32_t c, const std::uint32_t* x) {
    if (c == 0) return;
    axpy(acc_.data(), x, c, acc_.size());
    if (++terms_ == kTermsBetweenFolds) {
      fold(acc_.data(), acc_.size(), excess_);
      terms_ = 0;
    }
  }

  void flush(std::uint32_t* out) {
    for (std::size_t j = 0; j < acc_.size(); ++j) {
      out[j] = static_cast<std::uint32_t>(acc_[j] % q_);
      acc_[j] = 0;
    }
    terms_ = 0;
  }

 private:
  std::vector<std::uint64_t> acc_;
  std::uint32_t q_;
  std::uint32_t excess_;
  int terms_ = 0;
};

std::uint32_t reduce(std::span<const Limb> magnitude, bool negative, std::uint32_t q, std::uint64_t radix) {
  std::uint64_t r = 0;
  for (std::size_t k = magnitude.size(); k-- > 0;) r = (r * radix + magnitude[k] % q) % q;
  if (negative && r != 0) r = q - r;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const BigInt& value, std::uint32_t q) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), q);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

std::vector<std::uint32_t> crt_primes(std::size_t bits) {
  std::vector<std::uint32_t> primes;
  double covered = 0;
  // Primes within 2^12 of the ceiling keep the fold multiplier small.
  for (std::uint32_t candidate = kPrimeCeiling - 1; covered <= static_cast<double>(bits) + 1; candidate -= 2) {
    if (kPrimeCeiling - candidate >= (1U << 12)) throw std::logic_error("ran out of CRT primes");
    if (!is_prime(candidate)) continue;
    primes.push_back(candidate);
    covered += std::log2(static_cast<double>(candidate));
  }
  return primes;
}

BigMatrix refinement_sandwich(const SandwichInput& input, std::size_t bound_bits) {
  const RefinementTable& table = *input.table;
  const BigMatrix& rhs = *input.rhs;
  const std::size_t p = table.rows.size();
  const std::size_t width = rhs.cols();
  if (rhs.rows() != p || input.signs.size() != p || input.weights.size() != p)
    throw DimensionMismatch("refinement_sandwich: inconsistent dimensions");

  const std::vector<std::uint32_t> primes = crt_primes(bound_bits);
  std::vector<std::vector<std::uint32_t>> residues(primes.size());

  for (std::size_t k = 0; k < primes.size(); ++k) {
    const std::uint32_t q = primes[k];
    const std::uint64_t radix = pow_mod(2, 64, q);

    std::vector<std::uint32_t> x(p * width);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < width; ++j) x[i * width + j] = reduce(rhs.magnitude(i, j), rhs.is_negative(i, j), q, radix);

    // R = M D X
    std::vector<std::uint32_t> r(p * width);
    RowAccumulator acc(width, q);
    for (std::size_t g = 0; g < p; ++g) {
      for (const auto& e : table.rows[g]) {
        std::uint32_t c = static_cast<std::uint32_t>(e.count % q);
        if (input.signs[e.index] < 0 && c != 0) c = q - c;
        acc.add(c, x.data() + static_cast<std::size_t>(e.index) * width);
      }
      acc.flush(r.data() + g * width);
    }
    x.clear();
    x.shrink_to_fit();

    // out = D M^t W R
    std::vector<std::uint32_t> weight(p);
    for (std::size_t g = 0; g < p; ++g) weight[g] = reduce(input.weights[g], q);
    auto& out = residues[k];
    out.resize(p * width);
    for (std::size_t a = 0; a < p; ++a) {
      for (const auto& e : table.cols[a]) {
        std::uint64_t c = (e.count % q) * weight[e.index] % q;
        if (input.signs[a] < 0 && c != 0) c = q - c;
        acc.add(static_cast<std::uint32_t>(c), r.data() + static_cast<std::size_t>(e.index) * width);
      }
      acc.flush(out.data() + a * width);
    }
  }

  // Garner: value = d_0 + q_0 (d_1 + q_1 (d_2 + ...)), then centre it.
  const std::size_t np = primes.size();
  std::vector<std::vector<std::uint32_t>> inv(np, std::vector<std::uint32_t>(np, 0));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = i + 1; j < np; ++j) inv[i][j] = inverse_mod(primes[i] % primes[j], primes[j]);

  BigInt modulus = 1;
  for (auto q : primes) modulus *= q;
  const BigInt half = modulus / 2;
  const bool narrow = mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 127;
  unsigned __int128 modulus128 = 0, half128 = 0;
  if (narrow) {
    to_uint128(modulus, modulus128);
    to_uint128(half, half128);
  }

  BigMatrix result(p, width, (bound_bits + 1) / 64 + 1);
  std::vector<std::uint32_t> digits(np);
  for (std::size_t e = 0; e < p * width; ++e) {
    for (std::size_t i = 0; i < np; ++i) {
      std::uint64_t d = residues[i][e];
      for (std::size_t j = 0; j < i; ++j) {
        d = (d + primes[i] - digits[j] % primes[i]) % primes[i];
        d = d * inv[j][i] % primes[i];
      }
      digits[i] = static_cast<std::uint32_t>(d);
    }
    const std::size_t row = e / width, col = e % width;
    if (narrow) {
      unsigned __int128 v = 0;
      for (std::size_t i = np; i-- > 0;) v = v * primes[i] + digits[i];
      if (v > half128)
        result.set_u128(row, col, modulus128 - v, true);
      else
        result.set_u128(row, col, v, false);
    } else {
      BigInt v = 0;
      for (std::size_t i = np; i-- > 0;) {
        v *= primes[i];
        v += digits[i];
      }
      if (v > half) v -= modulus;
      result.set(row, col, v);
    }
  }
  return result;
}

}  // namespace braidgrowth::detail
