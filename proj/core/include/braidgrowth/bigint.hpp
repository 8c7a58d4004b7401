#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace braidgrowth {

/// Arbitrary-precision signed integer used for every exact count.
using BigInt = mpz_class;

static_assert(GMP_LIMB_BITS == 64, "packed matrix storage assumes 64-bit limbs");

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

inline std::string to_decimal(const BigInt& value) { return value.get_str(10); }

/// Parses an optionally signed decimal string; throws ParseError otherwise.
BigInt parse_decimal(const std::string& text);

BigInt from_uint128(unsigned __int128 value);

/// Returns false if the value does not fit.
bool to_uint128(const BigInt& value, unsigned __int128& out);

}  // namespace braidgrowth
