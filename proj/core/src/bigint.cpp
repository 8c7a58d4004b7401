#include <braidgrowth/bigint.hpp>
#include <braidgrowth/errors.hpp>

#include <cctype>

namespace braidgrowth {

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

BigInt parse_decimal(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw ParseError("not a decimal integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("not a decimal integer: '" + text + "'");
  }
  return BigInt(text[0] == '+' ? text.substr(1) : text, 10);
}

using Limb = std::uint64_t;

BigInt from_uint128(unsigned __int128 value) {
  BigInt result;
  const Limb limbs[2] = {static_cast<std::uint64_t>(value), static_cast<std::uint64_t>(value >> 64)};
  mpz_import(result.get_mpz_t(), 2, -1, sizeof(Limb), 0, 0, limbs);
  return result;
}

bool to_uint128(const BigInt& value, unsigned __int128& out) {
  if (sgn(value) < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 128) return false;
  const mpz_srcptr z = value.get_mpz_t();
  const std::size_t size = mpz_size(z);
  out = 0;
  if (size > 0) out = mpz_getlimbn(z, 0);
  if (size > 1) out |= static_cast<unsigned __int128>(mpz_getlimbn(z, 1)) << 64;
  return true;
}

}  // namespace braidgrowth
