#include "fatflat/field.hpp"

#include <string>

#include "fatflat/errors.hpp"

namespace fatflat {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t prime) : prime_(prime) {
  if (prime >= (1u << 31)) {
    throw DomainError("prime " + std::to_string(prime) + " does not fit below 2^31");
  }
  if (!is_prime(prime)) {
    throw DomainError(std::to_string(prime) + " is not prime");
  }
  barrett_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / prime);
  lazy_ = ((std::uint64_t{1} << 63) / prime) * prime;
}

Residue PrimeField::pow(Residue base, std::uint64_t exponent) const {
  Residue result = 1;
  while (exponent != 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % prime_ == 0) throw DomainError("zero has no inverse");
  return pow(a, prime_ - 2);
}

void PrimeField::require_characteristic_above(long bound) const {
  if (static_cast<long>(prime_) <= 2 * bound) {
    throw DomainError("prime " + std::to_string(prime_) + " is too small for multiplicity+degree " +
                      std::to_string(bound));
  }
}

}  // namespace fatflat
