#pragma once

#include <cstdint>

namespace fatflat {

using Residue = std::uint32_t;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t value);

/// Arithmetic in Z/p for a word-sized prime p < 2^31.
///
/// Products of two residues fit in 62 bits, which leaves room in a 64-bit
/// accumulator for the lazy reduction used by the elimination kernels: add a
/// product, then subtract `lazy_modulus()` whenever the top bit is set.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 2147483629u;
  static constexpr std::uint32_t kSecondaryPrime = 2147483587u;

  explicit PrimeField(std::uint32_t prime = kDefaultPrime);

  std::uint32_t prime() const { return prime_; }

  Residue reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * prime_;
    if (r >= prime_) r -= prime_;
    return static_cast<Residue>(r);
  }

  Residue from_int(std::int64_t x) const {
    const std::int64_t r = x % static_cast<std::int64_t>(prime_);
    return static_cast<Residue>(r < 0 ? r + prime_ : r);
  }

  Residue add(Residue a, Residue b) const {
    const std::uint32_t s = a + b;
    return s >= prime_ ? s - prime_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + prime_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : prime_ - a; }
  Residue mul(Residue a, Residue b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  Residue pow(Residue base, std::uint64_t exponent) const;
  /// Throws DomainError for 0.
  Residue inv(Residue a) const;

  /// Largest multiple of p not exceeding 2^63.
  std::uint64_t lazy_modulus() const { return lazy_; }

  /// Enforces p > 2 * bound, where bound is the largest multiplicity plus the
  /// largest degree taking part in a computation.
  void require_characteristic_above(long bound) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.prime_ == b.prime_; }

 private:
  std::uint32_t prime_;
  std::uint64_t barrett_;  // floor(2^64 / p)
  std::uint64_t lazy_;
};

// One lazy accumulation step: acc + c*x with acc kept below 2^63.
inline std::uint64_t lazy_fma(std::uint64_t acc, std::uint32_t c, std::uint32_t x, std::uint64_t lazy) {
  acc += static_cast<std::uint64_t>(c) * x;
  acc -= static_cast<std::uint64_t>(static_cast<std::int64_t>(acc) >> 63) & lazy;
  return acc;
}

}  // namespace fatflat
