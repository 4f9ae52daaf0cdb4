#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace resconj {

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept;
// Requires a != 0 mod p.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) noexcept;

// Image of a rational in GF(p); nullopt when p divides the denominator.
std::optional<std::uint32_t> mpq_to_mod(const mpq_class& q, std::uint32_t p);

// Distinct primes in [2^30, 2^31), drawn from a seeded generator.
std::vector<std::uint32_t> random_primes(std::size_t count, std::mt19937_64& rng,
                                         const std::vector<std::uint32_t>& exclude = {});

// Combines residue r mod p into (value mod modulus); updates both in place.
void crt_accumulate(mpz_class& value, const mpz_class& modulus, std::uint32_t residue, std::uint32_t p);

// Rational n/d with |n|, d <= sqrt(modulus/2) congruent to value, if any.
std::optional<mpq_class> rational_reconstruct(const mpz_class& value, const mpz_class& modulus);

}  // namespace resconj
