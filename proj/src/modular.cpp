#include "resconj/modular.hpp"

#include <algorithm>
#include <tuple>

namespace resconj {

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1u) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) noexcept {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::optional<std::uint32_t> mpq_to_mod(const mpq_class& q, std::uint32_t p) {
  const unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  const unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return mul_mod(static_cast<std::uint32_t>(num), inv_mod(static_cast<std::uint32_t>(den), p), p);
}

std::vector<std::uint32_t> random_primes(std::size_t count, std::mt19937_64& rng,
                                         const std::vector<std::uint32_t>& exclude) {
  std::uniform_int_distribution<std::uint32_t> dist(1u << 30, (1u << 31) - 1);
  std::vector<std::uint32_t> out;
  while (out.size() < count) {
    mpz_class candidate = dist(rng);
    mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
    if (candidate >= (1ul << 31)) continue;
    auto p = static_cast<std::uint32_t>(candidate.get_ui());
    if (std::find(out.begin(), out.end(), p) != out.end()) continue;
    if (std::find(exclude.begin(), exclude.end(), p) != exclude.end()) continue;
    out.push_back(p);
  }
  return out;
}

void crt_accumulate(mpz_class& value, const mpz_class& modulus, std::uint32_t residue, std::uint32_t p) {
  // value' = value + modulus * ((residue - value) * modulus^{-1} mod p)
  const auto v_mod = static_cast<std::uint32_t>(mpz_fdiv_ui(value.get_mpz_t(), p));
  const auto m_mod = static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p));
  const std::uint32_t k = mul_mod(sub_mod(residue, v_mod, p), inv_mod(m_mod, p), p);
  value += modulus * k;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& value, const mpz_class& modulus) {
  mpz_class bound;
  mpz_class half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = modulus, r1 = value % modulus;
  if (r1 < 0) r1 += modulus;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class q(r1, t1);
  q.canonicalize();
  return q;
}

}  // namespace resconj
