#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resconj/budget.hpp"
#include "resconj/certificate.hpp"
#include "resconj/groebner.hpp"
#include "resconj/poly.hpp"

namespace resconj {

inline constexpr std::size_t kDefaultSliceGuard = 5'000'000;

std::uint64_t binomial(unsigned n, unsigned k);

// One column: coefficients (row index, value) of multiplier * generators[generator].
struct SliceColumn {
  std::size_t generator = 0;
  Monomial multiplier;
  std::vector<std::pair<std::uint32_t, mpq_class>> entries;
};

// Degree-d part of the ideal as a linear map: rows are the monomials of degree d
// in a0..am, columns the products mu * g_l with deg mu = d - deg g_l.
struct DegreeSlice {
  RingPtr ring;
  unsigned degree = 0;
  std::vector<Monomial> rows;
  std::vector<SliceColumn> columns;
  // Column count contributed by each generator (0 when deg g_l > d).
  std::vector<std::size_t> block_sizes;
  std::vector<std::pair<std::uint32_t, mpq_class>> target;

  std::size_t nonzeros() const;
};

// Throws UsageError on non-homogeneous input and SizeGuardExceeded when the
// slice would hold more than max_nonzeros entries.
DegreeSlice build_slice(const Poly& target, const std::vector<Poly>& generators,
                        std::size_t max_nonzeros = kDefaultSliceGuard);

// Rank of the column matrix over GF(p). Throws UsageError if p divides an entry denominator.
std::size_t rank_mod_p(const DegreeSlice& slice, std::uint32_t p);

struct MacaulayOptions {
  std::size_t max_nonzeros = kDefaultSliceGuard;
  // Slices with at most this many columns go straight to exact elimination.
  std::size_t exact_column_limit = 1500;
  // Primes for the modular solve; when empty, primes are drawn from a fixed seed.
  std::vector<std::uint32_t> primes;
  std::size_t max_primes = 64;
  bool want_certificate = true;
  Deadline deadline;
};

struct MacaulayResult {
  Verdict verdict = Verdict::Exhausted;
  std::optional<MembershipCertificate> certificate;
  // "exact" or "modular".
  std::string method;
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t rank = 0;
  std::string note;
};

// Decides f^kappa in <generators> inside the single degree kappa*deg(f).
MacaulayResult homogeneous_member(const Poly& f, const std::vector<Poly>& generators,
                                  const MacaulayOptions& options = {}, unsigned kappa = 1);

struct HomogeneousKappaResult {
  KappaVerdict verdict = KappaVerdict::Exhausted;
  unsigned kappa = 0;
  // Exponents proven not to work, in increasing order.
  std::vector<unsigned> certified_failures;
  std::optional<MembershipCertificate> certificate;
  std::string note;
};

HomogeneousKappaResult minimal_kappa_homogeneous(const Poly& f, const std::vector<Poly>& generators,
                                                 unsigned kappa_max, const MacaulayOptions& options = {});

}  // namespace resconj
