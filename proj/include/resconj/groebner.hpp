#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resconj/budget.hpp"
#include "resconj/certificate.hpp"
#include "resconj/poly.hpp"

namespace resconj {

// Generators of an ideal over QQ or GF(p), in the order of their ring.
struct IdealPresentation {
  std::vector<Poly> generators;
  Domain domain = Domain::rational();

  IdealPresentation(std::vector<Poly> gens, Domain d = Domain::rational());

  const RingPtr& ring() const { return generators.front().ring(); }
  // Homogeneous in the main variables, with no auxiliary variable present.
  bool homogeneous() const;
};

struct GroebnerOptions {
  // For homogeneous input: only S-pairs of degree <= bound are processed, giving
  // a basis that decides membership up to that degree.
  std::optional<unsigned> degree_bound;
  bool track_cofactors = false;
  Deadline deadline;
  std::size_t max_elements = 100000;
};

enum class GbStatus { Complete, Truncated, Exhausted };

std::string to_string(GbStatus s);

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_discarded = 0;
  std::size_t zero_reductions = 0;
  double seconds = 0;
};

// Reduced Groebner basis with leading coefficients 1. When cofactors were
// tracked, rows()[k][l] are polynomials with
// elements()[k] == sum_l rows()[k][l] * generators()[l].
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, Domain domain, std::vector<Poly> generators, std::vector<Poly> elements,
                std::vector<std::vector<Poly>> rows, std::optional<unsigned> degree_bound, GbStatus status,
                GroebnerStats stats);

  const RingPtr& ring() const noexcept { return ring_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::vector<Poly>& generators() const noexcept { return generators_; }
  const std::vector<Poly>& elements() const noexcept { return elements_; }
  const std::vector<std::vector<Poly>>& rows() const noexcept { return rows_; }
  bool has_rows() const noexcept { return !rows_.empty(); }
  std::optional<unsigned> degree_bound() const noexcept { return degree_bound_; }
  GbStatus status() const noexcept { return status_; }
  const GroebnerStats& stats() const noexcept { return stats_; }
  bool contains_unit() const;

 private:
  RingPtr ring_;
  Domain domain_;
  std::vector<Poly> generators_;
  std::vector<Poly> elements_;
  std::vector<std::vector<Poly>> rows_;
  std::optional<unsigned> degree_bound_;
  GbStatus status_;
  GroebnerStats stats_;
};

GroebnerBasis buchberger(const IdealPresentation& ideal, const GroebnerOptions& options = {});

// f == sum_k cofactors[k] * basis.elements()[k] + remainder, and no term of the
// remainder is divisible by a leading monomial of the basis.
struct NormalForm {
  Poly remainder;
  std::vector<Poly> cofactors;
};

NormalForm normal_form(const Poly& f, const GroebnerBasis& basis);

// Every S-polynomial of basis pairs (within the degree bound) reduces to zero.
bool s_polynomial_closure(const GroebnerBasis& basis);
// Every tracked row reproduces its element.
bool rows_reproduce_elements(const GroebnerBasis& basis);
// No basis monomial is divisible by another element's leading monomial, and
// every leading coefficient is 1.
bool is_reduced(const GroebnerBasis& basis);

enum class Verdict { Member, NotMember, NotMemberHeuristic, Exhausted };

std::string to_string(Verdict v);

struct MembershipOptions {
  bool want_certificate = true;
  // Confirm a modular rejection with an exact run before reporting NotMember.
  bool certified_negative = true;
  // Primes for the modular prefilter; empty disables it.
  std::vector<std::uint32_t> primes;
  Deadline deadline;
};

struct MembershipResult {
  Verdict verdict = Verdict::Exhausted;
  std::optional<MembershipCertificate> certificate;
  // Primes whose modular normal form was nonzero.
  std::vector<std::uint32_t> rejecting_primes;
  std::string note;
};

// Decides f^kappa in the ideal; Member results carry a verified certificate
// when requested.
MembershipResult is_member(const Poly& f, const IdealPresentation& ideal, const MembershipOptions& options = {},
                           unsigned kappa = 1);

// Membership of f^kappa decided by normal form against a complete basis. Over QQ
// with rows, Member results carry a verified certificate; over GF(p) the
// verdict is NotMemberHeuristic or Member without certificate. Exhausted when
// the deadline passes first.
MembershipResult member_by_basis(const Poly& f, const GroebnerBasis& basis, unsigned kappa = 1,
                                 bool want_certificate = true, const Deadline& deadline = Deadline());

struct RadicalOptions {
  Deadline deadline;
  // Use GF(p) instead of QQ; the answer is then only heuristic.
  std::optional<std::uint32_t> prime;
};

// f in sqrt(I) iff 1 in I + <1 - y f>. nullopt on budget exhaustion.
std::optional<bool> is_radical_member(const Poly& f, const IdealPresentation& ideal,
                                      const RadicalOptions& options = {});

enum class KappaVerdict { Kappa, NotInRadical, Exhausted, HeuristicOnly };

std::string to_string(KappaVerdict v);

struct KappaOptions {
  std::vector<std::uint32_t> primes;
  // Accept modular evidence alone; verdicts become HeuristicOnly.
  bool heuristic = false;
  bool check_radical = true;
  double radical_budget_seconds = 30.0;
  Deadline deadline;
};

struct KappaResult {
  KappaVerdict verdict = KappaVerdict::Exhausted;
  // Minimal exponent for Kappa/HeuristicOnly; otherwise 0.
  unsigned kappa = 0;
  // Largest exponent certified exactly not to work (0 when none).
  unsigned certified_nonmember_below = 0;
  std::optional<bool> radical;
  std::optional<MembershipCertificate> certificate;
  std::vector<std::uint32_t> primes;
  std::string note;
};

KappaResult minimal_kappa(const Poly& f, const IdealPresentation& ideal, unsigned kappa_max,
                          const KappaOptions& options = {});

}  // namespace resconj
