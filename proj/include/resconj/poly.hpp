#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resconj/ring.hpp"

namespace resconj {

// Coefficient domain of a Poly. All coefficients are held as mpq_class; the
// tag decides which values are legal and how results are reduced.
struct Domain {
  enum class Kind { Integer, Rational, Prime };

  Kind kind = Kind::Integer;
  std::uint32_t prime = 0;

  static Domain integer() { return {Kind::Integer, 0}; }
  static Domain rational() { return {Kind::Rational, 0}; }
  static Domain gf(std::uint32_t p);

  bool is_prime() const noexcept { return kind == Kind::Prime; }
  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Term {
  Monomial mono;
  mpq_class coeff;
};

// Sparse multivariate polynomial in canonical form: nonzero coefficients,
// distinct monomials, terms sorted descending under the ring's order.
class Poly {
 public:
  explicit Poly(RingPtr ring, Domain domain = Domain::integer());

  static Poly constant(RingPtr ring, const mpq_class& c, Domain domain = Domain::integer());
  static Poly variable(RingPtr ring, Var v, Domain domain = Domain::integer());
  // a_k, or the zero polynomial when k lies outside 0..m.
  static Poly a(RingPtr ring, int k, Domain domain = Domain::integer());
  static Poly from_terms(RingPtr ring, Domain domain, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& lead() const;
  bool is_constant() const noexcept;
  bool uses(Var v) const noexcept;
  unsigned degree_in(Var v) const noexcept;
  unsigned total_degree() const noexcept;

  Poly operator-() const;
  Poly& operator+=(const Poly& g);
  Poly& operator-=(const Poly& g);
  Poly& operator*=(const Poly& g);
  friend Poly operator+(Poly f, const Poly& g) { return f += g; }
  friend Poly operator-(Poly f, const Poly& g) { return f -= g; }
  friend Poly operator*(const Poly& f, const Poly& g);

  Poly pow(unsigned k) const;
  Poly scaled(const mpq_class& c) const;
  Poly mul_term(const Monomial& mono, const mpq_class& c) const;

  // Same polynomial re-sorted under another ring with the same variables.
  Poly in_ring(RingPtr ring) const;
  // Explicit coefficient-domain change; fails when a coefficient does not fit.
  Poly to_domain(Domain domain) const;
  // Terms whose main-variable degree equals d.
  Poly main_degree_part(unsigned d) const;

  friend bool operator==(const Poly& f, const Poly& g);

 private:
  Poly(RingPtr ring, Domain domain, std::vector<Term> canonical_terms, int);

  void canonicalize();
  void require_compatible(const Poly& g, const char* op) const;

  RingPtr ring_;
  Domain domain_;
  std::vector<Term> terms_;
};

// Degree restricted to a0..am.
unsigned main_degree(const Monomial& mono) noexcept;

// q with q*g == f; throws InexactDivision when g does not divide f.
Poly exact_div(const Poly& f, const Poly& g);

// Coefficient of v^k, as a polynomial in the remaining variables.
Poly coeff_of(const Poly& f, Var v, unsigned k);

// Simultaneous substitution of polynomials for variables.
Poly substitute(const Poly& f, const std::map<Var, Poly>& assignments);

// The assignment a_k -> a_{m-k}.
std::map<Var, Poly> reversal_assignment(const RingPtr& ring, Domain domain = Domain::integer());

struct Homogeneity {
  bool zero = false;
  std::optional<unsigned> degree;

  bool homogeneous() const noexcept { return zero || degree.has_value(); }
};

// Homogeneity in the main variables only; auxiliaries do not count.
Homogeneity is_homogeneous(const Poly& f);

Poly reduce_mod_p(const Poly& f, std::uint32_t p);

// Grammar: poly := term (('+'|'-') term)*, term := [coeff '*'] factor ('*' factor)*,
// factor := var ['^' exp]. Coefficients are integers or p/q.
Poly parse_poly(const RingPtr& ring, std::string_view text, Domain domain = Domain::integer());
std::string format(const Poly& f);

}  // namespace resconj
