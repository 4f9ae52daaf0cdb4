#include "resconj/groebner.hpp"

#include <algorithm>

#include "groebner_engine.hpp"
#include "heap_reduce.hpp"

namespace resconj {

using detail::Engine;
using detail::IntPolicy;
using detail::ModPolicy;
using detail::SPoly;

namespace {

// Integer-primitive image: returns (L*f, L) with L clearing all denominators.
std::pair<SPoly<mpz_class>, mpq_class> to_int(const Poly& f) {
  if (f.domain().is_prime()) throw UsageError("expected a polynomial over ZZ or QQ");
  mpz_class l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  SPoly<mpz_class> out;
  for (const auto& t : f.terms()) {
    out.mons.push_back(t.mono);
    out.cs.push_back(t.coeff.get_num() * (l / t.coeff.get_den()));
  }
  return {std::move(out), mpq_class(l)};
}

SPoly<std::uint32_t> to_mod(const Poly& f, std::uint32_t p) {
  SPoly<std::uint32_t> out;
  for (const auto& t : f.terms()) {
    auto c = mpq_to_mod(t.coeff, p);
    if (!c) throw UsageError("prime " + std::to_string(p) + " divides a coefficient denominator");
    if (*c == 0) continue;
    out.mons.push_back(t.mono);
    out.cs.push_back(*c);
  }
  return out;
}

SPoly<mpq_class> to_rat(const Poly& f) {
  if (f.domain().is_prime()) throw UsageError("expected a polynomial over ZZ or QQ");
  SPoly<mpq_class> out;
  for (const auto& t : f.terms()) {
    out.mons.push_back(t.mono);
    out.cs.push_back(t.coeff);
  }
  return out;
}

template <class C>
Poly to_poly(const RingPtr& ring, Domain domain, const SPoly<C>& f, const mpq_class& scale) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) terms.push_back(Term{f.mons[k], mpq_class(f.cs[k]) * scale});
  return Poly::from_terms(ring, domain, std::move(terms));
}

Poly to_poly_mod(const RingPtr& ring, std::uint32_t p, const SPoly<std::uint32_t>& f, std::uint32_t scale) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    terms.push_back(Term{f.mons[k], mpq_class(mul_mod(f.cs[k], scale, p))});
  return Poly::from_terms(ring, Domain::gf(p), std::move(terms));
}

bool has_aux(const Poly& f) {
  for (int v = 0; v < kAuxCount; ++v)
    if (f.uses(Var{static_cast<std::uint8_t>(v)})) return true;
  return false;
}

bool homogeneous_target(const Poly& f) { return !has_aux(f) && is_homogeneous(f).degree.has_value(); }

Engine<IntPolicy> make_int_engine(const IdealPresentation& ideal, bool track) {
  Engine<IntPolicy> eng(IntPolicy{}, ideal.ring()->order(), ideal.generators.size(), track);
  for (std::size_t l = 0; l < ideal.generators.size(); ++l) {
    auto [poly, scale] = to_int(ideal.generators[l]);
    eng.add_generator(std::move(poly), l, scale);
  }
  return eng;
}

Engine<ModPolicy> make_mod_engine(const IdealPresentation& ideal, std::uint32_t p, bool track) {
  Engine<ModPolicy> eng(ModPolicy{detail::ModOps{p}}, ideal.ring()->order(), ideal.generators.size(), track);
  for (std::size_t l = 0; l < ideal.generators.size(); ++l) eng.add_generator(to_mod(ideal.generators[l], p), l, 1);
  return eng;
}

GroebnerBasis snapshot(const Engine<IntPolicy>& eng, const IdealPresentation& ideal,
                       std::optional<unsigned> bound, GbStatus status) {
  const RingPtr& ring = ideal.ring();
  std::vector<Poly> elements;
  std::vector<std::vector<Poly>> rows;
  for (const auto& el : eng.reduced_basis()) {
    const mpq_class inv_lc = mpq_class(1) / mpq_class(el.poly.lc());
    elements.push_back(to_poly(ring, Domain::rational(), el.poly, inv_lc));
    if (eng.tracking()) {
      std::vector<Poly> row;
      for (const auto& r : el.row) row.push_back(to_poly(ring, Domain::rational(), r, inv_lc));
      rows.push_back(std::move(row));
    }
  }
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.to_domain(Domain::rational()));
  return GroebnerBasis(ring, Domain::rational(), std::move(gens), std::move(elements), std::move(rows), bound,
                       status, eng.stats());
}

GroebnerBasis snapshot(const Engine<ModPolicy>& eng, const IdealPresentation& ideal, std::uint32_t p,
                       std::optional<unsigned> bound, GbStatus status) {
  const RingPtr& ring = ideal.ring();
  std::vector<Poly> elements;
  std::vector<std::vector<Poly>> rows;
  for (const auto& el : eng.reduced_basis()) {
    elements.push_back(to_poly_mod(ring, p, el.poly, 1));
    if (eng.tracking()) {
      std::vector<Poly> row;
      for (const auto& r : el.row) row.push_back(to_poly_mod(ring, p, r, 1));
      rows.push_back(std::move(row));
    }
  }
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.domain().is_prime() ? g : reduce_mod_p(g, p));
  return GroebnerBasis(ring, Domain::gf(p), std::move(gens), std::move(elements), std::move(rows), bound, status,
                       eng.stats());
}

Poly rational_zero(const RingPtr& ring) { return Poly(ring, Domain::rational()); }

std::vector<Poly> rows_to_polys(const RingPtr& ring, const detail::Row<IntPolicy>& row, std::size_t n) {
  std::vector<Poly> out;
  for (std::size_t l = 0; l < n; ++l)
    out.push_back(l < row.size() ? to_poly(ring, Domain::rational(), row[l], 1) : rational_zero(ring));
  return out;
}

}  // namespace

IdealPresentation::IdealPresentation(std::vector<Poly> gens, Domain d) : generators(), domain(d) {
  if (d.kind == Domain::Kind::Integer) domain = Domain::rational();
  for (auto& g : gens)
    if (!g.is_zero()) generators.push_back(std::move(g));
  if (generators.empty()) throw UsageError("ideal needs at least one nonzero generator");
  for (const auto& g : generators)
    if (!same_ring(g.ring(), generators.front().ring())) throw UsageError("ideal generators live in different rings");
  for (const auto& g : generators)
    if (g.domain().is_prime() && g.domain() != domain)
      throw UsageError("generator over " + g.domain().describe() + " in an ideal over " + domain.describe());
}

bool IdealPresentation::homogeneous() const {
  return std::all_of(generators.begin(), generators.end(), homogeneous_target);
}

std::string to_string(GbStatus s) {
  switch (s) {
    case GbStatus::Complete: return "complete";
    case GbStatus::Truncated: return "truncated";
    case GbStatus::Exhausted: return "exhausted";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NotMember: return "not-member";
    case Verdict::NotMemberHeuristic: return "not-member-heuristic";
    case Verdict::Exhausted: return "exhausted";
  }
  return "?";
}

std::string to_string(KappaVerdict v) {
  switch (v) {
    case KappaVerdict::Kappa: return "kappa";
    case KappaVerdict::NotInRadical: return "not-in-radical";
    case KappaVerdict::Exhausted: return "exhausted";
    case KappaVerdict::HeuristicOnly: return "heuristic-only";
  }
  return "?";
}

GroebnerBasis::GroebnerBasis(RingPtr ring, Domain domain, std::vector<Poly> generators, std::vector<Poly> elements,
                             std::vector<std::vector<Poly>> rows, std::optional<unsigned> degree_bound,
                             GbStatus status, GroebnerStats stats)
    : ring_(std::move(ring)), domain_(domain), generators_(std::move(generators)), elements_(std::move(elements)),
      rows_(std::move(rows)), degree_bound_(degree_bound), status_(status), stats_(stats) {}

bool GroebnerBasis::contains_unit() const {
  return std::any_of(elements_.begin(), elements_.end(),
                     [](const Poly& e) { return !e.is_zero() && e.is_constant(); });
}

GroebnerBasis buchberger(const IdealPresentation& ideal, const GroebnerOptions& options) {
  if (options.degree_bound && !ideal.homogeneous())
    throw UsageError("degree-truncated Groebner bases need homogeneous generators");
  if (ideal.domain.is_prime()) {
    const std::uint32_t p = ideal.domain.prime;
    auto eng = make_mod_engine(ideal, p, options.track_cofactors);
    const GbStatus st = eng.run(options.degree_bound, options.deadline, options.max_elements);
    return snapshot(eng, ideal, p, options.degree_bound, st);
  }
  auto eng = make_int_engine(ideal, options.track_cofactors);
  const GbStatus st = eng.run(options.degree_bound, options.deadline, options.max_elements);
  return snapshot(eng, ideal, options.degree_bound, st);
}

namespace {

struct BasisReduction {
  detail::HeapStop stop;
  Poly remainder;
  std::vector<Poly> cofactors;  // against the public basis elements
};

template <class Ops, class ToSparse, class ToPoly>
BasisReduction reduce_by_basis_with(const Ops& ops, const Poly& f, const GroebnerBasis& basis, bool track,
                                    bool stop_at_irreducible, const Deadline& deadline, ToSparse to_sparse,
                                    ToPoly to_public) {
  using T = typename Ops::T;
  const auto& order = basis.ring()->order();
  std::vector<SPoly<T>> elems;
  std::vector<T> scales;  // internal = scale * public
  elems.reserve(basis.elements().size());
  for (const auto& e : basis.elements()) {
    SPoly<T> s = to_sparse(e);
    const T sc = ops.inv(s.lc());
    detail::scale_in_place(ops, s, sc);
    scales.push_back(sc);
    elems.push_back(std::move(s));
  }
  std::vector<const SPoly<T>*> monic;
  for (const auto& e : elems) monic.push_back(&e);
  auto red = detail::heap_reduce(ops, order, to_sparse(f), monic, track, stop_at_irreducible, deadline);
  BasisReduction out{red.stop, to_public(red.rem, ops.one()), {}};
  if (track && red.stop == detail::HeapStop::Done)
    for (std::size_t k = 0; k < elems.size(); ++k)
      out.cofactors.push_back(to_public(detail::from_unsorted(ops, order, std::move(red.cof[k])), scales[k]));
  return out;
}

BasisReduction reduce_by_basis(const Poly& f, const GroebnerBasis& basis, bool track, bool stop_at_irreducible,
                               const Deadline& deadline) {
  const RingPtr& ring = basis.ring();
  if (basis.domain().is_prime()) {
    const std::uint32_t p = basis.domain().prime;
    return reduce_by_basis_with(
        detail::ModOps{p}, f, basis, track, stop_at_irreducible, deadline, [p](const Poly& g) { return to_mod(g, p); },
        [&](const SPoly<std::uint32_t>& s, std::uint32_t sc) { return to_poly_mod(ring, p, s, sc); });
  }
  return reduce_by_basis_with(
      detail::MpqOps{}, f, basis, track, stop_at_irreducible, deadline, [](const Poly& g) { return to_rat(g); },
      [&](const SPoly<mpq_class>& s, const mpq_class& sc) { return to_poly(ring, Domain::rational(), s, sc); });
}

}  // namespace

NormalForm normal_form(const Poly& f, const GroebnerBasis& basis) {
  if (!same_ring(f.ring(), basis.ring())) throw UsageError("normal_form: polynomial and basis live in different rings");
  BasisReduction red = reduce_by_basis(f, basis, true, false, Deadline::never());
  return NormalForm{std::move(red.remainder), std::move(red.cofactors)};
}

bool s_polynomial_closure(const GroebnerBasis& basis) {
  const auto& el = basis.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      const Monomial li = el[i].lead().mono, lj = el[j].lead().mono;
      const Monomial l = Monomial::lcm(li, lj);
      if (basis.degree_bound() && l.degree() > *basis.degree_bound()) continue;
      const Poly s = el[i].mul_term(l / li, 1) - el[j].mul_term(l / lj, 1);
      if (!normal_form(s, basis).remainder.is_zero()) return false;
    }
  return true;
}

bool rows_reproduce_elements(const GroebnerBasis& basis) {
  if (!basis.has_rows()) return false;
  for (std::size_t k = 0; k < basis.elements().size(); ++k) {
    Poly sum(basis.ring(), basis.domain());
    for (std::size_t l = 0; l < basis.generators().size(); ++l) sum += basis.rows()[k][l] * basis.generators()[l];
    if (!(sum == basis.elements()[k])) return false;
  }
  return true;
}

bool is_reduced(const GroebnerBasis& basis) {
  const auto& el = basis.elements();
  for (std::size_t k = 0; k < el.size(); ++k) {
    if (el[k].is_zero() || el[k].lead().coeff != 1) return false;
    for (std::size_t q = 0; q < el.size(); ++q) {
      if (q == k) continue;
      for (const auto& t : el[k].terms())
        if (el[q].lead().mono.divides(t.mono)) return false;
    }
  }
  return true;
}

MembershipResult is_member(const Poly& f, const IdealPresentation& ideal, const MembershipOptions& options,
                           unsigned kappa) {
  if (kappa == 0) throw UsageError("membership exponent must be >= 1");
  if (!same_ring(f.ring(), ideal.ring())) throw UsageError("is_member: ring mismatch");
  MembershipResult result;
  const Poly target = f.to_domain(Domain::rational()).pow(kappa);
  std::optional<unsigned> bound;
  if (ideal.homogeneous() && homogeneous_target(target)) bound = target.total_degree();

  for (std::uint32_t p : options.primes) {
    auto eng = make_mod_engine(ideal, p, false);
    if (eng.run(bound, options.deadline, 100000) == GbStatus::Exhausted) continue;
    auto red = eng.reduce_against_generators(to_mod(target, p), false);
    if (!red.rem.empty()) result.rejecting_primes.push_back(p);
  }
  if (!result.rejecting_primes.empty() && !options.certified_negative) {
    result.verdict = Verdict::NotMemberHeuristic;
    result.note = "nonzero normal form modulo " + std::to_string(result.rejecting_primes.size()) + " prime(s)";
    return result;
  }

  auto eng = make_int_engine(ideal, options.want_certificate);
  if (eng.run(bound, options.deadline, 100000) == GbStatus::Exhausted) {
    result.verdict = Verdict::Exhausted;
    result.note = "exact Groebner completion ran out of budget";
    return result;
  }
  auto [ti, tl] = to_int(target);
  auto red = eng.reduce_against_generators(ti, options.want_certificate);
  if (!red.rem.empty()) {
    result.verdict = Verdict::NotMember;
    return result;
  }
  result.verdict = Verdict::Member;
  if (options.want_certificate) {
    auto cof = rows_to_polys(ideal.ring(), red.gcof, ideal.generators.size());
    for (auto& c : cof) c = c.scaled(mpq_class(1) / tl);
    auto cert = make_certificate(f, kappa, ideal.generators, std::move(cof));
    if (!cert.verified) throw Error("internal error: Groebner cofactors failed re-verification");
    result.certificate = std::move(cert);
  }
  return result;
}

MembershipResult member_by_basis(const Poly& f, const GroebnerBasis& basis, unsigned kappa, bool want_certificate,
                                 const Deadline& deadline) {
  if (kappa == 0) throw UsageError("membership exponent must be >= 1");
  if (basis.status() != GbStatus::Complete && !basis.degree_bound())
    throw UsageError("member_by_basis needs a complete or degree-bounded basis");
  const bool modular = basis.domain().is_prime();
  const Poly fp = modular ? reduce_mod_p(f.to_domain(Domain::rational()), basis.domain().prime)
                          : f.to_domain(Domain::rational());
  const Poly target = fp.pow(kappa);
  if (basis.degree_bound() && (!homogeneous_target(target) || target.total_degree() > *basis.degree_bound()))
    throw UsageError("target degree exceeds the basis degree bound");
  MembershipResult result;
  const bool track = !modular && want_certificate;
  const BasisReduction nf = reduce_by_basis(target, basis, track, true, deadline);
  if (nf.stop == detail::HeapStop::Deadline) {
    result.verdict = Verdict::Exhausted;
    result.note = "normal form ran out of budget";
    return result;
  }
  if (nf.stop == detail::HeapStop::Irreducible || !nf.remainder.is_zero()) {
    result.verdict = modular ? Verdict::NotMemberHeuristic : Verdict::NotMember;
    if (modular) result.rejecting_primes.push_back(basis.domain().prime);
    return result;
  }
  result.verdict = Verdict::Member;
  if (modular || !want_certificate) return result;
  if (!basis.has_rows()) throw UsageError("certificate requested from a basis without rows");
  std::vector<Poly> cof(basis.generators().size(), Poly(basis.ring(), Domain::rational()));
  for (std::size_t k = 0; k < nf.cofactors.size(); ++k) {
    if (nf.cofactors[k].is_zero()) continue;
    for (std::size_t l = 0; l < cof.size(); ++l)
      if (!basis.rows()[k][l].is_zero()) cof[l] += nf.cofactors[k] * basis.rows()[k][l];
  }
  auto cert = make_certificate(f, kappa, basis.generators(), std::move(cof));
  if (!cert.verified) throw Error("internal error: basis cofactors failed re-verification");
  result.certificate = std::move(cert);
  return result;
}

std::optional<bool> is_radical_member(const Poly& f, const IdealPresentation& ideal, const RadicalOptions& options) {
  if (f.uses(VarTable::y()) ||
      std::any_of(ideal.generators.begin(), ideal.generators.end(), [](const Poly& g) { return g.uses(VarTable::y()); }))
    throw UsageError("Rabinowitsch variable y already in use");
  const RingPtr& ring = ideal.ring();
  const Domain q = Domain::rational();
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.to_domain(q));
  gens.push_back(Poly::constant(ring, 1, q) - Poly::variable(ring, VarTable::y(), q) * f.to_domain(q));
  IdealPresentation extended(std::move(gens), q);
  if (options.prime) {
    auto eng = make_mod_engine(extended, *options.prime, false);
    if (eng.run(std::nullopt, options.deadline, 100000) == GbStatus::Exhausted) return std::nullopt;
    return eng.has_unit();
  }
  auto eng = make_int_engine(extended, false);
  if (eng.run(std::nullopt, options.deadline, 100000) == GbStatus::Exhausted) return std::nullopt;
  return eng.has_unit();
}

KappaResult minimal_kappa(const Poly& f, const IdealPresentation& ideal, unsigned kappa_max,
                          const KappaOptions& options) {
  if (kappa_max == 0) throw UsageError("kappa_max must be >= 1");
  KappaResult result;
  result.primes = options.primes;
  const Poly fq = f.to_domain(Domain::rational());
  const bool graded = ideal.homogeneous() && homogeneous_target(fq);
  auto bound_for = [&](unsigned k) -> std::optional<unsigned> {
    if (!graded) return std::nullopt;
    return k * fq.total_degree();
  };

  if (options.check_radical) {
    double budget = options.radical_budget_seconds;
    if (options.deadline.bounded()) budget = std::min(budget, std::max(0.0, options.deadline.remaining()));
    result.radical = is_radical_member(f, ideal, RadicalOptions{Deadline::after(budget), std::nullopt});
    if (result.radical == false) {
      result.verdict = KappaVerdict::NotInRadical;
      return result;
    }
  }

  std::vector<Engine<ModPolicy>> mods;
  for (std::uint32_t p : options.primes) mods.push_back(make_mod_engine(ideal, p, false));
  std::optional<Engine<IntPolicy>> exact;
  bool exact_exhausted = false;

  // Exact verdict at exponent k: true/false, or nullopt when out of budget.
  auto exact_member = [&](unsigned k, std::optional<MembershipCertificate>* cert) -> std::optional<bool> {
    if (exact_exhausted) return std::nullopt;
    if (!exact) exact.emplace(make_int_engine(ideal, true));
    if (exact->run(bound_for(k), options.deadline, 100000) == GbStatus::Exhausted) {
      exact_exhausted = true;
      return std::nullopt;
    }
    const Poly target = fq.pow(k);
    auto [ti, tl] = to_int(target);
    auto red = exact->reduce_against_generators(ti, cert != nullptr);
    if (!red.rem.empty()) return false;
    if (cert) {
      auto cof = rows_to_polys(ideal.ring(), red.gcof, ideal.generators.size());
      for (auto& c : cof) c = c.scaled(mpq_class(1) / tl);
      auto built = make_certificate(f, k, ideal.generators, std::move(cof));
      if (!built.verified) throw Error("internal error: Groebner cofactors failed re-verification");
      *cert = std::move(built);
    }
    return true;
  };

  for (unsigned k = 1; k <= kappa_max; ++k) {
    if (options.deadline.expired()) break;
    bool rejected = false;
    for (auto& eng : mods) {
      if (eng.run(bound_for(k), options.deadline, 100000) == GbStatus::Exhausted) continue;
      const std::uint32_t p = eng.policy().ops.p;
      if (!eng.reduce_against_generators(to_mod(fq.pow(k), p), false).rem.empty()) {
        rejected = true;
        break;
      }
    }
    if (options.heuristic) {
      if (!rejected && !mods.empty()) {
        result.verdict = KappaVerdict::HeuristicOnly;
        result.kappa = k;
        result.note = "modular evidence only";
        return result;
      }
      if (mods.empty()) {
        // No primes: fall through to the exact path.
      } else {
        continue;
      }
    }
    if (rejected) continue;

    std::optional<MembershipCertificate> cert;
    auto at_k = exact_member(k, &cert);
    if (!at_k) break;
    if (!*at_k) {
      result.certified_nonmember_below = k;
      continue;
    }
    // Member at k; walk down until a certified non-member is found.
    unsigned found = k;
    while (found > 1 && result.certified_nonmember_below < found - 1) {
      std::optional<MembershipCertificate> lower_cert;
      auto below = exact_member(found - 1, &lower_cert);
      if (!below) break;
      if (*below) {
        --found;
        cert = std::move(lower_cert);
      } else {
        result.certified_nonmember_below = found - 1;
      }
    }
    if (found > 1 && result.certified_nonmember_below < found - 1) break;
    result.verdict = KappaVerdict::Kappa;
    result.kappa = found;
    result.certificate = std::move(cert);
    return result;
  }

  // Out of exponents or budget: certify the strongest lower bound we can.
  if (!exact_exhausted && !options.deadline.expired() && result.certified_nonmember_below < kappa_max) {
    unsigned top = kappa_max;
    if (auto v = exact_member(top, nullptr); v && !*v) result.certified_nonmember_below = top;
  }
  result.verdict = KappaVerdict::Exhausted;
  result.note = "no exponent <= " + std::to_string(kappa_max) + " certified";
  return result;
}

}  // namespace resconj
