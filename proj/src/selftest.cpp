#include "resconj/selftest.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "resconj/cache.hpp"
#include "resconj/coefficients.hpp"
#include "resconj/macaulay.hpp"
#include "resconj/matrix.hpp"
#include "resconj/modular.hpp"

namespace resconj {

namespace fs = std::filesystem;

namespace {

Poly q(const Poly& p) { return p.to_domain(Domain::rational()); }

Monomial random_monomial(const RingPtr& ring, std::mt19937_64& rng, unsigned degree) {
  Monomial mono;
  std::uniform_int_distribution<int> pick(0, ring->m());
  for (unsigned k = 0; k < degree; ++k) {
    const Var v = ring->vars().a(pick(rng));
    mono.set(v, mono[v] + 1);
  }
  return mono;
}

Poly from_monomials(const RingPtr& ring, std::mt19937_64& rng, int terms, std::function<unsigned()> degree, int bound) {
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    int c = 0;
    while (c == 0) c = coeff(rng);
    ts.push_back(Term{random_monomial(ring, rng, degree()), mpq_class(c)});
  }
  return Poly::from_terms(ring, Domain::integer(), std::move(ts));
}

// Runs `body` and records a failure for any exception it throws.
template <class Fn>
void guarded(CheckReport& rep, const std::string& name, Fn body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.add(name, false, std::string("exception: ") + e.what());
  }
}

void ring_axioms(CheckReport& rep, std::mt19937_64& rng) {
  std::size_t cases = 0;
  std::string bad;
  for (int m = 2; m <= 5 && bad.empty(); ++m) {
    const RingPtr ring = Ring::make(m);
    const Poly zero(ring), one = Poly::constant(ring, 1);
    for (int n = 0; n < 20 && bad.empty(); ++n, ++cases) {
      const Poly f = random_poly(ring, rng, 4, 3), g = random_poly(ring, rng, 4, 3), h = random_poly(ring, rng, 3, 2);
      if (!(f + g == g + f)) bad = "addition not commutative";
      else if (!(f * g == g * f)) bad = "multiplication not commutative";
      else if (!((f + g) + h == f + (g + h))) bad = "addition not associative";
      else if (!((f * g) * h == f * (g * h))) bad = "multiplication not associative";
      else if (!(f * (g + h) == f * g + f * h)) bad = "distributivity fails";
      else if (!(f + zero == f) || !(f * one == f)) bad = "identities fail";
      else if (!(f - f == zero)) bad = "additive inverse fails";
      else if (!(f.pow(3) == f * f * f)) bad = "pow disagrees with repeated product";
      else if (!g.is_zero() && !(exact_div(f * g, g) == f)) bad = "exact division does not invert multiplication";
      else if (!(parse_poly(ring, format(f)) == f)) bad = "format/parse round trip fails";
    }
  }
  rep.add("ring axioms and exact division (m=2..5)", bad.empty(), bad.empty() ? std::to_string(cases) + " cases" : bad);
}

void determinant_oracle(CheckReport& rep, std::mt19937_64& rng) {
  std::string bad;
  for (int m = 2; m <= 5 && bad.empty(); ++m) {
    const RingPtr ring = Ring::make(m);
    for (const SymMatrix& M : {build_M(ring), build_Mt(ring)})
      if (!(det_bareiss(M) == det_laplace(M))) bad = "symbolic mismatch at m=" + std::to_string(m);
  }
  rep.add("determinant oracle: Bareiss == Laplace, symbolic m=2..5", bad.empty(), bad);

  bad.clear();
  std::size_t cases = 0;
  std::uniform_int_distribution<int> value(-9, 9);
  for (int m = 6; m <= 7 && bad.empty(); ++m) {
    const RingPtr ring = Ring::make(m);
    const SymMatrix M = build_M(ring), Mt = build_Mt(ring);
    for (int n = 0; n < 20 && bad.empty(); ++n, ++cases) {
      std::map<Var, Poly> at;
      for (int k = 0; k <= m; ++k) at.emplace(ring->vars().a(k), Poly::constant(ring, value(rng)));
      auto spec = [&](const Poly& p) { return substitute(p, at); };
      for (const SymMatrix& S : {M.map(spec), Mt.map(spec)})
        if (!(det_bareiss(S) == det_laplace(S))) bad = "mismatch at m=" + std::to_string(m);
    }
  }
  rep.add("determinant oracle: 20 random specializations each at m=6,7", bad.empty(),
          bad.empty() ? std::to_string(cases) + " specializations" : bad);
}

void family_checks(CheckReport& rep) {
  std::string bad;
  std::size_t cells = 0;
  for (int m = 2; m <= 6 && bad.empty(); ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i <= m && bad.empty(); ++i)
      for (int j = 0; j <= m - i; ++j, ++cells)
        if (!check_symmetry(fam, i, j)) {
          bad = "no reversal sign for m=" + std::to_string(m) + " H_" + std::to_string(i) + std::to_string(j);
          break;
        }
  }
  rep.add("reversal symmetry sign exists for every triangle cell, m=2..6", bad.empty(),
          bad.empty() ? std::to_string(cells) + " cells" : bad);

  bad.clear();
  for (int m = 2; m <= 5 && bad.empty(); ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i < m; ++i) {
      const auto h = is_homogeneous(fam.D(i));
      if (!h.degree || *h.degree != static_cast<unsigned>(m - 1 - i)) bad = "D(" + std::to_string(m) + "," + std::to_string(i) + ") degree";
    }
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m - i; ++j) {
        const auto h = is_homogeneous(fam.H(i, j));
        if (!h.zero && (!h.degree || *h.degree != static_cast<unsigned>(m - i)))
          bad = "H_" + std::to_string(i) + std::to_string(j) + " degree at m=" + std::to_string(m);
      }
  }
  rep.add("D and H homogeneity degrees, m=2..5", bad.empty(), bad);
}

void groebner_checks(CheckReport& rep, std::mt19937_64& rng, const std::vector<std::uint32_t>& primes) {
  std::string bad_basis, bad_nf, bad_mod;
  std::size_t bases = 0, nf_cases = 0, mod_cases = 0;
  for (int m = 2; m <= 5; ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i < m; ++i) {
      const std::string where = " at m=" + std::to_string(m) + " i=" + std::to_string(i);
      const IdealPresentation ideal(fam.generators(i));
      GroebnerOptions opt;
      opt.track_cofactors = true;
      const GroebnerBasis gb = buchberger(ideal, opt);
      ++bases;
      if (bad_basis.empty()) {
        if (!s_polynomial_closure(gb)) bad_basis = "S-polynomial closure fails" + where;
        else if (!is_reduced(gb)) bad_basis = "basis not reduced" + where;
        else if (!rows_reproduce_elements(gb)) bad_basis = "rows do not reproduce elements" + where;
      }
      for (int n = 0; n < 3 && bad_nf.empty(); ++n, ++nf_cases) {
        const Poly f = q(random_poly(fam.ring(), rng, 5, m)), g = q(random_poly(fam.ring(), rng, 5, m));
        const mpq_class al(3, 2), be(-5);
        const Poly lhs = normal_form(f.scaled(al) + g.scaled(be), gb).remainder;
        const NormalForm nff = normal_form(f, gb);
        const Poly nfg = normal_form(g, gb).remainder;
        Poly sum = nff.remainder;
        for (std::size_t k = 0; k < nff.cofactors.size(); ++k) sum += nff.cofactors[k] * gb.elements()[k];
        if (!(lhs == nff.remainder.scaled(al) + nfg.scaled(be))) bad_nf = "not linear" + where;
        else if (!(normal_form(nff.remainder, gb).remainder == nff.remainder)) bad_nf = "not idempotent" + where;
        else if (!(sum == f)) bad_nf = "cofactors do not reproduce f" + where;
      }
      // Members over QQ stay members modulo each prime.
      std::vector<GroebnerBasis> modular;
      for (std::uint32_t p : primes) modular.push_back(buchberger(IdealPresentation(fam.generators(i), Domain::gf(p))));
      for (int j = 0; j <= m - i && bad_mod.empty(); ++j)
        for (unsigned k = 1; k <= 3; ++k) {
          if (member_by_basis(fam.H(i, j), gb, k, false).verdict != Verdict::Member) continue;
          for (const auto& gp : modular) {
            ++mod_cases;
            if (member_by_basis(fam.H(i, j), gp, k, false).verdict != Verdict::Member)
              bad_mod = "member over QQ but not modulo " + std::to_string(gp.domain().prime) + where;
          }
          break;
        }
    }
  }
  rep.add("Groebner bases: S-closure, reduced, rows reproduce (m=2..5, all i)", bad_basis.empty(),
          bad_basis.empty() ? std::to_string(bases) + " bases" : bad_basis);
  rep.add("normal form: linearity, idempotence, cofactor identity", bad_nf.empty(),
          bad_nf.empty() ? std::to_string(nf_cases) + " random pairs" : bad_nf);
  rep.add("modular consistency of rational members", bad_mod.empty(),
          bad_mod.empty() ? std::to_string(mod_cases) + " checks" : bad_mod);
}

void engine_checks(CheckReport& rep) {
  std::string bad;
  std::size_t certs = 0, cases = 0;
  for (int m = 3; m <= 4 && bad.empty(); ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i < m - 1 && bad.empty(); ++i) {
      const IdealPresentation ideal(fam.generators(i));
      for (int j = 0; j <= m - i && bad.empty(); ++j)
        for (unsigned k = 1; k <= 2; ++k, ++cases) {
          const MembershipResult g = is_member(fam.H(i, j), ideal, {}, k);
          const MacaulayResult s = homogeneous_member(fam.H(i, j), fam.generators(i), {}, k);
          if (g.verdict != s.verdict) {
            bad = "engines disagree at m=" + std::to_string(m) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
            break;
          }
          for (const auto* c : {g.certificate ? &*g.certificate : nullptr, s.certificate ? &*s.certificate : nullptr}) {
            if (!c) continue;
            ++certs;
            if (!verify_certificate(*c) || !cofactors_have_forced_degrees(*c)) bad = "certificate fails re-verification";
          }
        }
    }
  }
  rep.add("certificates re-verify with forced degrees; engines agree (m=3,4, kappa<=2)", bad.empty(),
          bad.empty() ? std::to_string(cases) + " instances, " + std::to_string(certs) + " certificates" : bad);
}

void slice_checks(CheckReport& rep) {
  std::string bad;
  std::size_t slices = 0;
  for (int m = 2; m <= 5 && bad.empty(); ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i < m && bad.empty(); ++i)
      for (unsigned d = 0; d <= 6 && bad.empty(); ++d, ++slices) {
        const Poly target = q(Poly::a(fam.ring(), 0)).pow(d);
        const DegreeSlice s = build_slice(target, fam.generators(i));
        if (s.rows.size() != binomial(d + m, m)) bad = "row count";
        std::size_t total = 0;
        for (int l = 0; l <= i; ++l) {
          const unsigned dl = static_cast<unsigned>(m - 1 - l);
          const std::size_t want = dl <= d ? binomial(d - dl + m, m) : 0;
          if (s.block_sizes[l] != want) bad = "block size";
          total += want;
        }
        if (s.columns.size() != total) bad = "column count";
        if (!bad.empty()) bad += " at m=" + std::to_string(m) + " i=" + std::to_string(i) + " d=" + std::to_string(d);
      }
  }
  {
    const DHFamily fam = build_family(4);
    const DegreeSlice s = build_slice(q(fam.H(1, 2)).pow(2), fam.generators(1));
    if (s.rows.size() != 210 || s.columns.size() != 105) bad = "m=4 H12^2 slice is not 210 x 105";
  }
  rep.add("slice dimensions match binomial counts", bad.empty(), bad.empty() ? std::to_string(slices) + " slices" : bad);
}

void cache_checks(CheckReport& rep, const fs::path& dir) {
  const DHFamily fam = build_family(4);
  const IdealPresentation ideal(fam.generators(1));
  BasisCache cache(dir);
  GroebnerOptions opt;
  opt.track_cofactors = true;
  const GroebnerBasis gb = buchberger(ideal, opt);
  cache.store(4, 1, gb);
  const bool hit = cache.load(4, 1, ideal).has_value();

  // Corrupt one element so the file still parses but no longer verifies.
  const fs::path path = cache.path_for(BasisCache::key(4, 1, ideal.ring()->order(), ideal.domain));
  std::string text;
  {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto pos = text.find("\"elements\"");
  const auto a1 = text.find("a1", pos);
  if (a1 != std::string::npos) text[a1 + 1] = '2';
  {
    std::ofstream out(path);
    out << text;
  }
  const bool rejected = !cache.load(4, 1, ideal).has_value() && cache.rejected() == 1;

  // Garbage is rejected too, and a recomputed entry is accepted again.
  {
    std::ofstream out(path);
    out << "{not json";
  }
  const bool garbage = !cache.load(4, 1, ideal).has_value() && cache.rejected() == 2;
  cache.store(4, 1, buchberger(ideal, opt));
  const auto again = cache.load(4, 1, ideal);
  const bool recovered = again && again->elements() == gb.elements();
  rep.add("cache: hit re-verifies, corrupted entries are detected and recomputed", hit && rejected && garbage && recovered,
          std::string("hit=") + (hit ? "yes" : "no") + " corrupted=" + (rejected ? "rejected" : "ACCEPTED") +
              " garbage=" + (garbage ? "rejected" : "ACCEPTED") + " recomputed=" + (recovered ? "yes" : "no"));
}

}  // namespace

Poly random_poly(const RingPtr& ring, std::mt19937_64& rng, int terms, unsigned max_degree, int bound) {
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  return from_monomials(ring, rng, terms, [&] { return deg(rng); }, bound);
}

Poly random_homogeneous(const RingPtr& ring, std::mt19937_64& rng, int terms, unsigned degree, int bound) {
  return from_monomials(ring, rng, terms, [degree] { return degree; }, bound);
}

CheckReport run_selftest(const SelftestOptions& options) {
  CheckReport rep;
  std::mt19937_64 rng(options.seed);
  {
    std::mt19937_64 r1(options.seed), r2(options.seed);
    const RingPtr ring = Ring::make(4);
    rep.add("seeded random polynomials are reproducible", random_poly(ring, r1, 6, 4) == random_poly(ring, r2, 6, 4));
  }
  RunConfig cfg;
  cfg.seed = options.seed;
  const auto primes = resolve_primes(cfg);

  guarded(rep, "ring axioms", [&] { ring_axioms(rep, rng); });
  guarded(rep, "determinant oracle", [&] { determinant_oracle(rep, rng); });
  guarded(rep, "family checks", [&] { family_checks(rep); });
  guarded(rep, "groebner checks", [&] { groebner_checks(rep, rng, primes); });
  guarded(rep, "engine checks", [&] { engine_checks(rep); });
  guarded(rep, "slice checks", [&] { slice_checks(rep); });

  fs::path dir;
  bool temporary = false;
  if (options.scratch_dir) {
    dir = *options.scratch_dir;
  } else {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("resconj-selftest-" + std::to_string(rd()));
    temporary = true;
  }
  guarded(rep, "cache checks", [&] { cache_checks(rep, dir); });
  if (temporary) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  return rep;
}

}  // namespace resconj
