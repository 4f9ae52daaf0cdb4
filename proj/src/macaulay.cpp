#include "resconj/macaulay.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "resconj/modular.hpp"

namespace resconj {

namespace {

using Index = std::uint32_t;

template <class C>
struct SVec {
  std::vector<Index> idx;
  std::vector<C> val;

  bool empty() const { return idx.empty(); }
  std::size_t size() const { return idx.size(); }
};

// x*u - y*v, merged by index; zero results dropped.
template <class C, class Mul, class Sub, class IsZero>
SVec<C> axpy(const C& x, const SVec<C>& u, const C& y, const SVec<C>& v, Mul mul, Sub sub, IsZero is_zero) {
  SVec<C> out;
  out.idx.reserve(u.size() + v.size());
  out.val.reserve(u.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    if (j == v.size() || (i < u.size() && u.idx[i] < v.idx[j])) {
      out.idx.push_back(u.idx[i]);
      out.val.push_back(mul(x, u.val[i]));
      ++i;
    } else if (i == u.size() || v.idx[j] < u.idx[i]) {
      out.idx.push_back(v.idx[j]);
      out.val.push_back(sub(C{}, mul(y, v.val[j])));
      ++j;
    } else {
      C c = sub(mul(x, u.val[i]), mul(y, v.val[j]));
      if (!is_zero(c)) {
        out.idx.push_back(u.idx[i]);
        out.val.push_back(std::move(c));
      }
      ++i;
      ++j;
    }
  }
  return out;
}

void enumerate(int first, int count, unsigned degree, Monomial& cur, std::vector<Monomial>& out) {
  if (count == 1) {
    cur.set(Var{static_cast<std::uint8_t>(first)}, degree);
    out.push_back(cur);
    cur.set(Var{static_cast<std::uint8_t>(first)}, 0);
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    cur.set(Var{static_cast<std::uint8_t>(first)}, e);
    enumerate(first + 1, count - 1, degree - e, cur, out);
  }
  cur.set(Var{static_cast<std::uint8_t>(first)}, 0);
}

std::vector<Monomial> main_monomials(const Ring& ring, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur;
  enumerate(kAuxCount, ring.m() + 1, degree, cur, out);
  const auto& order = ring.order();
  std::sort(out.begin(), out.end(), [&](const Monomial& x, const Monomial& y) { return order.greater(x, y); });
  return out;
}

unsigned homogeneous_degree(const Poly& p, const char* what) {
  for (int v = 0; v < kAuxCount; ++v)
    if (p.uses(Var{static_cast<std::uint8_t>(v)})) throw UsageError(std::string(what) + " uses an auxiliary variable");
  const auto h = is_homogeneous(p);
  if (!h.degree) throw UsageError(std::string(what) + " is not homogeneous in a0..am");
  return *h.degree;
}

// Incremental column echelon. Each stored vector is keyed by its leading row;
// a new column is reduced at its leading row until it is zero or has a fresh
// pivot. Combinations record each vector in terms of the input columns.
struct ModEchelon {
  std::uint32_t p;
  bool track;
  std::unordered_map<Index, std::size_t> by_pivot;
  std::vector<SVec<std::uint32_t>> vecs;
  std::vector<SVec<std::uint32_t>> combos;
  std::vector<Index> pivot_columns;

  // Returns true when the column joined the basis; on false, `combo` holds the
  // relation sum combo_k * column_k == 0.
  bool insert(SVec<std::uint32_t> v, Index column, SVec<std::uint32_t>& combo) {
    const std::uint32_t q = p;
    auto mul = [q](std::uint32_t a, std::uint32_t b) { return mul_mod(a, b, q); };
    auto sub = [q](std::uint32_t a, std::uint32_t b) { return sub_mod(a, b, q); };
    auto is_zero = [](std::uint32_t a) { return a == 0; };
    combo = {};
    if (track) {
      combo.idx.push_back(column);
      combo.val.push_back(1);
    }
    while (!v.empty()) {
      auto it = by_pivot.find(v.idx.front());
      if (it == by_pivot.end()) break;
      const std::uint32_t c = v.val.front();
      v = axpy<std::uint32_t>(1, v, c, vecs[it->second], mul, sub, is_zero);
      if (track) combo = axpy<std::uint32_t>(1, combo, c, combos[it->second], mul, sub, is_zero);
    }
    if (v.empty()) return false;
    const std::uint32_t inv = inv_mod(v.val.front(), p);
    for (auto& x : v.val) x = mul_mod(x, inv, p);
    if (track)
      for (auto& x : combo.val) x = mul_mod(x, inv, p);
    by_pivot.emplace(v.idx.front(), vecs.size());
    vecs.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivot_columns.push_back(column);
    return true;
  }
};

SVec<std::uint32_t> column_mod(const std::vector<std::pair<Index, mpq_class>>& entries, std::uint32_t p) {
  SVec<std::uint32_t> out;
  for (const auto& [r, c] : entries) {
    auto v = mpq_to_mod(c, p);
    if (!v) throw UsageError("prime " + std::to_string(p) + " divides a slice denominator");
    if (*v == 0) continue;
    out.idx.push_back(r);
    out.val.push_back(*v);
  }
  return out;
}

struct ModSolve {
  bool exhausted = false;
  bool member = false;
  std::size_t rank = 0;
  std::vector<Index> pivots;
  // Solution on the pivot columns, aligned with `pivots`.
  std::vector<std::uint32_t> x;
};

ModSolve solve_mod(const DegreeSlice& s, std::uint32_t p, bool track, const Deadline& deadline) {
  ModSolve out;
  ModEchelon ech{p, track, {}, {}, {}, {}};
  SVec<std::uint32_t> combo;
  for (std::size_t c = 0; c < s.columns.size(); ++c) {
    if ((c & 63) == 0 && deadline.expired()) {
      out.exhausted = true;
      return out;
    }
    ech.insert(column_mod(s.columns[c].entries, p), static_cast<Index>(c), combo);
  }
  out.rank = ech.vecs.size();
  out.pivots = ech.pivot_columns;
  const Index tcol = static_cast<Index>(s.columns.size());
  const bool independent = ech.insert(column_mod(s.target, p), tcol, combo);
  out.member = !independent;
  if (out.member && track) {
    // 0 == target + sum combo_k col_k, so x_k = -combo_k.
    std::unordered_map<Index, std::size_t> where;
    for (std::size_t k = 0; k < out.pivots.size(); ++k) where.emplace(out.pivots[k], k);
    out.x.assign(out.pivots.size(), 0);
    for (std::size_t k = 0; k < combo.size(); ++k)
      if (combo.idx[k] != tcol) out.x[where.at(combo.idx[k])] = sub_mod(0, combo.val[k], p);
  }
  return out;
}

// Fraction-free exact elimination over ZZ with rational combinations.
struct ExactSolve {
  bool exhausted = false;
  bool member = false;
  std::size_t rank = 0;
  // Coefficients on the original (rational) columns when member && track.
  std::map<Index, mpq_class> x;
};

SVec<mpz_class> integer_column(const std::vector<std::pair<Index, mpq_class>>& entries, mpq_class& scale) {
  mpz_class l = 1;
  for (const auto& e : entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  SVec<mpz_class> out;
  for (const auto& [r, c] : entries) {
    out.idx.push_back(r);
    out.val.push_back(c.get_num() * (l / c.get_den()));
  }
  scale = l;
  return out;
}

ExactSolve solve_exact(const DegreeSlice& s, bool track, const Deadline& deadline) {
  auto zmul = [](const mpz_class& a, const mpz_class& b) { return mpz_class(a * b); };
  auto zsub = [](const mpz_class& a, const mpz_class& b) { return mpz_class(a - b); };
  auto zzero = [](const mpz_class& a) { return a == 0; };
  auto qmul = [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); };
  auto qsub = [](const mpq_class& a, const mpq_class& b) { return mpq_class(a - b); };
  auto qzero = [](const mpq_class& a) { return a == 0; };

  ExactSolve out;
  std::unordered_map<Index, std::size_t> by_pivot;
  std::vector<SVec<mpz_class>> vecs;
  std::vector<SVec<mpq_class>> combos;
  const Index tcol = static_cast<Index>(s.columns.size());

  auto make_primitive = [](SVec<mpz_class>& v, SVec<mpq_class>& combo) {
    mpz_class g = 0;
    for (const auto& x : v.val) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& x : v.val) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (auto& x : combo.val) x /= g;
  };

  for (Index c = 0; c <= tcol; ++c) {
    if ((c & 31) == 0 && deadline.expired()) {
      out.exhausted = true;
      return out;
    }
    mpq_class scale;
    SVec<mpz_class> v = integer_column(c == tcol ? s.target : s.columns[c].entries, scale);
    SVec<mpq_class> combo;
    if (track) {
      combo.idx.push_back(c);
      combo.val.push_back(scale);
    }
    while (!v.empty()) {
      auto it = by_pivot.find(v.idx.front());
      if (it == by_pivot.end()) break;
      const auto& w = vecs[it->second];
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), w.val.front().get_mpz_t(), v.val.front().get_mpz_t());
      const mpz_class a = w.val.front() / g, b = v.val.front() / g;
      v = axpy<mpz_class>(a, v, b, w, zmul, zsub, zzero);
      if (track) combo = axpy<mpq_class>(mpq_class(a), combo, mpq_class(b), combos[it->second], qmul, qsub, qzero);
      make_primitive(v, combo);
    }
    if (c == tcol) {
      out.rank = vecs.size();
      out.member = v.empty();
      if (out.member && track) {
        // 0 == ct*target + sum combo_k col_k
        mpq_class ct;
        for (std::size_t k = 0; k < combo.size(); ++k)
          if (combo.idx[k] == tcol) ct = combo.val[k];
        for (std::size_t k = 0; k < combo.size(); ++k)
          if (combo.idx[k] != tcol) out.x[combo.idx[k]] = -combo.val[k] / ct;
      }
      return out;
    }
    if (v.empty()) continue;
    by_pivot.emplace(v.idx.front(), vecs.size());
    vecs.push_back(std::move(v));
    combos.push_back(std::move(combo));
  }
  return out;
}

std::vector<Poly> cofactors_from(const DegreeSlice& s, std::size_t gen_count,
                                 const std::vector<std::pair<Index, mpq_class>>& x) {
  std::vector<std::vector<Term>> terms(gen_count);
  for (const auto& [col, val] : x) {
    if (val == 0) continue;
    const auto& c = s.columns[col];
    terms[c.generator].push_back(Term{c.multiplier, val});
  }
  std::vector<Poly> out;
  for (auto& t : terms) out.push_back(Poly::from_terms(s.ring, Domain::rational(), std::move(t)));
  return out;
}

class PrimeSource {
 public:
  explicit PrimeSource(const std::vector<std::uint32_t>& given) : given_(given), rng_(0x5eed5eedULL) {}

  std::uint32_t get(std::size_t k) {
    while (drawn_.size() <= k) {
      if (drawn_.size() < given_.size()) {
        drawn_.push_back(given_[drawn_.size()]);
      } else {
        drawn_.push_back(random_primes(1, rng_, drawn_).front());
      }
    }
    return drawn_[k];
  }

 private:
  std::vector<std::uint32_t> given_;
  std::vector<std::uint32_t> drawn_;
  std::mt19937_64 rng_;
};

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t DegreeSlice::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.entries.size();
  return n;
}

DegreeSlice build_slice(const Poly& target, const std::vector<Poly>& generators, std::size_t max_nonzeros) {
  const RingPtr& ring = target.ring();
  for (const auto& g : generators)
    if (!same_ring(g.ring(), ring)) throw UsageError("slice generators live in a different ring");
  if (target.domain().is_prime()) throw UsageError("slices are built over QQ");

  DegreeSlice s;
  s.ring = ring;
  s.degree = target.is_zero() ? 0 : homogeneous_degree(target, "target");
  const unsigned nvars = static_cast<unsigned>(ring->m()) + 1;

  std::vector<unsigned> degs;
  std::size_t estimate = 0;
  for (const auto& g : generators) {
    if (g.is_zero()) {
      degs.push_back(0);
      s.block_sizes.push_back(0);
      continue;
    }
    const unsigned dg = homogeneous_degree(g, "generator");
    degs.push_back(dg);
    const std::size_t cols = dg <= s.degree ? binomial(s.degree - dg + nvars - 1, nvars - 1) : 0;
    s.block_sizes.push_back(cols);
    estimate += cols * g.terms().size();
  }
  if (estimate > max_nonzeros)
    throw SizeGuardExceeded("slice too large: " + std::to_string(estimate) + " nonzeros exceed the guard of " +
                            std::to_string(max_nonzeros));

  s.rows = main_monomials(*ring, s.degree);
  std::unordered_map<Monomial, Index, MonomialHash> row_of;
  row_of.reserve(s.rows.size() * 2);
  for (std::size_t r = 0; r < s.rows.size(); ++r) row_of.emplace(s.rows[r], static_cast<Index>(r));

  auto to_entries = [&](const Poly& p, const Monomial& mu) {
    std::vector<std::pair<Index, mpq_class>> e;
    e.reserve(p.terms().size());
    for (const auto& t : p.terms()) e.emplace_back(row_of.at(t.mono * mu), t.coeff);
    std::sort(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return e;
  };

  for (std::size_t l = 0; l < generators.size(); ++l) {
    if (s.block_sizes[l] == 0) continue;
    for (const auto& mu : main_monomials(*ring, s.degree - degs[l]))
      s.columns.push_back(SliceColumn{l, mu, to_entries(generators[l], mu)});
  }
  s.target = to_entries(target.to_domain(Domain::rational()), Monomial{});
  return s;
}

std::size_t rank_mod_p(const DegreeSlice& slice, std::uint32_t p) {
  ModEchelon ech{p, false, {}, {}, {}, {}};
  SVec<std::uint32_t> combo;
  for (std::size_t c = 0; c < slice.columns.size(); ++c)
    ech.insert(column_mod(slice.columns[c].entries, p), static_cast<Index>(c), combo);
  return ech.vecs.size();
}

MacaulayResult homogeneous_member(const Poly& f, const std::vector<Poly>& generators, const MacaulayOptions& options,
                                  unsigned kappa) {
  if (kappa == 0) throw UsageError("membership exponent must be >= 1");
  const Poly fq = f.to_domain(Domain::rational());
  const Poly target = fq.pow(kappa);
  const DegreeSlice s = build_slice(target, generators, options.max_nonzeros);

  MacaulayResult res;
  res.rows = s.rows.size();
  res.columns = s.columns.size();
  const bool track = options.want_certificate;

  auto finish_member = [&](const std::vector<std::pair<Index, mpq_class>>& x) -> bool {
    auto cert = make_certificate(fq, kappa, generators, cofactors_from(s, generators.size(), x));
    if (!cert.verified) return false;
    res.verdict = Verdict::Member;
    if (track) res.certificate = std::move(cert);
    return true;
  };

  auto run_exact = [&](bool with_track) -> bool {
    ExactSolve ex = solve_exact(s, with_track, options.deadline);
    if (ex.exhausted) return false;
    res.method = "exact";
    res.rank = ex.rank;
    if (!ex.member) {
      res.verdict = Verdict::NotMember;
      return true;
    }
    if (!with_track) {
      res.verdict = Verdict::Member;
      return true;
    }
    std::vector<std::pair<Index, mpq_class>> x(ex.x.begin(), ex.x.end());
    if (!finish_member(x)) throw Error("internal error: exact slice solution failed re-verification");
    return true;
  };

  if (target.is_zero()) {
    res.verdict = Verdict::Member;
    res.method = "exact";
    if (track) res.certificate = make_certificate(fq, kappa, generators, std::vector<Poly>(generators.size(), Poly(s.ring, Domain::rational())));
    return res;
  }

  if (s.columns.size() <= options.exact_column_limit) {
    if (run_exact(track)) return res;
    res.verdict = Verdict::Exhausted;
    res.note = "exact elimination ran out of budget";
    return res;
  }

  PrimeSource primes(options.primes);
  std::vector<Index> ref_pivots;
  std::vector<mpz_class> value;
  mpz_class modulus = 1;
  std::vector<std::optional<mpq_class>> last;
  std::size_t used = 0;

  for (std::size_t k = 0; k < options.max_primes; ++k) {
    const std::uint32_t p = primes.get(k);
    ModSolve ms;
    try {
      ms = solve_mod(s, p, true, options.deadline);
    } catch (const UsageError&) {
      continue;  // p divides a denominator
    }
    if (ms.exhausted) {
      res.verdict = Verdict::Exhausted;
      res.note = "modular elimination ran out of budget";
      return res;
    }
    res.method = "modular";
    if (!ms.member) {
      // Either a genuine non-member or an unlucky prime: settle it exactly.
      res.rank = ms.rank;
      if (run_exact(track)) return res;
      res.verdict = Verdict::NotMemberHeuristic;
      res.note = "nonzero residual modulo " + std::to_string(p) + "; exact confirmation ran out of budget";
      return res;
    }
    if (used == 0 || ms.rank > ref_pivots.size()) {
      ref_pivots = ms.pivots;
      value.assign(ms.pivots.size(), 0);
      modulus = 1;
      last.assign(ms.pivots.size(), std::nullopt);
      used = 0;
    } else if (ms.pivots != ref_pivots) {
      continue;  // rank dropped modulo p
    }
    res.rank = ms.rank;
    for (std::size_t q = 0; q < ms.x.size(); ++q) crt_accumulate(value[q], modulus, ms.x[q], p);
    modulus *= p;
    ++used;

    bool ok = true, stable = true;
    std::vector<std::pair<Index, mpq_class>> x;
    for (std::size_t q = 0; q < value.size() && ok; ++q) {
      auto r = rational_reconstruct(value[q], modulus);
      if (!r) {
        ok = false;
        break;
      }
      if (!last[q] || *last[q] != *r) stable = false;
      last[q] = *r;
      x.emplace_back(ref_pivots[q], *r);
    }
    if (ok && stable && finish_member(x)) {
      res.note = std::to_string(used) + " primes";
      return res;
    }
  }
  if (run_exact(track)) return res;
  res.verdict = Verdict::Exhausted;
  res.note = "rational reconstruction did not stabilize";
  return res;
}

HomogeneousKappaResult minimal_kappa_homogeneous(const Poly& f, const std::vector<Poly>& generators,
                                                 unsigned kappa_max, const MacaulayOptions& options) {
  if (kappa_max == 0) throw UsageError("kappa_max must be >= 1");
  HomogeneousKappaResult out;
  for (unsigned k = 1; k <= kappa_max; ++k) {
    MacaulayResult r;
    try {
      r = homogeneous_member(f, generators, options, k);
    } catch (const SizeGuardExceeded& e) {
      out.note = e.what();
      return out;
    }
    if (r.verdict == Verdict::Member) {
      out.verdict = KappaVerdict::Kappa;
      out.kappa = k;
      out.certificate = std::move(r.certificate);
      return out;
    }
    if (r.verdict != Verdict::NotMember) {
      out.note = "kappa=" + std::to_string(k) + ": " + to_string(r.verdict) + (r.note.empty() ? "" : " (" + r.note + ")");
      return out;
    }
    out.certified_failures.push_back(k);
  }
  out.note = "no exponent <= " + std::to_string(kappa_max) + " works";
  return out;
}

}  // namespace resconj
