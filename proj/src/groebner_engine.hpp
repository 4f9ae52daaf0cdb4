#pragma once

// Resumable Buchberger completion shared by the QQ and GF(p) code paths.

#include <optional>
#include <set>
#include <vector>

#include "resconj/budget.hpp"
#include "resconj/groebner.hpp"
#include "sparse_poly.hpp"

namespace resconj::detail {

// GF(p): monic elements, rows over GF(p).
struct ModPolicy {
  using E = std::uint32_t;
  using R = std::uint32_t;
  using EOps = ModOps;
  using ROps = ModOps;

  ModOps ops;

  const EOps& eops() const { return ops; }
  const ROps& rops() const { return ops; }

  // a*lf - b*lg == 0
  void cancel(E lf, E lg, E& a, E& b) const {
    a = 1;
    b = ops.mul(lf, ops.inv(lg));
  }
  // Makes f monic; returns the factor applied.
  R normalize(SPoly<E>& f) const {
    const E s = ops.inv(f.lc());
    scale_in_place(ops, f, s);
    return s;
  }
  // Content removal during reduction; a no-op over a field.
  std::optional<R> shrink(SPoly<E>&) const { return std::nullopt; }
  R to_row(E x) const { return x; }
  R row_div(const R& x, const R& y) const { return ops.mul(x, ops.inv(y)); }
};

// QQ with integer-primitive elements; rows carry rational coefficients.
struct IntPolicy {
  using E = mpz_class;
  using R = mpq_class;
  using EOps = MpzOps;
  using ROps = MpqOps;

  MpzOps e;
  MpqOps r;

  const EOps& eops() const { return e; }
  const ROps& rops() const { return r; }

  void cancel(const E& lf, const E& lg, E& a, E& b) const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lf.get_mpz_t(), lg.get_mpz_t());
    a = lg / g;
    b = lf / g;
    if (a < 0) {
      a = -a;
      b = -b;
    }
  }
  R normalize(SPoly<E>& f) const {
    mpz_class c = content(f);
    if (f.lc() < 0) c = -c;
    if (c != 1)
      for (auto& x : f.cs) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return R(1) / R(c);
  }
  std::optional<R> shrink(SPoly<E>& f) const {
    mpz_class c = content(f);
    if (c == 1 || c == 0) return std::nullopt;
    for (auto& x : f.cs) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return R(1) / R(c);
  }
  R to_row(const E& x) const { return R(x); }
  R row_div(const R& x, const R& y) const { return x / y; }
};

template <class Policy>
using Row = std::vector<SPoly<typename Policy::R>>;

// Result of reducing f0: f0 == sum_k cof[k] * reducer_k + rem / sigma.
template <class Policy>
struct Reduced {
  SPoly<typename Policy::E> rem;
  typename Policy::R sigma;
  std::vector<std::vector<std::pair<Monomial, typename Policy::R>>> cof;
  std::size_t steps = 0;
};

template <class Policy>
struct Reducer {
  const SPoly<typename Policy::E>* poly;
  std::size_t id;  // position in the caller's list
};

template <class Policy>
Reduced<Policy> reduce_full(const Policy& pol, const MonomialOrder& order, SPoly<typename Policy::E> f,
                            const std::vector<Reducer<Policy>>& reducers, std::size_t id_count, bool track) {
  using E = typename Policy::E;
  const auto& rops = pol.rops();
  Reduced<Policy> out{{}, rops.one(), {}, 0};
  if (track) out.cof.resize(id_count);
  std::size_t pos = 0;
  E a, b;
  while (pos < f.size()) {
    const Monomial& m = f.mons[pos];
    const Reducer<Policy>* hit = nullptr;
    for (const auto& red : reducers) {
      const Monomial& lm = red.poly->lm();
      if (lm.degree() <= m.degree() && lm.divides(m)) {
        hit = &red;
        break;
      }
    }
    if (!hit) {
      ++pos;
      continue;
    }
    const Monomial mono = m / hit->poly->lm();
    pol.cancel(f.cs[pos], hit->poly->lc(), a, b);
    combine(pol.eops(), order, f, a, b, mono, *hit->poly);
    if (track) {
      out.sigma = rops.mul(out.sigma, pol.to_row(a));
      out.cof[hit->id].emplace_back(mono, pol.row_div(pol.to_row(b), out.sigma));
    } else {
      out.sigma = rops.mul(out.sigma, pol.to_row(a));
    }
    ++out.steps;
    if (out.steps % 16 == 0) {
      if (auto s = pol.shrink(f)) out.sigma = rops.mul(out.sigma, *s);
    }
  }
  if (auto s = pol.shrink(f)) out.sigma = rops.mul(out.sigma, *s);
  out.rem = std::move(f);
  return out;
}

template <class Policy>
SPoly<typename Policy::R> collect(const Policy& pol, const MonomialOrder& order,
                                  std::vector<std::pair<Monomial, typename Policy::R>> terms) {
  return from_unsorted(pol.rops(), order, std::move(terms));
}

template <class Policy>
class Engine {
 public:
  using E = typename Policy::E;
  using R = typename Policy::R;

  struct Element {
    SPoly<E> poly;
    unsigned sugar = 0;
    bool active = true;
    Row<Policy> row;
  };

  Engine(Policy pol, const MonomialOrder& order, std::size_t generator_count, bool track)
      : pol_(std::move(pol)), order_(order), ngens_(generator_count), track_(track),
        pairs_(PairCmp{&order_}) {}

  // `scale` is the factor s with poly == s * generator[index].
  void add_generator(SPoly<E> poly, std::size_t index, R scale) {
    if (poly.empty()) return;
    Element el;
    const R s = pol_.normalize(poly);
    el.sugar = max_degree(poly);
    if (track_) {
      el.row.resize(ngens_);
      SPoly<R> c;
      c.mons.push_back(Monomial{});
      c.cs.push_back(pol_.rops().mul(s, scale));
      el.row[index] = std::move(c);
    }
    el.poly = std::move(poly);
    insert(std::move(el));
  }

  // Processes pairs up to the degree bound. Returns the status reached.
  GbStatus run(std::optional<unsigned> bound, const Deadline& deadline, std::size_t max_elements) {
    Stopwatch watch;
    GbStatus status = GbStatus::Complete;
    while (!pairs_.empty() && !unit_) {
      auto it = pairs_.begin();
      if (bound && it->lcm.degree() > *bound) {
        status = GbStatus::Truncated;
        break;
      }
      if (deadline.expired() || elements_.size() >= max_elements) {
        status = GbStatus::Exhausted;
        break;
      }
      const Pair pr = *it;
      pairs_.erase(it);
      ++stats_.pairs_processed;
      process(pr);
    }
    stats_.seconds += watch.seconds();
    if (status == GbStatus::Complete && bound && !pairs_.empty() && !unit_) status = GbStatus::Truncated;
    return status;
  }

  bool has_unit() const { return unit_; }
  const std::vector<Element>& elements() const { return elements_; }
  const GroebnerStats& stats() const { return stats_; }
  const Policy& policy() const { return pol_; }
  const MonomialOrder& order() const { return order_; }
  bool tracking() const { return track_; }

  std::vector<Reducer<Policy>> active_reducers() const {
    std::vector<Reducer<Policy>> out;
    for (std::size_t k = 0; k < elements_.size(); ++k)
      if (elements_[k].active) out.push_back({&elements_[k].poly, k});
    return out;
  }

  // Reduces f; cofactors are expressed against the original generators when
  // tracking. Returns (remainder, sigma, generator cofactors) with
  // f == sum_l gcof[l]*gen_l + rem/sigma.
  struct GenReduction {
    SPoly<E> rem;
    R sigma;
    Row<Policy> gcof;
  };

  GenReduction reduce_against_generators(const SPoly<E>& f, bool want_cofactors) const {
    auto reducers = active_reducers();
    auto red = reduce_full(pol_, order_, f, reducers, elements_.size(), want_cofactors && track_);
    GenReduction out{std::move(red.rem), red.sigma, {}};
    if (want_cofactors && track_) {
      out.gcof.resize(ngens_);
      for (std::size_t k = 0; k < red.cof.size(); ++k) {
        if (red.cof[k].empty()) continue;
        const SPoly<R> q = collect(pol_, order_, std::move(red.cof[k]));
        for (std::size_t l = 0; l < ngens_; ++l) {
          if (elements_[k].row[l].empty()) continue;
          add_into(pol_.rops(), order_, out.gcof[l], multiply(pol_.rops(), order_, q, elements_[k].row[l]));
        }
      }
    }
    return out;
  }

  // Minimal, inter-reduced, normalized elements with their rows.
  std::vector<Element> reduced_basis() const {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (!elements_[k].active) continue;
      bool redundant = false;
      for (std::size_t q = 0; q < elements_.size() && !redundant; ++q) {
        if (q == k || !elements_[q].active) continue;
        const auto& lq = elements_[q].poly.lm();
        const auto& lk = elements_[k].poly.lm();
        if (lq.divides(lk) && (!(lq == lk) || q < k)) redundant = true;
      }
      if (!redundant) keep.push_back(k);
    }
    std::vector<Element> out;
    for (std::size_t k : keep) {
      std::vector<Reducer<Policy>> others;
      for (std::size_t q : keep)
        if (q != k) others.push_back({&elements_[q].poly, q});
      auto red = reduce_full(pol_, order_, elements_[k].poly, others, elements_.size(), track_);
      Element el;
      el.poly = std::move(red.rem);
      const R s = pol_.normalize(el.poly);
      el.sugar = elements_[k].sugar;
      if (track_) {
        // new = s*sigma*(old - sum_q cof_q * elem_q)
        const R factor = pol_.rops().mul(s, red.sigma);
        el.row = elements_[k].row;
        for (std::size_t q = 0; q < red.cof.size(); ++q) {
          if (red.cof[q].empty()) continue;
          SPoly<R> c = collect(pol_, order_, std::move(red.cof[q]));
          for (std::size_t l = 0; l < ngens_; ++l) {
            if (elements_[q].row[l].empty()) continue;
            auto prod = multiply(pol_.rops(), order_, c, elements_[q].row[l]);
            combine(pol_.rops(), order_, el.row[l], pol_.rops().one(), pol_.rops().one(), Monomial{}, prod);
          }
        }
        for (auto& r : el.row) scale_in_place(pol_.rops(), r, factor);
      }
      out.push_back(std::move(el));
    }
    std::sort(out.begin(), out.end(),
              [&](const Element& x, const Element& y) { return order_.greater(y.poly.lm(), x.poly.lm()); });
    return out;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };
  struct PairCmp {
    const MonomialOrder* order;
    bool operator()(const Pair& x, const Pair& y) const {
      if (x.sugar != y.sugar) return x.sugar < y.sugar;
      if (x.lcm.degree() != y.lcm.degree()) return x.lcm.degree() < y.lcm.degree();
      auto c = order->compare(x.lcm, y.lcm);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
      if (x.i != y.i) return x.i < y.i;
      return x.j < y.j;
    }
  };

  static unsigned max_degree(const SPoly<E>& f) {
    unsigned d = 0;
    for (const auto& m : f.mons) d = std::max(d, m.degree());
    return d;
  }

  void process(const Pair& pr) {
    const Element& gi = elements_[pr.i];
    const Element& gj = elements_[pr.j];
    const Monomial mi = pr.lcm / gi.poly.lm();
    const Monomial mj = pr.lcm / gj.poly.lm();
    E a, b;
    pol_.cancel(gi.poly.lc(), gj.poly.lc(), a, b);
    // S = a*mi*gi - b*mj*gj
    SPoly<E> s = scale_shift(pol_.eops(), gi.poly, a, mi);
    combine(pol_.eops(), order_, s, pol_.eops().one(), b, mj, gj.poly);
    auto reducers = active_reducers();
    auto red = reduce_full(pol_, order_, std::move(s), reducers, elements_.size(), track_);
    if (red.rem.empty()) {
      ++stats_.zero_reductions;
      return;
    }
    Element el;
    el.poly = std::move(red.rem);
    const R norm = pol_.normalize(el.poly);
    el.sugar = pr.sugar;
    if (track_) {
      // rem = sigma*(S - sum_k cof_k*g_k); element = norm*rem.
      const auto& rops = pol_.rops();
      el.row.resize(ngens_);
      for (std::size_t l = 0; l < ngens_; ++l) {
        el.row[l] = scale_shift(rops, gi.row[l], pol_.to_row(a), mi);
        combine(rops, order_, el.row[l], rops.one(), pol_.to_row(b), mj, gj.row[l]);
      }
      for (std::size_t k = 0; k < red.cof.size(); ++k) {
        if (red.cof[k].empty()) continue;
        SPoly<R> c = collect(pol_, order_, std::move(red.cof[k]));
        for (std::size_t l = 0; l < ngens_; ++l) {
          if (elements_[k].row[l].empty()) continue;
          auto prod = multiply(rops, order_, c, elements_[k].row[l]);
          combine(rops, order_, el.row[l], rops.one(), rops.one(), Monomial{}, prod);
        }
      }
      const R factor = rops.mul(norm, red.sigma);
      for (auto& r : el.row) scale_in_place(rops, r, factor);
    }
    insert(std::move(el));
  }

  // Gebauer-Moeller update.
  void insert(Element el) {
    const std::size_t h = elements_.size();
    const Monomial lh = el.poly.lm();
    const bool unit = lh.is_one();
    elements_.push_back(std::move(el));
    if (unit) {
      unit_ = true;
      pairs_.clear();
      for (std::size_t g = 0; g < h; ++g) elements_[g].active = false;
      return;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < h; ++g)
      if (elements_[g].active) candidates.push_back(g);

    std::vector<Monomial> lcms(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      lcms[c] = Monomial::lcm(elements_[candidates[c]].poly.lm(), lh);

    std::vector<bool> keep(candidates.size(), false);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Monomial& lg = elements_[candidates[c]].poly.lm();
      if (Monomial::coprime(lg, lh)) {
        keep[c] = true;
        continue;
      }
      bool dominated = false;
      for (std::size_t o = 0; o < candidates.size() && !dominated; ++o) {
        if (o == c) continue;
        // Remaining in C (o > c) or already accepted into D.
        if (o < c && !keep[o]) continue;
        if (lcms[o].divides(lcms[c]) && (!(lcms[o] == lcms[c]) || o < c)) dominated = true;
      }
      keep[c] = !dominated;
    }

    // Chain criterion on old pairs.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const Monomial& l = it->lcm;
      if (lh.divides(l)) {
        const Monomial l1 = Monomial::lcm(elements_[it->i].poly.lm(), lh);
        const Monomial l2 = Monomial::lcm(elements_[it->j].poly.lm(), lh);
        if (!(l1 == l) && !(l2 == l)) {
          it = pairs_.erase(it);
          ++stats_.pairs_discarded;
          continue;
        }
      }
      ++it;
    }

    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const std::size_t g = candidates[c];
      if (!keep[c] || Monomial::coprime(elements_[g].poly.lm(), lh)) {
        ++stats_.pairs_discarded;
        continue;
      }
      const unsigned sugar = std::max(elements_[g].sugar + (lcms[c].degree() - elements_[g].poly.lm().degree()),
                                      elements_[h].sugar + (lcms[c].degree() - lh.degree()));
      pairs_.insert(Pair{g, h, lcms[c], sugar});
    }

    for (std::size_t g = 0; g < h; ++g)
      if (elements_[g].active && lh.divides(elements_[g].poly.lm())) elements_[g].active = false;
  }

  Policy pol_;
  MonomialOrder order_;
  std::size_t ngens_;
  bool track_;
  std::vector<Element> elements_;
  std::set<Pair, PairCmp> pairs_;
  GroebnerStats stats_;
  bool unit_ = false;
};

}  // namespace resconj::detail
