#pragma once

// Normal forms against a fixed list of monic reducers. The working polynomial
// lives in a hash map keyed by monomial, with a max-heap of its monomials, so a
// reduction step touches only the reducer's terms.

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resconj/budget.hpp"
#include "sparse_poly.hpp"

namespace resconj::detail {

inline std::uint32_t support_mask(const Monomial& m) noexcept {
  std::uint32_t r = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (m.exp(i) != 0) r |= 1u << i;
  return r;
}

enum class HeapStop { Done, Irreducible, Deadline };

// f == sum_k cof[k] * reducer_k + rem, when stop == Done.
template <class Ops>
struct HeapReduced {
  HeapStop stop = HeapStop::Done;
  SPoly<typename Ops::T> rem;
  std::vector<std::vector<std::pair<Monomial, typename Ops::T>>> cof;
  std::size_t steps = 0;
};

// `monic` must have leading coefficient one. With stop_at_irreducible the
// reduction ends at the first term no reducer divides; against a Groebner basis
// that already shows f is not in the ideal.
template <class Ops>
HeapReduced<Ops> heap_reduce(const Ops& ops, const MonomialOrder& order, const SPoly<typename Ops::T>& f,
                             const std::vector<const SPoly<typename Ops::T>*>& monic, bool track,
                             bool stop_at_irreducible, const Deadline& deadline) {
  using T = typename Ops::T;
  HeapReduced<Ops> out;
  if (track) out.cof.resize(monic.size());
  std::vector<std::uint32_t> masks;
  masks.reserve(monic.size());
  for (const auto* g : monic) masks.push_back(support_mask(g->lm()));

  auto less = [&order](const Monomial& a, const Monomial& b) {
    return order.compare(a, b) == std::strong_ordering::less;
  };
  std::priority_queue<Monomial, std::vector<Monomial>, decltype(less)> heap(less);
  std::unordered_map<Monomial, T, MonomialHash> work;
  work.reserve(2 * f.size() + 16);
  for (std::size_t k = 0; k < f.size(); ++k) {
    work.emplace(f.mons[k], f.cs[k]);
    heap.push(f.mons[k]);
  }

  std::size_t pops = 0;
  while (!heap.empty()) {
    if ((++pops & 255) == 0 && deadline.expired()) {
      out.stop = HeapStop::Deadline;
      return out;
    }
    const Monomial m = heap.top();
    heap.pop();
    auto it = work.find(m);
    if (it == work.end()) continue;
    T c = std::move(it->second);
    work.erase(it);

    const std::uint32_t mask = support_mask(m);
    std::size_t hit = monic.size();
    for (std::size_t k = 0; k < monic.size(); ++k) {
      const Monomial& lm = monic[k]->lm();
      if ((masks[k] & ~mask) == 0 && lm.degree() <= m.degree() && lm.divides(m)) {
        hit = k;
        break;
      }
    }
    if (hit == monic.size()) {
      if (stop_at_irreducible) {
        out.stop = HeapStop::Irreducible;
        return out;
      }
      out.rem.mons.push_back(m);
      out.rem.cs.push_back(std::move(c));
      continue;
    }
    const SPoly<T>& g = *monic[hit];
    const Monomial mono = m / g.lm();
    for (std::size_t t = 1; t < g.size(); ++t) {
      const Monomial mm = g.mons[t] * mono;
      T v = ops.neg(ops.mul(c, g.cs[t]));
      auto [pos, inserted] = work.try_emplace(mm, v);
      if (inserted) {
        heap.push(mm);
      } else {
        pos->second = ops.add(pos->second, v);
        if (ops.is_zero(pos->second)) work.erase(pos);
      }
    }
    if (track) out.cof[hit].emplace_back(mono, std::move(c));
    ++out.steps;
  }
  return out;
}

}  // namespace resconj::detail
