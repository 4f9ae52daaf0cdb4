#pragma once

// Internal polynomial kernel for the Groebner engines: terms sorted descending,
// coefficients in whatever scalar type the arithmetic policy supplies.

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resconj/modular.hpp"
#include "resconj/poly.hpp"

namespace resconj::detail {

template <class C>
struct SPoly {
  std::vector<Monomial> mons;
  std::vector<C> cs;

  bool empty() const noexcept { return mons.empty(); }
  std::size_t size() const noexcept { return mons.size(); }
  const Monomial& lm() const { return mons.front(); }
  const C& lc() const { return cs.front(); }
  void clear() {
    mons.clear();
    cs.clear();
  }
};

struct ModOps {
  using T = std::uint32_t;
  std::uint32_t p;

  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  bool is_one(T a) const { return a == 1; }
  T add(T a, T b) const { return add_mod(a, b, p); }
  T sub(T a, T b) const { return sub_mod(a, b, p); }
  T mul(T a, T b) const { return mul_mod(a, b, p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const { return inv_mod(a, p); }
};

struct MpzOps {
  using T = mpz_class;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  bool is_one(const T& a) const { return a == 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
};

struct MpqOps {
  using T = mpq_class;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  bool is_one(const T& a) const { return a == 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
};

// f <- a*f - b*mono*g
template <class Ops>
void combine(const Ops& ops, const MonomialOrder& order, SPoly<typename Ops::T>& f,
             const typename Ops::T& a, const typename Ops::T& b, const Monomial& mono,
             const SPoly<typename Ops::T>& g) {
  using T = typename Ops::T;
  SPoly<T> out;
  out.mons.reserve(f.size() + g.size());
  out.cs.reserve(f.size() + g.size());
  const bool scale_f = !ops.is_one(a);
  std::size_t i = 0, j = 0;
  Monomial gm;
  bool have_gm = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have_gm) {
      gm = g.mons[j] * mono;
      have_gm = true;
    }
    std::strong_ordering c = std::strong_ordering::greater;
    if (i == f.size())
      c = std::strong_ordering::less;
    else if (j < g.size())
      c = order.compare(f.mons[i], gm);
    if (c == std::strong_ordering::greater) {
      out.mons.push_back(f.mons[i]);
      out.cs.push_back(scale_f ? ops.mul(a, f.cs[i]) : std::move(f.cs[i]));
      ++i;
    } else if (c == std::strong_ordering::less) {
      out.mons.push_back(gm);
      out.cs.push_back(ops.neg(ops.mul(b, g.cs[j])));
      ++j;
      have_gm = false;
    } else {
      T v = ops.sub(scale_f ? ops.mul(a, f.cs[i]) : f.cs[i], ops.mul(b, g.cs[j]));
      if (!ops.is_zero(v)) {
        out.mons.push_back(gm);
        out.cs.push_back(std::move(v));
      }
      ++i;
      ++j;
      have_gm = false;
    }
  }
  f = std::move(out);
}

// Scale by c and shift by mono; order is preserved.
template <class Ops>
SPoly<typename Ops::T> scale_shift(const Ops& ops, const SPoly<typename Ops::T>& f, const typename Ops::T& c,
                                   const Monomial& mono) {
  SPoly<typename Ops::T> out;
  if (ops.is_zero(c)) return out;
  out.mons.reserve(f.size());
  out.cs.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    out.mons.push_back(f.mons[k] * mono);
    out.cs.push_back(ops.mul(c, f.cs[k]));
  }
  return out;
}

template <class Ops>
SPoly<typename Ops::T> from_unsorted(const Ops& ops, const MonomialOrder& order,
                                     std::vector<std::pair<Monomial, typename Ops::T>> terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& x, const auto& y) { return order.greater(x.first, y.first); });
  SPoly<typename Ops::T> out;
  for (auto& [m, c] : terms) {
    if (!out.empty() && out.mons.back() == m) {
      out.cs.back() = ops.add(out.cs.back(), c);
    } else {
      if (!out.empty() && ops.is_zero(out.cs.back())) {
        out.mons.pop_back();
        out.cs.pop_back();
      }
      out.mons.push_back(m);
      out.cs.push_back(std::move(c));
    }
  }
  if (!out.empty() && ops.is_zero(out.cs.back())) {
    out.mons.pop_back();
    out.cs.pop_back();
  }
  return out;
}

template <class Ops>
SPoly<typename Ops::T> multiply(const Ops& ops, const MonomialOrder& order, const SPoly<typename Ops::T>& f,
                                const SPoly<typename Ops::T>& g) {
  using T = typename Ops::T;
  if (f.empty() || g.empty()) return {};
  if (g.size() == 1) return scale_shift(ops, f, g.cs[0], g.mons[0]);
  if (f.size() == 1) return scale_shift(ops, g, f.cs[0], f.mons[0]);
  std::unordered_map<Monomial, T, MonomialHash> acc;
  acc.reserve(f.size() * g.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      auto [it, inserted] = acc.try_emplace(f.mons[i] * g.mons[j], ops.zero());
      it->second = ops.add(it->second, ops.mul(f.cs[i], g.cs[j]));
    }
  std::vector<std::pair<Monomial, T>> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!ops.is_zero(c)) terms.emplace_back(m, std::move(c));
  return from_unsorted(ops, order, std::move(terms));
}

template <class Ops>
void add_into(const Ops& ops, const MonomialOrder& order, SPoly<typename Ops::T>& f,
              const SPoly<typename Ops::T>& g) {
  combine(ops, order, f, ops.one(), ops.neg(ops.one()), Monomial{}, g);
}

template <class Ops>
void scale_in_place(const Ops& ops, SPoly<typename Ops::T>& f, const typename Ops::T& c) {
  for (auto& x : f.cs) x = ops.mul(x, c);
}

inline mpz_class content(const SPoly<mpz_class>& f) {
  mpz_class g = 0;
  for (const auto& c : f.cs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

}  // namespace resconj::detail
