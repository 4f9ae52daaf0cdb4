#pragma once

#include <gtest/gtest.h>

#include "resconj/coefficients.hpp"
#include "resconj/matrix.hpp"
#include "resconj/poly.hpp"

namespace resconj {

inline void PrintTo(const Poly& p, std::ostream* os) { *os << format(p) << " [" << p.domain().describe() << "]"; }

}  // namespace resconj

namespace rt {

inline resconj::Poly P(const resconj::RingPtr& ring, const char* text) { return resconj::parse_poly(ring, text); }

inline resconj::Poly Q(const resconj::Poly& p) { return p.to_domain(resconj::Domain::rational()); }

// Sum of a_lo..a_hi.
inline resconj::Poly a_sum(const resconj::RingPtr& ring, int lo, int hi) {
  resconj::Poly s(ring);
  for (int k = lo; k <= hi; ++k) s += resconj::Poly::a(ring, k);
  return s;
}

}  // namespace rt
