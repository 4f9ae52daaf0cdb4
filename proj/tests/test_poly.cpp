#include <random>

#include "helpers.hpp"
#include "resconj/error.hpp"
#include "resconj/runner.hpp"
#include "resconj/selftest.hpp"

using namespace resconj;
using rt::P;

namespace {

RingPtr R4() { return Ring::make(4); }

}  // namespace

TEST(Poly, DifferenceOfSquares) {
  auto r = R4();
  EXPECT_EQ((P(r, "a1 + a2") * P(r, "a1 - a2")), P(r, "a1^2 - a2^2"));
}

TEST(Poly, AdditiveIdentity) {
  auto r = R4();
  const Poly d0 = compute_D(r)[0];
  EXPECT_EQ(d0 + Poly(r), d0);
}

TEST(Poly, PowOfH12) {
  auto r = R4();
  const DHFamily fam = build_family(4);
  const Poly h = fam.H(1, 2);
  EXPECT_EQ(h.pow(2), h * h);
  EXPECT_EQ(h.pow(0), P(r, "1"));
  EXPECT_EQ(h.pow(1), h);
}

TEST(Poly, ExactDivision) {
  auto r = R4();
  EXPECT_EQ(exact_div(P(r, "a1^2 - a2^2"), P(r, "a1 - a2")), P(r, "a1 + a2"));
  const Poly f = P(r, "3*a0*a4 - a2^3");
  EXPECT_EQ(exact_div(f, P(r, "1")), f);
  EXPECT_EQ(exact_div(P(r, "6*a0*a1"), P(r, "2*a0")), P(r, "3*a1"));
}

TEST(Poly, InexactDivisionThrows) {
  auto r = R4();
  EXPECT_THROW(exact_div(P(r, "a1^2 + a2"), P(r, "a1")), InexactDivision);
  EXPECT_THROW(exact_div(P(r, "a1"), Poly(r)), Error);
}

TEST(Poly, CoeffOf) {
  auto r = R4();
  const Var U = VarTable::U();
  EXPECT_EQ(coeff_of(P(r, "a1 - U"), U, 1), P(r, "-1"));
  const Poly ch = charpoly_in(build_M(r), U, Pencil::MatrixMinusVar);
  EXPECT_EQ(coeff_of(ch, U, 2), P(r, "a1 + a2 + a3"));
  EXPECT_TRUE(coeff_of(ch, U, 4).is_zero());
}

TEST(Poly, CoeffOfReconstructs) {
  auto r = R4();
  const Poly f = P(r, "a0*t^2*T - 3*a1*t*U^2 + a4*T^3 + y*a2 - 7");
  for (Var v : {VarTable::y(), VarTable::t(), VarTable::T(), VarTable::U()}) {
    Poly sum(r);
    for (unsigned k = 0; k <= f.degree_in(v); ++k) sum += coeff_of(f, v, k) * Poly::variable(r, v).pow(k);
    EXPECT_EQ(sum, f);
  }
}

TEST(Poly, SubstituteStrikesA3) {
  auto r = R4();
  const Var a3 = r->vars().a(3);
  const Poly c1 = P(r, kResult12C1);
  const Poly c2 = P(r, kResult12C2);
  const Poly c1_0 = substitute(c1, {{a3, Poly(r)}});
  EXPECT_EQ(c1_0, P(r, "2*a0*a1*a2*a4 - a0*a1*a4^2 - a1^2*a2*a4 - a1*a2^3"));
  EXPECT_EQ(c1_0.size(), 4u);
  EXPECT_EQ(substitute(c2, {{a3, Poly(r)}}), c2);
}

TEST(Poly, SubstituteReversal) {
  auto r = R4();
  EXPECT_EQ(substitute(P(r, "a0"), reversal_assignment(r)), P(r, "a4"));
  const Poly f = P(r, "a0*a1^2 - 5*a3 + a2*a4");
  EXPECT_EQ(substitute(f, {}), f);
}

TEST(Poly, Homogeneity) {
  auto r = R4();
  const auto d0 = is_homogeneous(compute_D(r)[0]);
  ASSERT_TRUE(d0.degree);
  EXPECT_EQ(*d0.degree, 3u);
  EXPECT_FALSE(is_homogeneous(P(r, "a1 + a1*a2")).homogeneous());
  const auto z = is_homogeneous(Poly(r));
  EXPECT_TRUE(z.zero);
  EXPECT_FALSE(z.degree);
}

TEST(Poly, ParseFormat) {
  auto r = R4();
  EXPECT_EQ(P(r, "-a0*a3^2 - a1^2*a4 + a1*a2*a3"), compute_D(r)[0]);
  EXPECT_TRUE(P(r, "0").is_zero());
  const Poly c2 = P(r, kResult12C2);
  EXPECT_EQ(P(r, format(c2).c_str()), c2);
  EXPECT_EQ(format(P(r, format(c2).c_str())), format(c2));
  EXPECT_EQ(P(r, "2*a1 + a1 - 3*a1"), Poly(r));
  EXPECT_EQ(P(r, "1/2*a0 + 1/2*a0").to_domain(Domain::rational()), P(r, "a0").to_domain(Domain::rational()));
}

TEST(Poly, ParseErrorsCarryPosition) {
  auto r = R4();
  try {
    P(r, "a1 + * a2");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(P(r, "a9"), Error);
  EXPECT_THROW(P(r, "a1^"), ParseError);
}

TEST(Poly, ReduceModP) {
  auto r = R4();
  EXPECT_TRUE(reduce_mod_p(P(r, "3*a0"), 3).is_zero());
  EXPECT_EQ(reduce_mod_p(P(r, "-a0"), 5), P(r, "4*a0").to_domain(Domain::gf(5)));
  const std::uint32_t p = 2147483647u;
  const auto D = compute_D(r);
  EXPECT_EQ(reduce_mod_p(D[0], p) * reduce_mod_p(D[1], p), reduce_mod_p(D[0] * D[1], p));
}

TEST(Poly, MixedDomainsRejected) {
  auto r = R4();
  EXPECT_THROW(P(r, "a0") + reduce_mod_p(P(r, "a1"), 7), UsageError);
  EXPECT_THROW(P(r, "a0") + P(Ring::make(5), "a1"), UsageError);
}

TEST(PolyProperty, RingAxioms) {
  std::mt19937_64 rng(kDefaultSeed);
  auto r = R4();
  for (int trial = 0; trial < 10; ++trial) {
    const Poly f = random_poly(r, rng, 50, 4), g = random_poly(r, rng, 50, 4), h = random_poly(r, rng, 20, 3);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(PolyProperty, ExactDivRoundTrip) {
  std::mt19937_64 rng(kDefaultSeed + 1);
  auto r = R4();
  for (int trial = 0; trial < 10; ++trial) {
    const Poly f = random_poly(r, rng, 20, 4);
    Poly g = random_poly(r, rng, 8, 3);
    if (g.is_zero()) continue;
    EXPECT_EQ(exact_div(f * g, g), f);
  }
}

TEST(PolyProperty, ReversalIsInvolution) {
  for (int m = 2; m <= 7; ++m) {
    const DHFamily fam = build_family(m);
    const auto rev = reversal_assignment(fam.ring());
    for (int i = 0; i < m; ++i) EXPECT_EQ(substitute(substitute(fam.D(i), rev), rev), fam.D(i)) << m << " " << i;
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m - i; ++j)
        EXPECT_EQ(substitute(substitute(fam.H(i, j), rev), rev), fam.H(i, j)) << m << " " << i << " " << j;
  }
}
