#include <map>
#include <string>

#include "helpers.hpp"

using namespace resconj;
using rt::P;

namespace {

// H(4) by an independent expansion of det(I - Mt T), j read as m - i - (t-degree).
Poly h_oracle(const RingPtr& r, int i, int j) {
  const int m = r->m();
  SymMatrix A = build_Mt(r);
  const Poly T = Poly::variable(r, VarTable::T());
  for (std::size_t a = 1; a <= A.rows(); ++a)
    for (std::size_t b = 1; b <= A.cols(); ++b) A.at(a, b) = (a == b ? P(r, "1") : Poly(r)) - A.at(a, b) * T;
  const Poly g = det_laplace(A);
  return coeff_of(coeff_of(g, VarTable::T(), m - i), VarTable::t(), m - i - j);
}

}  // namespace

TEST(Coefficients, DOfM4) {
  auto r = Ring::make(4);
  const auto D = compute_D(r);
  ASSERT_EQ(D.size(), 4u);
  EXPECT_EQ(D[0], P(r, "-a0*a3^2 - a1^2*a4 + a1*a2*a3"));
  EXPECT_EQ(D[1], P(r, "a0*a3 - a1*a2 - a1*a3 + a1*a4 - a2*a3"));
  EXPECT_EQ(D[2], P(r, "a1 + a2 + a3"));
  EXPECT_EQ(D[3], P(r, "-1"));
}

TEST(Coefficients, DOfM2) {
  auto r = Ring::make(2);
  const auto D = compute_D(r);
  ASSERT_EQ(D.size(), 2u);
  EXPECT_EQ(D[0], P(r, "a1"));
  EXPECT_EQ(D[1], P(r, "-1"));
}

TEST(Coefficients, DAnchors) {
  for (int m = 4; m <= 6; ++m) {
    auto r = Ring::make(m);
    const auto D = compute_D(r);
    const Poly tr = rt::a_sum(r, 1, m - 1);
    EXPECT_EQ(D[m - 2], m % 2 == 0 ? tr : -tr) << m;
    EXPECT_EQ(D[m - 1], P(r, m % 2 ? "1" : "-1")) << m;
  }
}

TEST(Coefficients, HAnchors) {
  for (int m = 4; m <= 6; ++m) {
    const DHFamily fam = build_family(m);
    const auto& r = fam.ring();
    EXPECT_EQ(fam.orientation(), Orientation::Reflected);
    EXPECT_EQ(fam.H(m, 0), P(r, "1"));
    EXPECT_EQ(fam.H(m - 1, 0), -rt::a_sum(r, 1, m));
    EXPECT_EQ(fam.H(m - 1, 1), rt::a_sum(r, 0, m - 1));
    EXPECT_EQ(fam.h_count(), static_cast<std::size_t>((m + 1) * (m + 2) / 2));
  }
}

TEST(Coefficients, LiteralOrientationFailsAnchors) {
  auto r = Ring::make(4);
  const auto lit = extract_H(h_generating_polynomial(r), 4, Orientation::Literal);
  EXPECT_FALSE(anchors_hold(lit, r));
  const auto refl = extract_H(h_generating_polynomial(r), 4, Orientation::Reflected);
  EXPECT_TRUE(anchors_hold(refl, r));
}

TEST(Coefficients, HTableM4) {
  const DHFamily fam = build_family(4);
  const auto& r = fam.ring();
  const std::map<std::pair<int, int>, const char*> frozen = {
      {{0, 0}, "-a0*a3^2*a4 - a1^2*a4^2 + a1*a2*a3*a4"},
      {{0, 1}, "a0*a3^3 + a1^2*a3*a4 - a1*a2*a3^2"},
      {{0, 2}, "-a0*a2*a3^2 - a1^2*a2*a4 + a1*a2^2*a3"},
      {{0, 3}, "a0*a1*a3^2 + a1^3*a4 - a1^2*a2*a3"},
      {{0, 4}, "-a0^2*a3^2 - a0*a1^2*a4 + a0*a1*a2*a3"},
      {{1, 0}, "a0*a3^2 + a0*a3*a4 + a1^2*a4 - a1*a2*a3 - a1*a2*a4 - a1*a3*a4 + a1*a4^2 - a2*a3*a4"},
      {{1, 1}, "-a0*a1*a4 - a0*a2*a3 - a0*a3^2 + a0*a3*a4 + a1^2*a4 + a1*a2^2 + a1*a2*a3 + a1*a3^2 - a1*a3*a4 + a2*a3^2"},
      {{1, 2}, "a0*a1*a3 - a0*a1*a4 - a0*a3^2 + a0*a3*a4 - a1^2*a2 - a1^2*a3 + a1^2*a4 - a1*a2*a3 + a1*a2*a4 - a2^2*a3"},
      {{1, 3}, "-a0^2*a3 + a0*a1*a2 + a0*a1*a3 - a0*a1*a4 + a0*a2*a3 - a0*a3^2 - a1^2*a4 + a1*a2*a3"},
      {{2, 0}, "-a0*a3 + a1*a2 + a1*a3 + a2*a3 + a2*a4 + a3*a4"},
      {{2, 1}, "-a0*a3 - a1^2 - a1*a2 - a1*a3 - a1*a4 - a2^2 - a2*a3 - a3^2"},
      {{2, 2}, "a0*a1 + a0*a2 + a1*a2 + a1*a3 - a1*a4 + a2*a3"},
      {{3, 0}, "-a1 - a2 - a3 - a4"},
      {{3, 1}, "a0 + a1 + a2 + a3"},
      {{4, 0}, "1"},
  };
  ASSERT_EQ(frozen.size(), fam.h_count());
  for (const auto& [ij, text] : frozen) {
    const auto [i, j] = ij;
    EXPECT_EQ(fam.H(i, j), P(r, text)) << "H" << i << j;
    EXPECT_EQ(fam.H(i, j), h_oracle(r, i, j)) << "H" << i << j;
  }
}

TEST(Coefficients, Reconstruction) {
  for (int m = 2; m <= 6; ++m) {
    const DHFamily fam = build_family(m);
    const auto& r = fam.ring();
    const Poly U = Poly::variable(r, VarTable::U()), t = Poly::variable(r, VarTable::t()),
               T = Poly::variable(r, VarTable::T());
    Poly sum_d(r);
    for (int i = 0; i < m; ++i) sum_d += fam.D(i) * U.pow(i);
    EXPECT_EQ(sum_d, charpoly_in(build_M(r), VarTable::U(), Pencil::MatrixMinusVar)) << m;
    Poly sum_h(r);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m - i; ++j) sum_h += fam.H(i, j) * t.pow(m - i - j) * T.pow(m - i);
    EXPECT_EQ(sum_h, charpoly_in(build_Mt(r), VarTable::T(), Pencil::IdentityMinusVar)) << m;
  }
}

TEST(Coefficients, HomogeneityDegrees) {
  for (int m = 2; m <= 7; ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i < m; ++i) {
      const auto h = is_homogeneous(fam.D(i));
      ASSERT_TRUE(h.degree) << m << " D" << i;
      EXPECT_EQ(*h.degree, static_cast<unsigned>(m - 1 - i));
    }
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m - i; ++j) {
        const auto h = is_homogeneous(fam.H(i, j));
        if (h.zero) continue;
        ASSERT_TRUE(h.degree) << m << " H" << i << j;
        EXPECT_EQ(*h.degree, static_cast<unsigned>(m - i));
      }
  }
}

TEST(Coefficients, Symmetry) {
  const DHFamily fam4 = build_family(4);
  EXPECT_EQ(check_symmetry(fam4, 3, 0), std::optional<int>(-1));
  EXPECT_EQ(check_symmetry(fam4, 4, 0), std::optional<int>(1));
  for (int m = 2; m <= 6; ++m) {
    const DHFamily fam = build_family(m);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m - i; ++j) EXPECT_TRUE(check_symmetry(fam, i, j).has_value()) << m << i << j;
  }
}

TEST(Coefficients, OutOfRange) {
  const DHFamily fam = build_family(4);
  EXPECT_THROW(fam.D(4), Error);
  EXPECT_THROW(fam.H(2, 3), Error);
  EXPECT_THROW(build_family(1), Error);
}
