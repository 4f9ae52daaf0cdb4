#include <random>
#include <vector>

#include "helpers.hpp"
#include "resconj/error.hpp"

using namespace resconj;
using rt::P;

namespace {

using Grid = std::vector<std::vector<const char*>>;

void expect_matrix(const SymMatrix& M, const Grid& want) {
  ASSERT_EQ(M.rows(), want.size());
  for (std::size_t a = 0; a < want.size(); ++a) {
    ASSERT_EQ(M.cols(), want[a].size());
    for (std::size_t b = 0; b < want[a].size(); ++b)
      EXPECT_EQ(M.at(a + 1, b + 1), P(M.ring(), want[a][b])) << "entry (" << a + 1 << "," << b + 1 << ")";
  }
}

// Cofactor expansion along the first row, kept local to the tests.
Poly laplace(const std::vector<std::vector<Poly>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly det(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][c] * laplace(minor, ring);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

std::vector<std::vector<Poly>> entries(const SymMatrix& M) {
  std::vector<std::vector<Poly>> out;
  for (std::size_t a = 1; a <= M.rows(); ++a) {
    std::vector<Poly> row;
    for (std::size_t b = 1; b <= M.cols(); ++b) row.push_back(M.at(a, b));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST(Matrix, BuildM4) {
  expect_matrix(build_M(Ring::make(4)), {{"a1", "a3", "0"}, {"a0", "a2", "a4"}, {"0", "a1", "a3"}});
}

TEST(Matrix, BuildM2) { expect_matrix(build_M(Ring::make(2)), {{"a1"}}); }

TEST(Matrix, BuildM5) {
  expect_matrix(build_M(Ring::make(5)),
                {{"a1", "a3", "a5", "0"}, {"a0", "a2", "a4", "0"}, {"0", "a1", "a3", "a5"}, {"0", "a0", "a2", "a4"}});
}

TEST(Matrix, BuildM6) {
  expect_matrix(build_M(Ring::make(6)), {{"a1", "a3", "a5", "0", "0"},
                                         {"a0", "a2", "a4", "a6", "0"},
                                         {"0", "a1", "a3", "a5", "0"},
                                         {"0", "a0", "a2", "a4", "a6"},
                                         {"0", "0", "a1", "a3", "a5"}});
}

TEST(Matrix, BuildM7) {
  expect_matrix(build_M(Ring::make(7)), {{"a1", "a3", "a5", "a7", "0", "0"},
                                         {"a0", "a2", "a4", "a6", "0", "0"},
                                         {"0", "a1", "a3", "a5", "a7", "0"},
                                         {"0", "a0", "a2", "a4", "a6", "0"},
                                         {"0", "0", "a1", "a3", "a5", "a7"},
                                         {"0", "0", "a0", "a2", "a4", "a6"}});
}

TEST(Matrix, BandedSupport) {
  for (int m = 2; m <= 9; ++m) {
    const SymMatrix M = build_M(Ring::make(m));
    for (std::size_t a = 1; a <= M.rows(); ++a)
      for (std::size_t b = 1; b <= M.cols(); ++b) {
        const int k = 2 * static_cast<int>(b) - static_cast<int>(a);
        EXPECT_EQ(M.at(a, b).is_zero(), k < 0 || k > m) << m << " (" << a << "," << b << ")";
      }
  }
}

TEST(Matrix, BuildMt4) {
  expect_matrix(build_Mt(Ring::make(4)), {{"a1*t - a0", "a3*t - a2", "-a4", "0"},
                                          {"a0*t", "a2*t - a1", "a4*t - a3", "0"},
                                          {"0", "a1*t - a0", "a3*t - a2", "-a4"},
                                          {"0", "a0*t", "a2*t - a1", "a4*t - a3"}});
}

TEST(Matrix, BuildMt2Entry) {
  auto r = Ring::make(2);
  EXPECT_EQ(build_Mt(r).at(2, 1), P(r, "a0*t"));
}

TEST(Matrix, OneBasedBounds) {
  const SymMatrix M = build_M(Ring::make(4));
  EXPECT_THROW(M.at(0, 1), UsageError);
  EXPECT_THROW(M.at(4, 1), UsageError);
  EXPECT_THROW(build_M(Ring::make(1)), Error);
}

TEST(Matrix, DetM4) {
  auto r = Ring::make(4);
  EXPECT_EQ(det_bareiss(build_M(r)), P(r, "-a0*a3^2 - a1^2*a4 + a1*a2*a3"));
  EXPECT_EQ(det_bareiss(build_M(Ring::make(2))), P(Ring::make(2), "a1"));
}

TEST(Matrix, BareissMatchesLaplace) {
  for (int m = 2; m <= 7; ++m) {
    const auto r = Ring::make(m);
    const SymMatrix M = build_M(r);
    const Poly d = det_bareiss(M);
    EXPECT_EQ(d, det_laplace(M)) << m;
    EXPECT_EQ(d, laplace(entries(M), r)) << m;
  }
  const auto r5 = Ring::make(5);
  EXPECT_EQ(det_bareiss(build_Mt(r5)), laplace(entries(build_Mt(r5)), r5));
}

TEST(Matrix, SpecializationCommutesWithDet) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int m : {6, 7, 8}) {
    const auto r = Ring::make(m);
    const SymMatrix M = build_M(r);
    const Poly d = det_bareiss(M);
    for (int trial = 0; trial < 5; ++trial) {
      std::map<Var, Poly> point;
      for (int k = 0; k <= m; ++k) point.emplace(r->vars().a(k), Poly::constant(r, pick(rng)));
      std::vector<std::vector<Poly>> e = entries(M);
      for (auto& row : e)
        for (auto& x : row) x = substitute(x, point);
      EXPECT_EQ(substitute(d, point), laplace(e, r)) << m;
    }
  }
}

TEST(Matrix, CharpolyM4) {
  auto r = Ring::make(4);
  const auto D = compute_D(r);
  const Poly U = Poly::variable(r, VarTable::U());
  EXPECT_EQ(charpoly_in(build_M(r), VarTable::U(), Pencil::MatrixMinusVar), D[0] + D[1] * U + D[2] * U.pow(2) - U.pow(3));
  EXPECT_EQ(charpoly_in(build_M(Ring::make(2)), VarTable::U(), Pencil::MatrixMinusVar), P(Ring::make(2), "a1 - U"));
}

TEST(Matrix, CharpolyDegreeAndLead) {
  for (int m = 2; m <= 7; ++m) {
    auto r = Ring::make(m);
    const Poly ch = charpoly_in(build_M(r), VarTable::U(), Pencil::MatrixMinusVar);
    EXPECT_EQ(ch.degree_in(VarTable::U()), static_cast<unsigned>(m - 1));
    EXPECT_EQ(coeff_of(ch, VarTable::U(), m - 1), Poly::constant(r, (m - 1) % 2 ? -1 : 1));
  }
}

TEST(Matrix, PencilAtTZeroIsOne) {
  for (int m = 2; m <= 6; ++m) {
    auto r = Ring::make(m);
    const Poly g = charpoly_in(build_Mt(r), VarTable::T(), Pencil::IdentityMinusVar);
    EXPECT_EQ(coeff_of(g, VarTable::T(), 0), P(r, "1")) << m;
  }
}
