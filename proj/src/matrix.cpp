#include "resconj/matrix.hpp"

#include <unordered_map>
#include <utility>

namespace resconj {

SymMatrix::SymMatrix(RingPtr ring, std::size_t rows, std::size_t cols, Domain domain)
    : ring_(std::move(ring)), domain_(domain), rows_(rows), cols_(cols),
      entries_(rows * cols, Poly(ring_, domain)) {
  if (rows == 0 || cols == 0) throw UsageError("matrix dimensions must be positive");
}

const Poly& SymMatrix::at(std::size_t alpha, std::size_t beta) const {
  if (alpha < 1 || alpha > rows_ || beta < 1 || beta > cols_) throw UsageError("matrix index out of range");
  return entries_[(alpha - 1) * cols_ + (beta - 1)];
}

Poly& SymMatrix::at(std::size_t alpha, std::size_t beta) {
  return const_cast<Poly&>(std::as_const(*this).at(alpha, beta));
}

bool SymMatrix::uses(Var v) const {
  for (const auto& e : entries_)
    if (e.uses(v)) return true;
  return false;
}

SymMatrix build_M(const RingPtr& ring) {
  const int m = ring->m();
  const auto n = static_cast<std::size_t>(m - 1);
  SymMatrix out(ring, n, n);
  for (std::size_t alpha = 1; alpha <= n; ++alpha)
    for (std::size_t beta = 1; beta <= n; ++beta)
      out.at(alpha, beta) = Poly::a(ring, 2 * static_cast<int>(beta) - static_cast<int>(alpha));
  return out;
}

SymMatrix build_Mt(const RingPtr& ring) {
  const int m = ring->m();
  const auto n = static_cast<std::size_t>(m);
  const Poly t = Poly::variable(ring, VarTable::t());
  SymMatrix out(ring, n, n);
  for (std::size_t alpha = 1; alpha <= n; ++alpha)
    for (std::size_t beta = 1; beta <= n; ++beta) {
      const int k = 2 * static_cast<int>(beta) - static_cast<int>(alpha);
      out.at(alpha, beta) = Poly::a(ring, k) * t - Poly::a(ring, k - 1);
    }
  return out;
}

Poly det_bareiss(const SymMatrix& m) {
  if (!m.square()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Poly>> a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r].push_back(m.at(r + 1, c + 1));

  bool negate = false;
  Poly prev = Poly::constant(m.ring(), 1, m.domain());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return Poly(m.ring(), m.domain());
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = exact_div(num, prev);
      }
      a[i][k] = Poly(m.ring(), m.domain());
    }
    prev = a[k][k];
  }
  Poly det = a[n - 1][n - 1];
  return negate ? -det : det;
}

Poly det_laplace(const SymMatrix& m) {
  if (!m.square()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > kLaplaceMaxDim)
    throw SizeGuardExceeded("Laplace expansion limited to dimension " + std::to_string(kLaplaceMaxDim));
  // minors[mask] = det of the last popcount(mask) rows restricted to columns in mask.
  std::unordered_map<unsigned, Poly> minors;
  minors.emplace(0u, Poly::constant(m.ring(), 1, m.domain()));
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size + 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      Poly acc(m.ring(), m.domain());
      int sign = 1;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const Poly& entry = m.at(row, c + 1);
        if (!entry.is_zero()) {
          Poly term = entry * minors.at(mask & ~(1u << c));
          if (sign > 0)
            acc += term;
          else
            acc -= term;
        }
        sign = -sign;
      }
      minors.emplace(mask, std::move(acc));
    }
  }
  return minors.at((1u << n) - 1);
}

Poly charpoly_in(const SymMatrix& m, Var v, Pencil convention) {
  if (!m.square()) throw UsageError("characteristic polynomial of a non-square matrix");
  if (m.uses(v)) throw UsageError("pencil variable already occurs in the matrix");
  const Poly x = Poly::variable(m.ring(), v, m.domain());
  const Poly one = Poly::constant(m.ring(), 1, m.domain());
  SymMatrix pencil(m.ring(), m.rows(), m.cols(), m.domain());
  for (std::size_t r = 1; r <= m.rows(); ++r)
    for (std::size_t c = 1; c <= m.cols(); ++c) {
      if (convention == Pencil::MatrixMinusVar)
        pencil.at(r, c) = r == c ? m.at(r, c) - x : m.at(r, c);
      else
        pencil.at(r, c) = r == c ? one - m.at(r, c) * x : -(m.at(r, c) * x);
    }
  return det_bareiss(pencil);
}

}  // namespace resconj
