#pragma once

#include <cstddef>
#include <vector>

#include "resconj/poly.hpp"

namespace resconj {

// Dense matrix of polynomials over one ring. Indices in at() are 1-based to
// match the (alpha, beta) convention of the matrix formulas.
class SymMatrix {
 public:
  SymMatrix(RingPtr ring, std::size_t rows, std::size_t cols, Domain domain = Domain::integer());

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const RingPtr& ring() const noexcept { return ring_; }
  const Domain& domain() const noexcept { return domain_; }

  const Poly& at(std::size_t alpha, std::size_t beta) const;
  Poly& at(std::size_t alpha, std::size_t beta);

  // Applies fn to every entry.
  template <class Fn>
  SymMatrix map(Fn&& fn) const {
    SymMatrix out(ring_, rows_, cols_, domain_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = fn(entries_[k]);
    return out;
  }

  bool uses(Var v) const;

 private:
  RingPtr ring_;
  Domain domain_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> entries_;
};

// (m-1)x(m-1) matrix with entry (alpha, beta) = a_{2beta-alpha}.
SymMatrix build_M(const RingPtr& ring);

// m x m matrix with entry (alpha, beta) = a_{2beta-alpha} t - a_{2beta-alpha-1}.
SymMatrix build_Mt(const RingPtr& ring);

// Fraction-free one-step Bareiss elimination with row swaps on zero pivots.
Poly det_bareiss(const SymMatrix& m);

inline constexpr std::size_t kLaplaceMaxDim = 8;

// Cofactor expansion along rows, memoised over column subsets. Test oracle;
// refuses dimensions above kLaplaceMaxDim.
Poly det_laplace(const SymMatrix& m);

enum class Pencil {
  MatrixMinusVar,    // det(M - v I)
  IdentityMinusVar,  // det(I - M v)
};

Poly charpoly_in(const SymMatrix& m, Var v, Pencil convention);

}  // namespace resconj
