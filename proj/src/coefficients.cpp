#include "resconj/coefficients.hpp"

namespace resconj {

std::string to_string(Orientation o) { return o == Orientation::Literal ? "literal" : "reflected"; }

Orientation orientation_from_string(const std::string& s) {
  if (s == "literal") return Orientation::Literal;
  if (s == "reflected") return Orientation::Reflected;
  throw UsageError("unknown orientation '" + s + "'");
}

DHFamily::DHFamily(RingPtr ring, std::vector<Poly> d, std::vector<std::vector<Poly>> h,
                   Orientation orientation)
    : ring_(std::move(ring)), d_(std::move(d)), h_(std::move(h)), orientation_(orientation) {}

const Poly& DHFamily::D(int i) const {
  if (i < 0 || i >= m()) throw UsageError("D(m,i) needs 0 <= i <= m-1");
  return d_[static_cast<std::size_t>(i)];
}

const Poly& DHFamily::H(int i, int j) const {
  if (i < 0 || i > m() || j < 0 || j > m() - i) throw UsageError("H_ij needs 0 <= i <= m, 0 <= j <= m-i");
  return h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

std::vector<Poly> DHFamily::generators(int i) const {
  if (i < 0 || i >= m()) throw UsageError("generator cutoff i must satisfy 0 <= i <= m-1");
  return {d_.begin(), d_.begin() + i + 1};
}

std::size_t DHFamily::h_count() const noexcept {
  std::size_t n = 0;
  for (const auto& row : h_) n += row.size();
  return n;
}

std::vector<Poly> compute_D(const RingPtr& ring) {
  const Poly ch = charpoly_in(build_M(ring), VarTable::U(), Pencil::MatrixMinusVar);
  std::vector<Poly> d;
  for (int i = 0; i < ring->m(); ++i) d.push_back(coeff_of(ch, VarTable::U(), static_cast<unsigned>(i)));
  return d;
}

Poly h_generating_polynomial(const RingPtr& ring) {
  return charpoly_in(build_Mt(ring), VarTable::T(), Pencil::IdentityMinusVar);
}

std::vector<std::vector<Poly>> extract_H(const Poly& generating, int m, Orientation orientation) {
  std::vector<std::vector<Poly>> h(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    const Poly by_T = coeff_of(generating, VarTable::T(), static_cast<unsigned>(m - i));
    for (int j = 0; j <= m - i; ++j) {
      const int texp = orientation == Orientation::Literal ? j : m - i - j;
      h[static_cast<std::size_t>(i)].push_back(coeff_of(by_T, VarTable::t(), static_cast<unsigned>(texp)));
    }
  }
  return h;
}

bool anchors_hold(const std::vector<std::vector<Poly>>& h, const RingPtr& ring) {
  const int m = ring->m();
  Poly lower(ring), upper(ring);
  for (int k = 1; k <= m; ++k) lower -= Poly::a(ring, k);
  for (int k = 0; k <= m - 1; ++k) upper += Poly::a(ring, k);
  const auto& top = h[static_cast<std::size_t>(m)];
  const auto& next = h[static_cast<std::size_t>(m - 1)];
  return top[0] == Poly::constant(ring, 1) && next[0] == lower && next[1] == upper;
}

std::vector<std::vector<Poly>> compute_H(const RingPtr& ring, Orientation* chosen) {
  const Poly gen = h_generating_polynomial(ring);
  const int m = ring->m();
  for (Orientation o : {Orientation::Literal, Orientation::Reflected}) {
    auto h = extract_H(gen, m, o);
    if (anchors_hold(h, ring)) {
      if (chosen) *chosen = o;
      return h;
    }
  }
  throw AnchorFailure("no t-orientation of det(I - Mt*T) satisfies the H anchors for m=" + std::to_string(m));
}

DHFamily build_family(int m) {
  auto ring = Ring::make(m);
  Orientation o{};
  auto h = compute_H(ring, &o);
  return DHFamily(ring, compute_D(ring), std::move(h), o);
}

std::optional<int> check_symmetry(const DHFamily& family, int i, int j) {
  const Poly image = substitute(family.H(i, j), reversal_assignment(family.ring()));
  const Poly& partner = family.H(i, family.m() - i - j);
  if (image == partner) return 1;
  if (image == -partner) return -1;
  return std::nullopt;
}

}  // namespace resconj
