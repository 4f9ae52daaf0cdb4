#include "resconj/ring.hpp"

#include <charconv>

namespace resconj {

VarTable::VarTable(int m) : m_(m) {
  if (m < 2 || m > kMaxM)
    throw UsageError("m must lie in [2, " + std::to_string(kMaxM) + "], got " +
                     std::to_string(m));
}

Var VarTable::a(int k) const {
  if (k < 0 || k > m_)
    throw UsageError("a" + std::to_string(k) + " is not a variable for m=" + std::to_string(m_));
  return Var{static_cast<std::uint8_t>(kAuxCount + k)};
}

std::string VarTable::name(Var v) const {
  switch (v.index) {
    case 0: return "y";
    case 1: return "t";
    case 2: return "T";
    case 3: return "U";
    default:
      if (!is_main(v)) throw UsageError("variable index out of range");
      return "a" + std::to_string(main_index(v));
  }
}

std::optional<Var> VarTable::lookup(std::string_view name) const {
  if (name == "y") return y();
  if (name == "t") return t();
  if (name == "T") return T();
  if (name == "U") return U();
  if (name.size() >= 2 && name[0] == 'a') {
    int k = 0;
    auto digits = name.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 0 && k <= m_)
      return a(k);
  }
  return std::nullopt;
}

void Monomial::set(Var v, unsigned e) {
  if (e > kMaxExponent) throw ExponentOverflow("exponent " + std::to_string(e) + " too large");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[v.index] + e);
  exps_[v.index] = static_cast<std::uint8_t>(e);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
    if (e > kMaxExponent) throw ExponentOverflow("exponent overflow in monomial product");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
  return r;
}

std::size_t Monomial::hash() const noexcept {
  // FNV-1a over the exponent bytes.
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<Var> priority)
    : kind_(kind), priority_(std::move(priority)) {
  std::array<bool, kMaxVars> seen{};
  for (Var v : priority_) {
    if (v.index >= kMaxVars || seen[v.index])
      throw UsageError("monomial order priority list must name distinct variables");
    seen[v.index] = true;
  }
}

MonomialOrder MonomialOrder::default_for(const VarTable& vars) {
  std::vector<Var> p;
  for (int i = 0; i < vars.size(); ++i) p.push_back(Var{static_cast<std::uint8_t>(i)});
  return MonomialOrder(OrderKind::GRevLex, std::move(p));
}

MonomialOrder MonomialOrder::lex_for(const VarTable& vars) {
  auto o = default_for(vars);
  return MonomialOrder(OrderKind::Lex, o.priority());
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  const auto n = priority_.size();
  if (kind_ != OrderKind::Lex) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  }
  if (kind_ == OrderKind::GRevLex) {
    for (std::size_t k = n; k-- > 0;) {
      const Var v = priority_[k];
      if (a[v] != b[v]) return b[v] <=> a[v];
    }
    return std::strong_ordering::equal;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Var v = priority_[k];
    if (a[v] != b[v]) return a[v] <=> b[v];
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const {
  std::string s;
  switch (kind_) {
    case OrderKind::GRevLex: s = "grevlex"; break;
    case OrderKind::GrLex: s = "grlex"; break;
    case OrderKind::Lex: s = "lex"; break;
  }
  s += '[';
  for (std::size_t k = 0; k < priority_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(priority_[k].index);
  }
  s += ']';
  return s;
}

Ring::Ring(VarTable vars, MonomialOrder order) : vars_(vars), order_(std::move(order)) {
  for (Var v : order_.priority())
    if (v.index >= vars_.size()) throw UsageError("monomial order names a variable outside the ring");
}

RingPtr Ring::make(int m) {
  VarTable vars(m);
  return std::make_shared<const Ring>(vars, MonomialOrder::default_for(vars));
}

RingPtr Ring::make(int m, OrderKind kind) {
  VarTable vars(m);
  auto base = MonomialOrder::default_for(vars);
  return std::make_shared<const Ring>(vars, MonomialOrder(kind, base.priority()));
}

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

}  // namespace resconj
