#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resconj/error.hpp"

namespace resconj {

inline constexpr int kMaxVars = 16;
inline constexpr int kAuxCount = 4;
inline constexpr int kMaxM = kMaxVars - kAuxCount - 1;
inline constexpr unsigned kMaxExponent = 255;

// Index of a variable inside a VarTable.
struct Var {
  std::uint8_t index = 0;
  friend constexpr bool operator==(Var, Var) = default;
  friend constexpr auto operator<=>(Var, Var) = default;
};

// Fixed indexing for one value of m: y, t, T, U come first, followed by the
// main variables a0..am.
class VarTable {
 public:
  explicit VarTable(int m);

  int m() const noexcept { return m_; }
  int size() const noexcept { return m_ + 1 + kAuxCount; }

  static constexpr Var y() { return Var{0}; }
  static constexpr Var t() { return Var{1}; }
  static constexpr Var T() { return Var{2}; }
  static constexpr Var U() { return Var{3}; }

  // Requires 0 <= k <= m.
  Var a(int k) const;
  bool is_main(Var v) const noexcept { return v.index >= kAuxCount && v.index < size(); }
  int main_index(Var v) const { return v.index - kAuxCount; }

  std::string name(Var v) const;
  std::optional<Var> lookup(std::string_view name) const;

  friend bool operator==(const VarTable&, const VarTable&) = default;

 private:
  int m_;
};

// Dense exponent vector over at most kMaxVars variables.
class Monomial {
 public:
  Monomial() = default;

  unsigned operator[](Var v) const noexcept { return exps_[v.index]; }
  unsigned exp(int index) const noexcept { return exps_[index]; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(Var v, unsigned e);

  static Monomial variable(Var v, unsigned e = 1) {
    Monomial r;
    r.set(v, e);
    return r;
  }

  // Checked product.
  friend Monomial operator*(const Monomial& a, const Monomial& b);

  bool divides(const Monomial& other) const noexcept {
    for (int i = 0; i < kMaxVars; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const noexcept {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] - divisor.exps_[i];
    r.degree_ = degree_ - divisor.degree_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exps_[i] = a.exps_[i] > b.exps_[i] ? a.exps_[i] : b.exps_[i];
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) noexcept {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  // Total degree restricted to variables with index >= first.
  unsigned degree_from(int first) const noexcept {
    unsigned d = 0;
    for (int i = first; i < kMaxVars; ++i) d += exps_[i];
    return d;
  }

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.exps_ == b.exps_;
  }

 private:
  std::array<std::uint8_t, kMaxVars> exps_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

enum class OrderKind { GRevLex, GrLex, Lex };

// A total, multiplicative monomial order. The priority list names variables
// from greatest to least; variables missing from it are never compared.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<Var> priority);

  // Degree-reverse-lexicographic with y > t > T > U > a0 > ... > am.
  static MonomialOrder default_for(const VarTable& vars);
  static MonomialOrder lex_for(const VarTable& vars);

  OrderKind kind() const noexcept { return kind_; }
  const std::vector<Var>& priority() const noexcept { return priority_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const noexcept;
  bool greater(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) == std::strong_ordering::greater;
  }

  std::string describe() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  std::vector<Var> priority_;
};

// Variables plus the active monomial order. Shared immutably by every Poly
// created in it.
class Ring {
 public:
  Ring(VarTable vars, MonomialOrder order);

  static std::shared_ptr<const Ring> make(int m);
  static std::shared_ptr<const Ring> make(int m, OrderKind kind);

  const VarTable& vars() const noexcept { return vars_; }
  const MonomialOrder& order() const noexcept { return order_; }
  int m() const noexcept { return vars_.m(); }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  VarTable vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept;

}  // namespace resconj
