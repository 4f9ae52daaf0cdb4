#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resconj/matrix.hpp"

namespace resconj {

// Which t-exponent is stored as H_ij: the literal t^j, or the reflected t^{m-i-j}.
enum class Orientation { Literal, Reflected };

std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

// D(m,0..m-1) and the triangle H_ij (0 <= i <= m, 0 <= j <= m-i) for one m.
class DHFamily {
 public:
  DHFamily(RingPtr ring, std::vector<Poly> d, std::vector<std::vector<Poly>> h, Orientation orientation);

  int m() const noexcept { return ring_->m(); }
  const RingPtr& ring() const noexcept { return ring_; }
  Orientation orientation() const noexcept { return orientation_; }

  const Poly& D(int i) const;
  const Poly& H(int i, int j) const;
  const std::vector<Poly>& Ds() const noexcept { return d_; }
  // D(m,0), ..., D(m,i).
  std::vector<Poly> generators(int i) const;

  std::size_t h_count() const noexcept;

 private:
  RingPtr ring_;
  std::vector<Poly> d_;
  std::vector<std::vector<Poly>> h_;
  Orientation orientation_;
};

// Coefficients of U^i in det(M(m) - U I).
std::vector<Poly> compute_D(const RingPtr& ring);

// The full expansion det(I - Mt(m) T) in t and T.
Poly h_generating_polynomial(const RingPtr& ring);

// H_ij under the given orientation, taken from the expansion above.
std::vector<std::vector<Poly>> extract_H(const Poly& generating, int m, Orientation orientation);

// True when H_{m0} = 1, H_{m-1,0} = -(a1+...+am) and H_{m-1,1} = a0+...+a_{m-1}.
bool anchors_hold(const std::vector<std::vector<Poly>>& h, const RingPtr& ring);

// Picks the orientation satisfying all anchors; throws AnchorFailure if neither does.
std::vector<std::vector<Poly>> compute_H(const RingPtr& ring, Orientation* chosen = nullptr);

DHFamily build_family(int m);

// epsilon with reverse(H_ij) = epsilon * H_{i,m-i-j}, or nullopt if no sign works.
std::optional<int> check_symmetry(const DHFamily& family, int i, int j);

}  // namespace resconj
