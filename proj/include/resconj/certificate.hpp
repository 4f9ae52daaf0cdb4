#pragma once

#include <string>
#include <vector>

#include "resconj/poly.hpp"

namespace resconj {

// Witness that target^kappa lies in the ideal spanned by the generators:
// target^kappa == sum_l cofactors[l] * generators[l].
struct MembershipCertificate {
  Poly target;
  unsigned kappa = 1;
  std::vector<Poly> generators;
  std::vector<Poly> cofactors;
  bool verified = false;
};

// Re-checks the identity by plain multiplication and addition. Shares no code
// with the membership engines.
bool verify_certificate(const MembershipCertificate& cert);

// Builds a certificate over QQ. When target and generators are homogeneous in
// the main variables, each cofactor is projected onto its forced degree
// kappa*deg(target) - deg(generator). Sets `verified` from verify_certificate.
MembershipCertificate make_certificate(const Poly& target, unsigned kappa, const std::vector<Poly>& generators,
                                       std::vector<Poly> cofactors);

// True when every nonzero cofactor is homogeneous of its forced degree.
bool cofactors_have_forced_degrees(const MembershipCertificate& cert);

}  // namespace resconj
