#include "resconj/certificate.hpp"

namespace resconj {

namespace {

Poly as_rational(const Poly& p) {
  return p.domain().kind == Domain::Kind::Rational ? p : p.to_domain(Domain::rational());
}

}  // namespace

bool verify_certificate(const MembershipCertificate& cert) {
  if (cert.generators.size() != cert.cofactors.size() || cert.kappa == 0) return false;
  const Poly lhs = as_rational(cert.target).pow(cert.kappa);
  Poly rhs(cert.target.ring(), Domain::rational());
  for (std::size_t l = 0; l < cert.generators.size(); ++l)
    rhs += as_rational(cert.cofactors[l]) * as_rational(cert.generators[l]);
  return lhs == rhs;
}

MembershipCertificate make_certificate(const Poly& target, unsigned kappa, const std::vector<Poly>& generators,
                                       std::vector<Poly> cofactors) {
  MembershipCertificate cert{as_rational(target), kappa, {}, {}, false};
  for (const auto& g : generators) cert.generators.push_back(as_rational(g));
  for (auto& c : cofactors) cert.cofactors.push_back(as_rational(c));

  const auto ht = is_homogeneous(cert.target);
  bool homogeneous = ht.degree.has_value();
  for (const auto& g : cert.generators) homogeneous = homogeneous && is_homogeneous(g).degree.has_value();
  if (homogeneous) {
    const unsigned total = kappa * *ht.degree;
    for (std::size_t l = 0; l < cert.generators.size(); ++l) {
      const unsigned dg = *is_homogeneous(cert.generators[l]).degree;
      cert.cofactors[l] = dg <= total ? cert.cofactors[l].main_degree_part(total - dg)
                                      : Poly(cert.target.ring(), Domain::rational());
    }
  }
  cert.verified = verify_certificate(cert);
  return cert;
}

bool cofactors_have_forced_degrees(const MembershipCertificate& cert) {
  const auto ht = is_homogeneous(cert.target);
  if (!ht.degree) return false;
  for (std::size_t l = 0; l < cert.cofactors.size(); ++l) {
    const auto hg = is_homogeneous(cert.generators[l]);
    const auto hc = is_homogeneous(cert.cofactors[l]);
    if (hc.zero) continue;
    if (!hg.degree || !hc.degree) return false;
    if (*hc.degree + *hg.degree != cert.kappa * *ht.degree) return false;
  }
  return true;
}

}  // namespace resconj
