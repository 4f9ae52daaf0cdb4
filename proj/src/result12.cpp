#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "resconj/runner.hpp"

namespace resconj {

using nlohmann::json;

const char* const kResult12C1 =
    "2*a0*a1*a2*a4 + a0*a1*a3*a4 - a0*a1*a4^2 + a0*a2^2*a3 + 2*a0*a2*a3^2 - 3*a0*a2*a3*a4 + a0*a3^3"
    " - 2*a0*a3^2*a4 + a0*a3*a4^2 - a1^2*a2*a4 - a1^2*a3*a4 - a1*a2^3 - a1*a2^2*a3 - a1*a2*a3^2 + a1*a2*a3*a4"
    " - a1*a3^3 + a1*a3^2*a4 + a2^3*a3 - a2*a3^3";
const char* const kResult12C2 =
    "a0^2*a4 - 2*a0*a1*a4 - 3*a0*a2*a4 + a0*a4^2 + a1^2*a4 + a1*a2^2 + a1*a2*a4 + a2^3";

namespace {

RingPtr lex_ring(int m) { return Ring::make(m, OrderKind::Lex); }

std::string show(const Poly& p, const RingPtr& lex) { return format(p.in_ring(lex)); }

Poly q(const Poly& p) { return p.to_domain(Domain::rational()); }

// "2*a0..." -> "-2*a0...": negates the leading term only.
std::string flip_first_sign(const std::string& text) { return "-" + text; }

}  // namespace

CheckReport verify_result12(std::optional<std::string> c1_text) {
  CheckReport rep;
  const DHFamily fam = build_family(4);
  const RingPtr& ring = fam.ring();
  const RingPtr lex = lex_ring(4);
  const Poly C1 = q(parse_poly(ring, c1_text.value_or(kResult12C1)));
  const Poly C2 = q(parse_poly(ring, kResult12C2));
  const Poly a3 = q(Poly::a(ring, 3));
  const Poly D0 = q(fam.D(0)), D1 = q(fam.D(1));
  const Poly H = q(fam.H(1, 2));
  const Poly H_literal = q(extract_H(h_generating_polynomial(ring), 4, Orientation::Literal)[1][2]);

  auto printed_holds = [&](const Poly& c1, const Poly& h) { return h.pow(2) == (c1 + a3 * C2) * D1 - C2 * D0; };
  auto flipped_holds = [&](const Poly& c1, const Poly& h) { return h.pow(2) == (c1 - a3 * C2) * D1 - C2 * D0; };

  {
    const bool ok = printed_holds(C1, H);
    std::string detail;
    if (!ok) {
      const Poly rhs = (C1 + a3 * C2) * D1 - C2 * D0;
      const Poly residual = H.pow(2) - rhs;
      const Poly literal_residual = H_literal.pow(2) - rhs;
      detail = "H12^2 - rhs has " + std::to_string(residual.terms().size()) + " terms";
      if (literal_residual.is_zero())
        detail += "; holds for the literal-orientation H12";
      else if (literal_residual == a3.scaled(-2) * C2 * D1)
        detail += "; for the literal-orientation H12 H12^2 - rhs is exactly -2*a3*C2*D(4,1)";
      else
        detail += "; also fails for the literal-orientation H12";
    }
    rep.add("(a) H12^2 == (C1 + a3*C2)*D(4,1) - C2*D(4,0)", ok, detail);
  }
  rep.add("(a) C1 has 20 terms", C1.terms().size() == 20, "found " + std::to_string(C1.terms().size()));
  rep.add("(a) C2 has 8 terms", C2.terms().size() == 8, "found " + std::to_string(C2.terms().size()));
  {
    const bool ok = flipped_holds(C1, H_literal);
    rep.add("(a*) literal H12^2 == (C1 - a3*C2)*D(4,1) - C2*D(4,0) [diagnostic]", ok,
            q(fam.H(1, 1)) == H_literal ? "literal-orientation H12 is the anchored H11" : "");
  }
  rep.add("(b) C2 does not contain a3", !C2.uses(ring->vars().a(3)));
  {
    const Poly spec = substitute(C1, {{ring->vars().a(3), Poly(ring, Domain::rational())}});
    rep.add("(c) C1 with a3 -> 0 has 4 terms", spec.terms().size() == 4,
            std::to_string(spec.terms().size()) + " terms: " + show(spec, lex));
  }
  {
    const IdealPresentation ideal({fam.D(0), fam.D(1)});
    MembershipResult m = is_member(fam.H(1, 2), ideal, {}, 2);
    const bool ok = m.verdict == Verdict::Member && m.certificate && verify_certificate(*m.certificate) &&
                    cofactors_have_forced_degrees(*m.certificate);
    rep.add("(d) engine derives and re-verifies a certificate for H12^2", ok,
            m.certificate ? "cofactor term counts " + std::to_string(m.certificate->cofactors[0].terms().size()) + ", " +
                                std::to_string(m.certificate->cofactors[1].terms().size())
                          : to_string(m.verdict));
  }
  if (!c1_text) {
    const Poly mutated = q(parse_poly(ring, flip_first_sign(kResult12C1)));
    const bool caught = !printed_holds(mutated, H) && !printed_holds(mutated, H_literal) &&
                        !flipped_holds(mutated, H_literal);
    rep.add("mutation: flipping the sign of one C1 term breaks both identities", caught);
  }
  return rep;
}

std::string certificate_to_json(const MembershipCertificate& cert, int m, int i, int j, Orientation orientation) {
  const RingPtr lex = lex_ring(m);
  json out;
  out["m"] = m;
  out["i"] = i;
  out["j"] = j;
  out["kappa"] = cert.kappa;
  out["target"] = show(cert.target, lex);
  out["generators"] = json::array();
  for (const auto& g : cert.generators) out["generators"].push_back(show(g, lex));
  out["cofactors"] = json::array();
  for (const auto& c : cert.cofactors) out["cofactors"].push_back(show(c, lex));
  out["orientation"] = to_string(orientation);
  out["verified"] = cert.verified;
  return out.dump(2);
}

CheckReport verify_certificate_file(const std::filesystem::path& path) {
  CheckReport rep;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open certificate " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), 0);
  }
  int m = 0, i = 0, jj = 0;
  unsigned kappa = 0;
  Orientation orientation;
  bool claimed = false;
  try {
    m = j.at("m").get<int>();
    i = j.at("i").get<int>();
    jj = j.at("j").get<int>();
    kappa = j.at("kappa").get<unsigned>();
    orientation = orientation_from_string(j.at("orientation").get<std::string>());
    claimed = j.at("verified").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate field missing or mistyped: ") + e.what(), 0);
  }
  if (m < 2 || m > kMaxM || i < 0 || i > m - 1 || jj < 0 || jj > m - i)
    throw UsageError("certificate indices out of range");

  const RingPtr ring = Ring::make(m);
  MembershipCertificate cert{parse_poly(ring, j.at("target").get<std::string>(), Domain::rational()), kappa, {}, {},
                             false};
  for (const auto& g : j.at("generators")) cert.generators.push_back(parse_poly(ring, g.get<std::string>(), Domain::rational()));
  for (const auto& c : j.at("cofactors")) cert.cofactors.push_back(parse_poly(ring, c.get<std::string>(), Domain::rational()));

  rep.add("file claims verified", claimed);
  rep.add("target^kappa == sum cofactor*generator", verify_certificate(cert),
          "kappa=" + std::to_string(kappa) + ", " + std::to_string(cert.generators.size()) + " generators");

  const std::vector<Poly> D = compute_D(ring);
  bool gens_ok = cert.generators.size() == static_cast<std::size_t>(i + 1);
  for (std::size_t l = 0; gens_ok && l < cert.generators.size(); ++l) gens_ok = cert.generators[l] == q(D[l]);
  rep.add("generators are D(m,0..i)", gens_ok);

  const auto H = extract_H(h_generating_polynomial(ring), m, orientation);
  rep.add("target is H_ij in the stated orientation", cert.target == q(H[i][jj]));
  rep.add("cofactor degrees are forced", cofactors_have_forced_degrees(cert));
  return rep;
}

std::string dump_json(int m) {
  if (m < 2 || m > 9) throw UsageError("m must lie in 2..9");
  const DHFamily fam = build_family(m);
  const RingPtr lex = lex_ring(m);
  auto matrix = [&](const SymMatrix& M) {
    json rows = json::array();
    for (std::size_t a = 1; a <= M.rows(); ++a) {
      json row = json::array();
      for (std::size_t b = 1; b <= M.cols(); ++b) row.push_back(show(M.at(a, b), lex));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json out;
  out["schema"] = 1;
  out["m"] = m;
  out["orientation"] = to_string(fam.orientation());
  out["M"] = matrix(build_M(fam.ring()));
  out["Mt"] = matrix(build_Mt(fam.ring()));
  out["D"] = json::array();
  for (int i = 0; i < m; ++i) {
    json d;
    d["i"] = i;
    d["poly"] = show(fam.D(i), lex);
    d["degree"] = m - 1 - i;
    out["D"].push_back(std::move(d));
  }
  out["H"] = json::array();
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m - i; ++j) {
      json h;
      h["i"] = i;
      h["j"] = j;
      h["poly"] = show(fam.H(i, j), lex);
      h["degree"] = m - i;
      const auto sign = check_symmetry(fam, i, j);
      h["symmetry_sign"] = sign ? json(*sign) : json(nullptr);
      out["H"].push_back(std::move(h));
    }
  return out.dump(2);
}

std::string dump_text(int m) {
  const json j = json::parse(dump_json(m));
  std::ostringstream os;
  os << "m = " << m << "  (t-orientation: " << j["orientation"].get<std::string>() << ")\n";
  for (const char* name : {"M", "Mt"}) {
    os << "\n" << name << ":\n";
    for (const auto& row : j[name]) {
      os << "  [";
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? ", " : "") << row[k].get<std::string>();
      os << "]\n";
    }
  }
  os << "\n";
  for (const auto& d : j["D"]) os << "D(" << m << "," << d["i"] << ") = " << d["poly"].get<std::string>() << "\n";
  os << "\n";
  for (const auto& h : j["H"]) {
    os << "H_" << h["i"] << h["j"] << " = " << h["poly"].get<std::string>();
    if (!h["symmetry_sign"].is_null()) os << "    [reversal sign " << (h["symmetry_sign"].get<int>() > 0 ? "+" : "-") << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace resconj
