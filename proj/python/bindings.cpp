#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "resconj/error.hpp"
#include "resconj/macaulay.hpp"
#include "resconj/runner.hpp"
#include "resconj/selftest.hpp"

namespace py = pybind11;
using namespace resconj;

namespace {

Poly parse_in(int m, const std::string& text) { return parse_poly(Ring::make(m), text); }

std::string show(const Poly& p) { return format(p.in_ring(Ring::make(p.ring()->m(), OrderKind::Lex))); }

// Mixed integer/rational operands meet over QQ.
std::pair<Poly, Poly> common(const Poly& a, const Poly& b) {
  if (a.domain() == b.domain()) return {a, b};
  return {a.to_domain(Domain::rational()), b.to_domain(Domain::rational())};
}

std::vector<std::tuple<std::string, bool, std::string>> checks(const CheckReport& rep) {
  std::vector<std::tuple<std::string, bool, std::string>> out;
  for (const auto& c : rep.checks) out.emplace_back(c.name, c.passed, c.detail);
  return out;
}

py::dict membership(Verdict v, const std::optional<MembershipCertificate>& cert) {
  py::dict d;
  d["verdict"] = to_string(v);
  if (cert) {
    std::vector<Poly> cof = cert->cofactors;
    d["cofactors"] = cof;
    d["verified"] = cert->verified;
  } else {
    d["cofactors"] = py::none();
    d["verified"] = false;
  }
  return d;
}

RunConfig make_config(unsigned kappa_max, const std::string& engine, const std::vector<std::uint32_t>& primes,
                      bool heuristic, double budget, unsigned jobs, std::optional<std::string> certificate,
                      bool use_cache) {
  RunConfig cfg = config_from_env();
  cfg.kappa_max = kappa_max;
  cfg.engine = engine_from_string(engine);
  cfg.primes = primes;
  cfg.heuristic = heuristic;
  cfg.budget_seconds = budget;
  cfg.jobs = jobs;
  if (certificate) cfg.certificate_path = *certificate;
  if (!use_cache) cfg.cache_dir.reset();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_resconj, mod) {
  mod.doc() = "Minimal exponents for the coefficient ideals D(m, 0..i)";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(mod, "UsageError", PyExc_ValueError);
  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<InexactDivision>(mod, "InexactDivision", PyExc_ArithmeticError);

  py::class_<Poly>(mod, "Poly")
      .def(py::init(&parse_in), py::arg("m"), py::arg("text"))
      .def_property_readonly("m", [](const Poly& p) { return p.ring()->m(); })
      .def("is_zero", &Poly::is_zero)
      .def("__len__", &Poly::size)
      .def("degree", &Poly::total_degree)
      .def("homogeneous_degree",
           [](const Poly& p) -> std::optional<unsigned> { return is_homogeneous(p).degree; })
      .def("__pow__", [](const Poly& p, unsigned k) { return p.pow(k); })
      .def("__add__", [](const Poly& a, const Poly& b) { auto [x, y] = common(a, b); return x + y; })
      .def("__sub__", [](const Poly& a, const Poly& b) { auto [x, y] = common(a, b); return x - y; })
      .def("__mul__", [](const Poly& a, const Poly& b) { auto [x, y] = common(a, b); return x * y; })
      .def("__neg__", [](const Poly& a) { return -a; })
      .def("__eq__", [](const Poly& a, const Poly& b) {
        return a.to_domain(Domain::rational()) == b.to_domain(Domain::rational());
      })
      .def("substitute",
           [](const Poly& p, const std::map<std::string, Poly>& values) {
             std::map<Var, Poly> assign;
             for (const auto& [name, v] : values) {
               const auto var = p.ring()->vars().lookup(name);
               if (!var) throw UsageError("unknown variable " + name);
               assign.emplace(*var, v.to_domain(p.domain()));
             }
             return substitute(p, assign);
           })
      .def("__str__", &show)
      .def("__repr__", [](const Poly& p) { return "Poly(" + std::to_string(p.ring()->m()) + ", '" + show(p) + "')"; });

  mod.def(
      "exact_div", [](const Poly& f, const Poly& g) { auto [x, y] = common(f, g); return exact_div(x, y); },
      py::arg("f"), py::arg("g"));
  mod.def("compute_D", [](int m) { return build_family(m).generators(m - 1); }, py::arg("m"));
  mod.def(
      "compute_H",
      [](int m) {
        const DHFamily fam = build_family(m);
        std::map<std::pair<int, int>, Poly> out;
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= m - i; ++j) out.emplace(std::make_pair(i, j), fam.H(i, j));
        return out;
      },
      py::arg("m"));
  mod.def("dump_json", &dump_json, py::arg("m"));

  mod.def(
      "is_member",
      [](const Poly& f, const std::vector<Poly>& gens, unsigned kappa) {
        const auto r = is_member(f, IdealPresentation(gens), {}, kappa);
        return membership(r.verdict, r.certificate);
      },
      py::arg("f"), py::arg("generators"), py::arg("kappa") = 1);
  mod.def(
      "homogeneous_member",
      [](const Poly& f, const std::vector<Poly>& gens, unsigned kappa) {
        const auto r = homogeneous_member(f, gens, {}, kappa);
        py::dict d = membership(r.verdict, r.certificate);
        d["rows"] = r.rows;
        d["columns"] = r.columns;
        return d;
      },
      py::arg("f"), py::arg("generators"), py::arg("kappa") = 1);
  mod.def(
      "is_radical_member",
      [](const Poly& f, const std::vector<Poly>& gens) { return is_radical_member(f, IdealPresentation(gens)); },
      py::arg("f"), py::arg("generators"));

  mod.def(
      "kappa_json",
      [](int m, int i, std::optional<int> j, unsigned kappa_max, const std::string& engine,
         const std::vector<std::uint32_t>& primes, bool heuristic, double budget, unsigned jobs,
         std::optional<std::string> certificate, bool use_cache) {
        const RunConfig cfg = make_config(kappa_max, engine, primes, heuristic, budget, jobs, certificate, use_cache);
        py::gil_scoped_release release;
        return reports_to_json(run_kappa(m, i, j, cfg));
      },
      py::arg("m"), py::arg("i"), py::arg("j") = py::none(), py::arg("kappa_max") = kDefaultKappaMax,
      py::arg("engine") = "groebner", py::arg("primes") = std::vector<std::uint32_t>{}, py::arg("heuristic") = false,
      py::arg("budget") = 0.0, py::arg("jobs") = 0u, py::arg("certificate") = py::none(), py::arg("use_cache") = true);
  mod.def(
      "table_json",
      [](int lo, int hi, double budget, unsigned jobs, bool use_cache) {
        const RunConfig cfg = make_config(kDefaultKappaMax, "groebner", {}, false, budget, jobs, std::nullopt, use_cache);
        py::gil_scoped_release release;
        return run_table(lo, hi, cfg).json();
      },
      py::arg("m_lo"), py::arg("m_hi"), py::arg("budget") = 0.0, py::arg("jobs") = 0u, py::arg("use_cache") = true);

  mod.def("verify_result12", [] { return checks(verify_result12()); });
  mod.def(
      "verify_certificate", [](const std::filesystem::path& p) { return checks(verify_certificate_file(p)); },
      py::arg("path"));
  mod.def(
      "selftest",
      [](std::uint64_t seed) {
        SelftestOptions opt;
        opt.seed = seed;
        py::gil_scoped_release release;
        return run_selftest(opt);
      },
      py::arg("seed") = kDefaultSeed);
  py::class_<CheckReport>(mod, "CheckReport")
      .def("passed", &CheckReport::passed)
      .def_property_readonly("checks", [](const CheckReport& r) { return checks(r); })
      .def("__str__", &CheckReport::text);
}
