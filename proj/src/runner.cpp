#include "resconj/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "resconj/budget.hpp"
#include "resconj/cache.hpp"
#include "resconj/macaulay.hpp"
#include "resconj/modular.hpp"

namespace resconj {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w)
    workers.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < n;) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

Deadline deadline_for(const RunConfig& c) {
  return c.budget_seconds > 0 ? Deadline::after(c.budget_seconds) : Deadline::never();
}

// Shared state for one (m, i) group.
struct Group {
  const DHFamily& family;
  int i;
  const RunConfig& config;
  std::vector<std::uint32_t> primes;
  Deadline deadline;
  IdealPresentation ideal;
  std::optional<GroebnerBasis> basis;
  std::vector<GroebnerBasis> modular;
  std::size_t cache_hits = 0;
  std::string note;

  Group(const DHFamily& f, int i_, const RunConfig& c)
      : family(f), i(i_), config(c), primes(resolve_primes(c)), deadline(deadline_for(c)),
        ideal(f.generators(i_)) {}
};

void prepare_groebner(Group& g) {
  std::optional<BasisCache> cache;
  if (g.config.cache_dir) cache.emplace(*g.config.cache_dir);
  if (cache) {
    g.basis = cache->load(g.family.m(), g.i, g.ideal);
    g.cache_hits = cache->hits();
  }
  if (!g.basis) {
    GroebnerOptions opt;
    opt.track_cofactors = true;
    opt.deadline = g.deadline;
    GroebnerBasis b = buchberger(g.ideal, opt);
    if (b.status() == GbStatus::Complete) {
      if (cache) cache->store(g.family.m(), g.i, b);
      g.basis = std::move(b);
    } else {
      g.note = "rational basis " + to_string(b.status());
    }
  }
  for (std::uint32_t p : g.primes) {
    GroebnerOptions opt;
    opt.deadline = g.deadline;
    GroebnerBasis b = buchberger(IdealPresentation(g.family.generators(g.i), Domain::gf(p)), opt);
    if (b.status() == GbStatus::Complete) g.modular.push_back(std::move(b));
  }
}

std::optional<bool> radical_check(const Group& g, const Poly& f) {
  if (!g.config.check_radical) return std::nullopt;
  double budget = g.config.radical_budget_seconds;
  if (g.deadline.bounded()) budget = std::min(budget, std::max(0.0, g.deadline.remaining()));
  return is_radical_member(f, g.ideal, RadicalOptions{Deadline::after(budget), std::nullopt});
}

ConjectureReport groebner_cell(const Group& g, int j) {
  ConjectureReport r;
  r.engines = {"groebner"};
  const Poly& f = g.family.H(g.i, j);
  const unsigned kmax = g.config.kappa_max;

  if (!g.basis) {
    KappaOptions ko;
    ko.primes = g.primes;
    ko.heuristic = g.config.heuristic;
    ko.check_radical = false;
    ko.deadline = g.deadline;
    KappaResult k = minimal_kappa(f, g.ideal, kmax, ko);
    r.verdict = k.verdict;
    r.kappa = k.kappa;
    r.lower_bound = k.certified_nonmember_below;
    r.certificate = std::move(k.certificate);
    r.modular_evidence = k.verdict == KappaVerdict::HeuristicOnly;
    r.note = g.note + (k.note.empty() ? "" : "; " + k.note);
    return r;
  }

  // Smallest exponent passing every modular basis.
  std::optional<unsigned> candidate;
  if (!g.modular.empty()) {
    for (unsigned k = 1; k <= kmax && !candidate; ++k) {
      if (g.deadline.expired()) break;
      bool all = true;
      for (const auto& mb : g.modular) {
        const Verdict v = member_by_basis(f, mb, k, false, g.deadline).verdict;
        if (v == Verdict::Exhausted) {
          r.note = "budget exhausted";
          return r;
        }
        if (v != Verdict::Member) {
          all = false;
          break;
        }
      }
      if (all) candidate = k;
    }
    if (!candidate && g.deadline.expired()) {
      r.note = "budget exhausted";
      return r;
    }
    if (g.config.heuristic) {
      if (candidate) {
        r.verdict = KappaVerdict::HeuristicOnly;
        r.kappa = *candidate;
        r.modular_evidence = true;
      } else {
        r.verdict = KappaVerdict::Exhausted;
        r.note = "no exponent <= " + std::to_string(kmax) + " passes modulo the primes";
      }
      return r;
    }
  }

  unsigned k = candidate.value_or(g.modular.empty() ? 1 : kmax + 1);
  while (k <= kmax) {
    if (g.deadline.expired()) {
      r.note = "budget exhausted";
      return r;
    }
    MembershipResult m = member_by_basis(f, *g.basis, k, true, g.deadline);
    if (m.verdict == Verdict::Exhausted) {
      r.note = "budget exhausted";
      return r;
    }
    if (m.verdict != Verdict::Member) {
      r.lower_bound = k;
      ++k;
      continue;
    }
    std::optional<MembershipCertificate> cert = std::move(m.certificate);
    while (k > 1 && r.lower_bound < k - 1) {
      MembershipResult below = member_by_basis(f, *g.basis, k - 1, true, g.deadline);
      if (below.verdict == Verdict::Exhausted) {
        r.note = "member at kappa=" + std::to_string(k) + "; budget exhausted before kappa-1 was decided";
        return r;
      }
      if (below.verdict == Verdict::Member) {
        --k;
        cert = std::move(below.certificate);
      } else {
        r.lower_bound = k - 1;
      }
    }
    r.verdict = KappaVerdict::Kappa;
    r.kappa = k;
    r.certificate = std::move(cert);
    return r;
  }
  if (!candidate && !g.modular.empty() && !g.deadline.expired()) {
    // Every modular test failed up to kmax; confirm the top exponent exactly.
    if (member_by_basis(f, *g.basis, kmax, false, g.deadline).verdict == Verdict::NotMember) r.lower_bound = kmax;
  }
  r.verdict = KappaVerdict::Exhausted;
  r.note = "no exponent <= " + std::to_string(kmax) + " works";
  return r;
}

ConjectureReport macaulay_cell(const Group& g, int j) {
  ConjectureReport r;
  r.engines = {"macaulay"};
  const Poly& f = g.family.H(g.i, j);
  MacaulayOptions mo;
  mo.primes = g.primes;
  mo.deadline = g.deadline;
  HomogeneousKappaResult h = minimal_kappa_homogeneous(f, g.family.generators(g.i), g.config.kappa_max, mo);
  r.verdict = h.verdict;
  r.kappa = h.kappa;
  r.lower_bound = h.certified_failures.empty() ? 0 : h.certified_failures.back();
  r.certificate = std::move(h.certificate);
  r.note = h.note;
  return r;
}

ConjectureReport both_cell(const Group& g, int j) {
  ConjectureReport a = groebner_cell(g, j);
  ConjectureReport b = macaulay_cell(g, j);
  bool disagree = false;
  if (a.verdict == KappaVerdict::Kappa && b.verdict == KappaVerdict::Kappa && a.kappa != b.kappa) disagree = true;
  if (a.verdict == KappaVerdict::Kappa && b.lower_bound >= a.kappa) disagree = true;
  if (b.verdict == KappaVerdict::Kappa && a.lower_bound >= b.kappa) disagree = true;
  const unsigned lb = std::max(a.lower_bound, b.lower_bound);
  const std::string notes = a.note + (a.note.empty() || b.note.empty() ? "" : "; ") + b.note;
  ConjectureReport r = (a.verdict == KappaVerdict::Kappa || b.verdict != KappaVerdict::Kappa) ? std::move(a) : std::move(b);
  r.engines = {"groebner", "macaulay"};
  r.lower_bound = r.verdict == KappaVerdict::Kappa ? std::min(lb, r.kappa - 1) : lb;
  r.engines_disagree = disagree;
  r.note = disagree ? "ENGINES DISAGREE" + (notes.empty() ? "" : "; " + notes) : notes;
  return r;
}

fs::path certificate_target(const RunConfig& c, int m, int i, int j, bool single) {
  const std::string name = "cert-m" + std::to_string(m) + "-i" + std::to_string(i) + "-j" + std::to_string(j) + ".json";
  if (c.certificate_path) {
    if (single && c.certificate_path->extension() == ".json") return *c.certificate_path;
    return *c.certificate_path / name;
  }
  if (c.cache_dir) return *c.cache_dir / "certificates" / name;
  return {};
}

void write_atomically(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::random_device rd;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    out << text << "\n";
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<ConjectureReport> run_group(const DHFamily& family, int i, const std::vector<int>& js,
                                        const RunConfig& config, bool single) {
  Group g(family, i, config);
  Stopwatch prep;
  if (config.engine != EngineChoice::Macaulay) prepare_groebner(g);
  const double prep_seconds = prep.seconds();

  std::vector<ConjectureReport> out(js.size());
  parallel_for(js.size(), config.jobs, [&](std::size_t k) {
    Stopwatch sw;
    ConjectureReport r;
    switch (config.engine) {
      case EngineChoice::Groebner: r = groebner_cell(g, js[k]); break;
      case EngineChoice::Macaulay: r = macaulay_cell(g, js[k]); break;
      case EngineChoice::Both: r = both_cell(g, js[k]); break;
    }
    // A found exponent already places H in the radical.
    if (r.verdict == KappaVerdict::Kappa || r.verdict == KappaVerdict::HeuristicOnly) {
      r.radical = true;
    } else if (r.verdict == KappaVerdict::Exhausted) {
      r.radical = radical_check(g, family.H(i, js[k]));
      if (r.radical == false) r.verdict = KappaVerdict::NotInRadical;
    }
    r.m = family.m();
    r.i = i;
    r.j = js[k];
    r.seconds = sw.seconds() + prep_seconds;
    r.primes = g.primes;
    r.cache_hits = g.cache_hits;
    if (r.verdict == KappaVerdict::Kappa) {
      if (!r.certificate || !verify_certificate(*r.certificate))
        throw Error("internal error: kappa verdict without a verified certificate");
      const fs::path target = certificate_target(config, r.m, i, r.j, single);
      if (!target.empty()) {
        write_atomically(target, certificate_to_json(*r.certificate, r.m, i, r.j, family.orientation()));
        r.certificate_file = target.string();
      }
    }
    out[k] = std::move(r);
  });
  return out;
}

void check_m(int m) {
  if (m < 2 || m > 9) throw UsageError("m must lie in 2..9, got " + std::to_string(m));
}

}  // namespace

std::string to_string(EngineChoice e) {
  switch (e) {
    case EngineChoice::Groebner: return "groebner";
    case EngineChoice::Macaulay: return "macaulay";
    case EngineChoice::Both: return "both";
  }
  return "?";
}

EngineChoice engine_from_string(const std::string& s) {
  if (s == "groebner") return EngineChoice::Groebner;
  if (s == "macaulay") return EngineChoice::Macaulay;
  if (s == "both") return EngineChoice::Both;
  throw UsageError("unknown engine '" + s + "' (expected groebner, macaulay or both)");
}

RunConfig config_from_env() {
  RunConfig c;
  if (const char* dir = std::getenv("RESCONJ_CACHE_DIR"); dir && *dir) {
    c.cache_dir = fs::path(dir);
  } else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    c.cache_dir = fs::path(xdg) / "resconj";
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    c.cache_dir = fs::path(home) / ".cache" / "resconj";
  }
  if (const char* seed = std::getenv("RESCONJ_SEED"); seed && *seed) {
    try {
      c.seed = std::stoull(seed);
    } catch (const std::exception&) {
      throw UsageError(std::string("RESCONJ_SEED is not an unsigned integer: ") + seed);
    }
  }
  return c;
}

std::vector<std::uint32_t> resolve_primes(const RunConfig& config) {
  if (!config.primes.empty()) return config.primes;
  std::mt19937_64 rng(config.seed);
  return random_primes(3, rng);
}

std::vector<ConjectureReport> run_kappa(int m, int i, std::optional<int> j, const RunConfig& config) {
  check_m(m);
  if (i < 0 || i > m - 1) throw UsageError("i must lie in 0..m-1");
  if (j && (*j < 0 || *j > m - i)) throw UsageError("j must lie in 0..m-i");
  if (config.kappa_max == 0) throw UsageError("kappa-max must be >= 1");
  const DHFamily family = build_family(m);
  std::vector<int> js;
  if (j) {
    js.push_back(*j);
  } else {
    for (int q = 0; q <= m - i; ++q) js.push_back(q);
  }
  return run_group(family, i, js, config, js.size() == 1);
}

int exit_code(const std::vector<ConjectureReport>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    if (r.engines_disagree) return 1;
    if (r.verdict == KappaVerdict::Exhausted) code = 20;
    if (r.verdict == KappaVerdict::HeuristicOnly && code == 0) code = 10;
  }
  return code;
}

namespace {

json report_json(const ConjectureReport& r) {
  json j;
  j["schema"] = 1;
  j["m"] = r.m;
  j["i"] = r.i;
  j["j"] = r.j;
  j["engines"] = r.engines;
  j["verdict"] = to_string(r.verdict);
  j["kappa"] = r.kappa ? json(r.kappa) : json(nullptr);
  j["certified_not_member_up_to"] = r.lower_bound;
  j["modular_evidence"] = r.modular_evidence;
  j["radical"] = r.radical ? json(*r.radical) : json(nullptr);
  j["certificate"] = r.certificate_file.empty() ? json(nullptr) : json(r.certificate_file);
  j["certificate_verified"] = r.certificate ? r.certificate->verified : false;
  j["seconds"] = r.seconds;
  j["primes"] = r.primes;
  j["cache_hits"] = r.cache_hits;
  j["engines_disagree"] = r.engines_disagree;
  j["note"] = r.note;
  return j;
}

}  // namespace

std::string reports_to_json(const std::vector<ConjectureReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::string report_line(const ConjectureReport& r) {
  std::ostringstream os;
  os << "m=" << r.m << " i=" << r.i << " j=" << r.j << "  ";
  switch (r.verdict) {
    case KappaVerdict::Kappa:
      os << "kappa=" << r.kappa;
      if (r.kappa > 1) os << " (kappa-1 excluded exactly)";
      break;
    case KappaVerdict::HeuristicOnly: os << "kappa=" << r.kappa << " (modular evidence only)"; break;
    case KappaVerdict::NotInRadical: os << "not in radical"; break;
    case KappaVerdict::Exhausted: os << "open (>= " << r.lower_bound + 1 << ")"; break;
  }
  os << "  [";
  for (std::size_t k = 0; k < r.engines.size(); ++k) os << (k ? "+" : "") << r.engines[k];
  os << ", " << std::fixed << std::setprecision(2) << r.seconds << "s]";
  if (!r.note.empty()) os << "  " << r.note;
  return os.str();
}

std::string TableCell::status() const {
  if (kappa) return "certified";
  if (!interior_equal) return "varies with j";
  return "open (>= " + std::to_string(at_least) + ")";
}

TableResult run_table(int m_lo, int m_hi, const RunConfig& config) {
  if (m_lo > m_hi) throw UsageError("empty m range");
  check_m(m_lo);
  check_m(m_hi);
  TableResult out;
  for (int m = m_lo; m <= m_hi; ++m) {
    const DHFamily family = build_family(m);
    for (int i = 1; i <= m - 2; ++i) {
      std::vector<int> js;
      for (int j = 1; j <= m - i - 1; ++j) js.push_back(j);
      TableCell cell;
      cell.m = m;
      cell.i = i;
      cell.reports = run_group(family, i, js, config, false);
      bool all_certified = true;
      std::optional<unsigned> common;
      unsigned at_least = ~0u;
      for (const auto& r : cell.reports) {
        if (r.verdict == KappaVerdict::Kappa) {
          if (common && *common != r.kappa) cell.interior_equal = false;
          common = r.kappa;
          at_least = std::min(at_least, r.kappa);
        } else {
          all_certified = false;
          at_least = std::min(at_least, r.lower_bound + 1);
        }
      }
      cell.at_least = at_least == ~0u ? 1 : at_least;
      if (all_certified && cell.interior_equal) cell.kappa = common;
      if (!cell.interior_equal)
        out.counterexamples.push_back("m=" + std::to_string(m) + " i=" + std::to_string(i) +
                                      ": interior kappa depends on j");
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

std::string TableResult::text() const {
  std::ostringstream os;
  os << " m  i  kappa   status\n";
  for (const auto& c : cells) {
    std::string k = c.kappa ? std::to_string(*c.kappa) : "?";
    os << std::setw(2) << c.m << " " << std::setw(2) << c.i << "  " << std::left << std::setw(6) << k << std::right
       << "  " << c.status() << "\n";
  }
  for (const auto& ce : counterexamples) os << "COUNTEREXAMPLE: " << ce << "\n";
  return os.str();
}

std::string TableResult::json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["table"] = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json cell;
    cell["m"] = c.m;
    cell["i"] = c.i;
    cell["kappa"] = c.kappa ? nlohmann::json(*c.kappa) : nlohmann::json(nullptr);
    cell["at_least"] = c.at_least;
    cell["status"] = c.status();
    cell["interior_equal"] = c.interior_equal;
    cell["reports"] = nlohmann::json::array();
    for (const auto& r : c.reports) cell["reports"].push_back(report_json(r));
    j["table"].push_back(std::move(cell));
  }
  j["counterexamples"] = counterexamples;
  return j.dump(2);
}

int TableResult::exit_code() const {
  std::vector<ConjectureReport> all;
  for (const auto& c : cells) all.insert(all.end(), c.reports.begin(), c.reports.end());
  return resconj::exit_code(all);
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void CheckReport::add(std::string name, bool passed, std::string detail) {
  checks.push_back(CheckResult{std::move(name), passed, std::move(detail)});
}

std::string CheckReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace resconj
