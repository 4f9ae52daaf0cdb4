// Command-line front end: dump, kappa, table, verify-result12,
// verify-certificate, selftest.
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "resconj/runner.hpp"
#include "resconj/selftest.hpp"

namespace {

constexpr int kUsageExit = 2;
constexpr int kCheckFailedExit = 3;

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size() || v < 3 || v > 0xffffffffUL) throw resconj::UsageError("bad prime '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int m = std::stoi(text);
      return {m, m};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw resconj::UsageError("expected M or A..B, got '" + text + "'");
  }
}

int print_checks(const resconj::CheckReport& rep) {
  std::cout << rep.text();
  std::cout << (rep.passed() ? "all checks passed\n" : "some checks FAILED\n");
  return rep.passed() ? 0 : kCheckFailedExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal exponents of H_ij in the ideals <D(m,0..i)>"};
  app.require_subcommand(1);

  int m = 0, i = 0;
  std::optional<int> j;
  unsigned kappa_max = resconj::kDefaultKappaMax;
  std::string engine = "groebner", primes, certificate, range, cert_path;
  bool heuristic = false, as_json = false, no_cache = false;
  double budget = 0;
  unsigned jobs = 0;
  std::optional<std::uint64_t> seed;

  auto* dump = app.add_subcommand("dump", "Print the matrices, D(m,i) and the H triangle");
  dump->add_option("--m", m, "m in 2..9")->required();
  dump->add_flag("--json", as_json, "JSON output");

  auto* kappa = app.add_subcommand("kappa", "Minimal kappa for H_ij(m) in <D(m,0..i)>");
  kappa->add_option("--m", m)->required();
  kappa->add_option("--i", i)->required();
  kappa->add_option("--j", j, "omit for every j in 0..m-i");
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--kappa-max", kappa_max, "largest exponent tried")->capture_default_str();
    sub->add_option("--engine", engine, "groebner, macaulay or both")->capture_default_str();
    sub->add_option("--primes", primes, "comma-separated primes for the modular prefilter");
    sub->add_flag("--heuristic", heuristic, "accept modular evidence without exact confirmation");
    sub->add_option("--budget", budget, "seconds per (m,i) group; 0 = unbounded");
    sub->add_option("--jobs", jobs, "worker threads; 0 = hardware concurrency");
    sub->add_flag("--json", as_json, "JSON output");
    sub->add_flag("--no-cache", no_cache, "do not read or write the basis cache");
  };
  add_run_options(kappa);
  kappa->add_option("--certificate", certificate, "certificate file (.json, single j) or directory");

  auto* table = app.add_subcommand("table", "Table of minimal kappa over a range of m");
  table->add_option("--m", range, "A..B")->required();
  add_run_options(table);

  app.add_subcommand("verify-result12", "Check the m=4 identity and its remarks");

  auto* verify = app.add_subcommand("verify-certificate", "Re-check a certificate by plain arithmetic");
  verify->add_option("path", cert_path)->required();

  auto* selftest = app.add_subcommand("selftest", "Run the property suites");
  selftest->add_option("--seed", seed, "overrides RESCONJ_SEED");

  CLI11_PARSE(app, argc, argv);

  try {
    resconj::RunConfig cfg = resconj::config_from_env();
    cfg.kappa_max = kappa_max;
    cfg.engine = resconj::engine_from_string(engine);
    cfg.primes = parse_primes(primes);
    cfg.heuristic = heuristic;
    cfg.budget_seconds = budget;
    cfg.jobs = jobs;
    if (!certificate.empty()) cfg.certificate_path = certificate;
    if (no_cache) cfg.cache_dir.reset();

    if (dump->parsed()) {
      std::cout << (as_json ? resconj::dump_json(m) + "\n" : resconj::dump_text(m));
      return 0;
    }
    if (kappa->parsed()) {
      const auto reports = resconj::run_kappa(m, i, j, cfg);
      if (as_json) {
        std::cout << resconj::reports_to_json(reports) << "\n";
      } else {
        for (const auto& r : reports) std::cout << resconj::report_line(r) << "\n";
      }
      return resconj::exit_code(reports);
    }
    if (table->parsed()) {
      const auto [lo, hi] = parse_range(range);
      const auto result = resconj::run_table(lo, hi, cfg);
      std::cout << (as_json ? result.json() + "\n" : result.text());
      return result.exit_code();
    }
    if (app.got_subcommand("verify-result12")) return print_checks(resconj::verify_result12());
    if (verify->parsed()) return print_checks(resconj::verify_certificate_file(cert_path));
    if (selftest->parsed()) {
      resconj::SelftestOptions opt;
      opt.seed = seed.value_or(cfg.seed);
      return print_checks(resconj::run_selftest(opt));
    }
  } catch (const resconj::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  } catch (const resconj::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
