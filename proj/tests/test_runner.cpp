#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "resconj/cache.hpp"
#include "resconj/error.hpp"
#include "resconj/runner.hpp"

using namespace resconj;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("resconj-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig config_in(const fs::path& dir) {
  RunConfig cfg;
  cfg.cache_dir = dir / "cache";
  cfg.certificate_path = dir / "certs";
  cfg.jobs = 2;
  return cfg;
}

}  // namespace

TEST(Cache, Sha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, RoundTripAndCorruption) {
  const fs::path dir = fresh_dir("cache");
  BasisCache cache(dir);
  const DHFamily fam = build_family(4);
  const IdealPresentation ideal(fam.generators(1));
  EXPECT_FALSE(cache.load(4, 1, ideal));
  EXPECT_EQ(cache.misses(), 1u);

  GroebnerOptions opt;
  opt.track_cofactors = true;
  const auto gb = buchberger(ideal, opt);
  cache.store(4, 1, gb);
  const auto back = cache.load(4, 1, ideal);
  ASSERT_TRUE(back);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(back->elements(), gb.elements());
  EXPECT_TRUE(basis_is_sound(*back, ideal));

  const fs::path file = cache.path_for(BasisCache::key(4, 1, fam.ring()->order(), Domain::rational()));
  ASSERT_TRUE(fs::exists(file));
  nlohmann::json j = nlohmann::json::parse(std::ifstream(file));
  j["elements"][0] = "a0";
  std::ofstream(file) << j.dump();
  EXPECT_FALSE(cache.load(4, 1, ideal));
  EXPECT_EQ(cache.rejected(), 1u);
  EXPECT_FALSE(fs::exists(file));

  std::ofstream(file) << "not json";
  EXPECT_FALSE(cache.load(4, 1, ideal));
  EXPECT_EQ(cache.rejected(), 2u);
  fs::remove_all(dir);
}

TEST(Cache, KeysDiffer) {
  const auto r = Ring::make(4);
  const auto k1 = BasisCache::key(4, 1, r->order(), Domain::rational());
  EXPECT_NE(k1, BasisCache::key(4, 2, r->order(), Domain::rational()));
  EXPECT_NE(k1, BasisCache::key(4, 1, r->order(), Domain::gf(7)));
  EXPECT_NE(k1, BasisCache::key(4, 1, Ring::make(4, OrderKind::Lex)->order(), Domain::rational()));
}

TEST(Runner, KappaM4I1) {
  const fs::path dir = fresh_dir("kappa");
  const RunConfig cfg = config_in(dir);
  const auto reports = run_kappa(4, 1, std::nullopt, cfg);
  ASSERT_EQ(reports.size(), 4u);
  const unsigned want[] = {1, 2, 2, 1};
  for (const auto& r : reports) {
    EXPECT_EQ(r.verdict, KappaVerdict::Kappa);
    EXPECT_EQ(r.kappa, want[r.j]) << r.j;
    ASSERT_FALSE(r.certificate_file.empty());
    EXPECT_TRUE(verify_certificate_file(r.certificate_file).passed()) << r.certificate_file;
  }
  EXPECT_EQ(reports[1].lower_bound, 1u);
  EXPECT_EQ(exit_code(reports), 0);

  const auto again = run_kappa(4, 1, std::nullopt, cfg);
  EXPECT_GT(again[0].cache_hits, 0u);
  for (std::size_t k = 0; k < again.size(); ++k) EXPECT_EQ(again[k].kappa, reports[k].kappa);

  RunConfig no_cache = cfg;
  no_cache.cache_dir.reset();
  const auto cold = run_kappa(4, 1, std::nullopt, no_cache);
  for (std::size_t k = 0; k < cold.size(); ++k) EXPECT_EQ(cold[k].kappa, reports[k].kappa);
  fs::remove_all(dir);
}

TEST(Runner, BothEnginesAndUnitIdeal) {
  const fs::path dir = fresh_dir("both");
  RunConfig cfg = config_in(dir);
  cfg.engine = EngineChoice::Both;
  const auto reports = run_kappa(5, 2, 1, cfg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].kappa, 3u);
  EXPECT_FALSE(reports[0].engines_disagree);
  EXPECT_EQ(reports[0].engines.size(), 2u);

  cfg.engine = EngineChoice::Groebner;
  for (const auto& r : run_kappa(4, 3, std::nullopt, cfg)) EXPECT_EQ(r.kappa, 1u);
  fs::remove_all(dir);
}

TEST(Runner, HeuristicMode) {
  const fs::path dir = fresh_dir("heur");
  RunConfig cfg = config_in(dir);
  cfg.heuristic = true;
  const auto reports = run_kappa(4, 1, 1, cfg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].verdict, KappaVerdict::HeuristicOnly);
  EXPECT_EQ(reports[0].kappa, 2u);
  EXPECT_EQ(exit_code(reports), 10);
  fs::remove_all(dir);
}

TEST(Runner, ReportJson) {
  const fs::path dir = fresh_dir("json");
  const auto reports = run_kappa(3, 1, std::nullopt, config_in(dir));
  const auto j = nlohmann::json::parse(reports_to_json(reports));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["schema"], 1);
  EXPECT_EQ(j[1]["verdict"], "kappa");
  fs::remove_all(dir);
}

TEST(Runner, Table) {
  const fs::path dir = fresh_dir("table");
  const auto t = run_table(4, 5, config_in(dir));
  ASSERT_EQ(t.cells.size(), 5u);
  const std::pair<int, unsigned> want[] = {{1, 2}, {2, 1}, {1, 2}, {2, 3}, {3, 1}};
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    ASSERT_TRUE(t.cells[k].kappa) << k;
    EXPECT_EQ(t.cells[k].i, want[k].first);
    EXPECT_EQ(*t.cells[k].kappa, want[k].second);
  }
  EXPECT_TRUE(t.counterexamples.empty());
  EXPECT_EQ(t.exit_code(), 0);
  EXPECT_NE(t.text().find(" 5  2  3"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Runner, OpenCellUnderBudget) {
  const fs::path dir = fresh_dir("open");
  RunConfig cfg = config_in(dir);
  cfg.cache_dir.reset();
  cfg.budget_seconds = 2;
  cfg.check_radical = false;
  const auto reports = run_kappa(7, 3, 2, cfg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_NE(reports[0].verdict, KappaVerdict::Kappa);
  EXPECT_EQ(exit_code(reports), 20);
  fs::remove_all(dir);
}

TEST(Runner, BadArguments) {
  RunConfig cfg;
  cfg.cache_dir.reset();
  EXPECT_THROW(run_kappa(10, 1, std::nullopt, cfg), UsageError);
  EXPECT_THROW(run_kappa(4, 4, std::nullopt, cfg), UsageError);
  EXPECT_THROW(run_kappa(4, 1, 4, cfg), UsageError);
  EXPECT_THROW(engine_from_string("magma"), UsageError);
  EXPECT_THROW(dump_json(1), UsageError);
}

TEST(Certificates, FileRoundTripAndTamper) {
  const fs::path dir = fresh_dir("cert");
  RunConfig cfg = config_in(dir);
  cfg.certificate_path = dir / "one.json";
  const auto reports = run_kappa(4, 1, 2, cfg);
  ASSERT_EQ(reports.size(), 1u);
  ASSERT_EQ(fs::path(reports[0].certificate_file), dir / "one.json");
  EXPECT_TRUE(verify_certificate_file(dir / "one.json").passed());

  nlohmann::json j = nlohmann::json::parse(std::ifstream(dir / "one.json"));
  EXPECT_EQ(j["orientation"], "reflected");
  EXPECT_EQ(j["kappa"], 2);
  nlohmann::json bad = j;
  bad["cofactors"][0] = "a0^3";
  std::ofstream(dir / "bad.json") << bad.dump();
  EXPECT_FALSE(verify_certificate_file(dir / "bad.json").passed());

  bad = j;
  bad["j"] = 1;
  std::ofstream(dir / "bad.json") << bad.dump();
  EXPECT_FALSE(verify_certificate_file(dir / "bad.json").passed());

  std::ofstream(dir / "bad.json") << "{";
  EXPECT_THROW(verify_certificate_file(dir / "bad.json"), ParseError);
  fs::remove_all(dir);
}

TEST(Identity4, MutationIsCaught) {
  std::string mutated = kResult12C1;
  mutated.insert(0, "-");
  const auto rep = verify_result12(mutated);
  EXPECT_FALSE(rep.passed());
  const auto base = verify_result12();
  bool c2_free = false, c1_four_terms = false;
  for (const auto& c : base.checks) {
    if (c.name.rfind("(b)", 0) == 0) c2_free = c.passed;
    if (c.name.rfind("(c)", 0) == 0) c1_four_terms = c.passed;
  }
  EXPECT_TRUE(c2_free);
  EXPECT_TRUE(c1_four_terms);
}

TEST(Dump, Contents) {
  const auto j = nlohmann::json::parse(dump_json(4));
  EXPECT_EQ(j["D"][0]["poly"], "-a0*a3^2 - a1^2*a4 + a1*a2*a3");
  const auto j2 = nlohmann::json::parse(dump_json(2));
  EXPECT_EQ(j2["M"].size(), 1u);
  EXPECT_EQ(j2["D"].size(), 2u);
  const auto j5 = nlohmann::json::parse(dump_json(5));
  EXPECT_EQ(j5["M"][1][2], "a4");
  EXPECT_EQ(j5["M"][0][3], "0");
}
