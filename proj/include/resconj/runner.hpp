#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "resconj/certificate.hpp"
#include "resconj/coefficients.hpp"
#include "resconj/groebner.hpp"

namespace resconj {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr unsigned kDefaultKappaMax = 8;

enum class EngineChoice { Groebner, Macaulay, Both };

std::string to_string(EngineChoice e);
EngineChoice engine_from_string(const std::string& s);

struct RunConfig {
  unsigned kappa_max = kDefaultKappaMax;
  EngineChoice engine = EngineChoice::Groebner;
  // Empty: three primes drawn from `seed`.
  std::vector<std::uint32_t> primes;
  bool heuristic = false;
  // Wall-clock budget per (m, i) group in seconds; 0 means unbounded.
  double budget_seconds = 0;
  // 0: hardware concurrency.
  unsigned jobs = 0;
  // A .json file (single report) or a directory for certificate files.
  std::optional<std::filesystem::path> certificate_path;
  // Basis cache; nullopt disables caching.
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t seed = kDefaultSeed;
  double radical_budget_seconds = 30;
  bool check_radical = true;
};

// Defaults with RESCONJ_CACHE_DIR and RESCONJ_SEED applied.
RunConfig config_from_env();
std::vector<std::uint32_t> resolve_primes(const RunConfig& config);

struct ConjectureReport {
  int m = 0;
  int i = 0;
  int j = 0;
  std::vector<std::string> engines;
  KappaVerdict verdict = KappaVerdict::Exhausted;
  unsigned kappa = 0;
  // Largest exponent proven not to work (0 when none).
  unsigned lower_bound = 0;
  bool modular_evidence = false;
  std::optional<bool> radical;
  std::optional<MembershipCertificate> certificate;
  std::string certificate_file;
  double seconds = 0;
  std::vector<std::uint32_t> primes;
  std::size_t cache_hits = 0;
  bool engines_disagree = false;
  std::string note;
};

std::string reports_to_json(const std::vector<ConjectureReport>& reports);
std::string report_line(const ConjectureReport& r);

// One report per j (all j in [0, m-i] when j is omitted).
std::vector<ConjectureReport> run_kappa(int m, int i, std::optional<int> j, const RunConfig& config);

// 0 all certified, 10 heuristic verdicts present, 20 exhausted/open present,
// 1 engine disagreement.
int exit_code(const std::vector<ConjectureReport>& reports);

struct TableCell {
  int m = 0;
  int i = 0;
  // Common interior kappa when every interior cell is certified and equal.
  std::optional<unsigned> kappa;
  // Exponent the open cell is known to reach at least.
  unsigned at_least = 1;
  bool interior_equal = true;
  std::vector<ConjectureReport> reports;

  std::string status() const;
};

struct TableResult {
  std::vector<TableCell> cells;
  // Rows whose interior kappa depends on j.
  std::vector<std::string> counterexamples;

  std::string text() const;
  std::string json() const;
  int exit_code() const;
};

// Rows i = 1..m-2 for each m in [m_lo, m_hi], from the interior j of each row.
TableResult run_table(int m_lo, int m_hi, const RunConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string text() const;
  void add(std::string name, bool passed, std::string detail = {});
};

// The m=4 identity for H12^2 and the stated properties of C1, C2. `c1_text` overrides the transcribed C1.
CheckReport verify_result12(std::optional<std::string> c1_text = std::nullopt);
extern const char* const kResult12C1;
extern const char* const kResult12C2;

std::string certificate_to_json(const MembershipCertificate& cert, int m, int i, int j, Orientation orientation);
// Re-checks a certificate file by plain arithmetic, and that its generators
// and target are D(m,0..i) and H_ij.
CheckReport verify_certificate_file(const std::filesystem::path& path);

// Matrices, D and H for one m (2 <= m <= 9).
std::string dump_json(int m);
std::string dump_text(int m);

}  // namespace resconj
