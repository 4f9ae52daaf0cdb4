#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>

#include "resconj/poly.hpp"
#include "resconj/runner.hpp"

namespace resconj {

struct SelftestOptions {
  std::uint64_t seed = kDefaultSeed;
  // Scratch directory for the cache checks; a fresh temporary one when unset.
  std::optional<std::filesystem::path> scratch_dir;
};

// Property suites over m <= 5, plus the determinant oracle at m = 6, 7 and the
// symmetry check at m <= 6. Deterministic for a fixed seed.
CheckReport run_selftest(const SelftestOptions& options = {});

// Random polynomial in a0..am with `terms` terms, total degree <= max_degree
// and integer coefficients in [-bound, bound].
Poly random_poly(const RingPtr& ring, std::mt19937_64& rng, int terms, unsigned max_degree, int bound = 5);
// Same, but every term has exactly degree `degree`.
Poly random_homogeneous(const RingPtr& ring, std::mt19937_64& rng, int terms, unsigned degree, int bound = 5);

}  // namespace resconj
