#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "resconj/groebner.hpp"

namespace resconj {

// Bumped whenever basis computation or serialization changes meaning.
inline constexpr const char* kEngineVersion = "resconj-gb-1";

std::string sha256_hex(const std::string& data);

// Directory of serialized Groebner bases keyed by (m, i, order, domain, engine
// version). Entries are written via a temporary file and rename, and every
// load re-checks the basis before handing it out.
class BasisCache {
 public:
  explicit BasisCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  static std::string key(int m, int i, const MonomialOrder& order, const Domain& domain);
  std::filesystem::path path_for(const std::string& key) const;

  // The cached basis of `ideal`, or nullopt on a miss. Entries that fail to
  // parse or to re-verify count as rejected and are removed.
  std::optional<GroebnerBasis> load(int m, int i, const IdealPresentation& ideal);
  void store(int m, int i, const GroebnerBasis& basis);

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }
  std::size_t rejected() const noexcept { return rejected_; }

 private:
  std::filesystem::path dir_;
  std::mutex mutex_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
  std::size_t rejected_ = 0;
};

// Structural checks applied on every cache hit.
bool basis_is_sound(const GroebnerBasis& basis, const IdealPresentation& ideal);

}  // namespace resconj
