#include "resconj/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace resconj {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[digest[k] >> 4]);
    out.push_back(hex[digest[k] & 15]);
  }
  return out;
}

bool basis_is_sound(const GroebnerBasis& basis, const IdealPresentation& ideal) {
  if (basis.status() != GbStatus::Complete) return false;
  if (basis.generators().size() != ideal.generators.size()) return false;
  for (std::size_t l = 0; l < ideal.generators.size(); ++l)
    if (!(basis.generators()[l] == ideal.generators[l].to_domain(basis.domain()))) return false;
  if (basis.elements().empty() || !is_reduced(basis)) return false;
  if (basis.has_rows() && !rows_reproduce_elements(basis)) return false;
  for (const auto& g : basis.generators())
    if (!normal_form(g, basis).remainder.is_zero()) return false;
  return s_polynomial_closure(basis);
}

BasisCache::BasisCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string BasisCache::key(int m, int i, const MonomialOrder& order, const Domain& domain) {
  std::ostringstream os;
  os << "basis|m=" << m << "|i=" << i << "|order=" << order.describe() << "|domain=" << domain.describe()
     << "|engine=" << kEngineVersion;
  return os.str();
}

fs::path BasisCache::path_for(const std::string& key) const { return dir_ / (sha256_hex(key) + ".json"); }

std::optional<GroebnerBasis> BasisCache::load(int m, int i, const IdealPresentation& ideal) {
  const std::string k = key(m, i, ideal.ring()->order(), ideal.domain);
  const fs::path path = path_for(k);
  {
    std::lock_guard lock(mutex_);
    if (!fs::exists(path)) {
      ++misses_;
      return std::nullopt;
    }
  }
  try {
    std::ifstream in(path);
    const json j = json::parse(in);
    if (j.at("key").get<std::string>() != k) throw Error("cache key mismatch");
    const RingPtr& ring = ideal.ring();
    const Domain d = ideal.domain;
    auto polys = [&](const json& arr) {
      std::vector<Poly> out;
      for (const auto& s : arr) out.push_back(parse_poly(ring, s.get<std::string>(), Domain::rational()).to_domain(d));
      return out;
    };
    std::vector<std::vector<Poly>> rows;
    for (const auto& r : j.at("rows")) rows.push_back(polys(r));
    GroebnerStats stats;
    stats.pairs_processed = j.at("pairs_processed").get<std::size_t>();
    GroebnerBasis basis(ring, d, polys(j.at("generators")), polys(j.at("elements")), std::move(rows), std::nullopt,
                        GbStatus::Complete, stats);
    if (!basis_is_sound(basis, ideal)) throw Error("cached basis failed re-verification");
    std::lock_guard lock(mutex_);
    ++hits_;
    return basis;
  } catch (const std::exception&) {
    std::lock_guard lock(mutex_);
    ++rejected_;
    std::error_code ec;
    fs::remove(path, ec);
    return std::nullopt;
  }
}

void BasisCache::store(int m, int i, const GroebnerBasis& basis) {
  if (basis.status() != GbStatus::Complete || basis.degree_bound()) return;
  const std::string k = key(m, i, basis.ring()->order(), basis.domain());
  auto strings = [](const std::vector<Poly>& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(format(p));
    return arr;
  };
  json j;
  j["key"] = k;
  j["generators"] = strings(basis.generators());
  j["elements"] = strings(basis.elements());
  j["rows"] = json::array();
  for (const auto& r : basis.rows()) j["rows"].push_back(strings(r));
  j["pairs_processed"] = basis.stats().pairs_processed;

  const fs::path final_path = path_for(k);
  std::random_device rd;
  const fs::path tmp = final_path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    out << j.dump();
    if (!out) throw Error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

}  // namespace resconj
