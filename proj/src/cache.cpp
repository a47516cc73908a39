#include "qaffine/cache.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>
#include <utility>

namespace qaffine {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

DiskRankCache::DiskRankCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
}

std::filesystem::path DiskRankCache::path_for(const std::string& key) const {
  std::ostringstream os;
  os << std::hex << fnv1a64(key) << ".rank";
  return dir_ / os.str();
}

std::optional<long> DiskRankCache::lookup(const std::string& key) {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  std::string stored_key;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
  long rank = 0;
  if (!(in >> rank) || rank < 0) return std::nullopt;
  return rank;
}

void DiskRankCache::store(const std::string& key, long rank) {
  const std::filesystem::path target = path_for(key);
  std::filesystem::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << key << "\n" << rank << "\n";
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace qaffine
