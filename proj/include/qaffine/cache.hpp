#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qaffine/verma.hpp"

namespace qaffine {

std::uint64_t fnv1a64(const std::string& s);

// Content-addressed rank store: one file per key under a directory, named by
// the 64-bit FNV-1a hash of the key. The file holds the full key and the
// rank, so a hash collision or a stale entry written for a different key
// reads as a miss instead of a wrong answer. Writes land in a temp file and
// are renamed into place; failures to write are swallowed (the cache is an
// accelerator, never a source of truth).
class DiskRankCache : public RankCache {
 public:
  explicit DiskRankCache(std::filesystem::path dir);

  std::optional<long> lookup(const std::string& key) override;
  void store(const std::string& key, long rank) override;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

}  // namespace qaffine
