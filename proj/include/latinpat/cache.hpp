#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "latinpat/io.hpp"

namespace latinpat {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCacheDirEnv = "LATINPAT_CACHE_DIR";

struct CacheKey {
  int order = 0;
  std::string spec_digest;
  std::string operation;
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

// Append-only JSON-lines store, one record per line:
//   {"key": {...}, "value": ..., "tool_version": "...", "timestamp": "..."}
// The last record for a key wins. Lines that fail to parse (e.g. a torn
// write) are skipped.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& file() const { return file_; }

  std::optional<json> lookup(const CacheKey& key) const;
  void store(const CacheKey& key, const json& value) const;

 private:
  std::filesystem::path file_;
};

}  // namespace latinpat
