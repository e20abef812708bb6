#include "latinpat/cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace latinpat {

namespace {

json key_json(const CacheKey& key) {
  return {{"order", key.order}, {"spec", key.spec_digest}, {"op", key.operation}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "results.jsonl";
}

std::optional<json> ResultCache::lookup(const CacheKey& key) const {
  std::ifstream in(file_);
  if (!in) return std::nullopt;
  const json wanted = key_json(key);
  std::optional<json> hit;
  std::string line;
  while (std::getline(in, line)) {
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) continue;
    if (record.value("key", json()) == wanted && record.contains("value")) hit = record.at("value");
  }
  return hit;
}

void ResultCache::store(const CacheKey& key, const json& value) const {
  const json record = {
      {"key", key_json(key)}, {"value", value}, {"tool_version", kToolVersion}, {"timestamp", utc_timestamp()}};
  // One write per record keeps concurrent appenders from interleaving lines.
  const std::string line = record.dump() + "\n";
  std::ofstream out(file_, std::ios::app | std::ios::binary);
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  if (!out) throw std::runtime_error("cannot append to cache file " + file_.string());
}

}  // namespace latinpat
