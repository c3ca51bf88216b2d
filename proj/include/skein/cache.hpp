#pragma once

// Append-only file cache for invariant values, keyed by canonical diagram key
// and algebra id. Location comes from SKEIN_CACHE_DIR; an empty directory
// name disables caching.

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace skein {

class FileCache {
 public:
  // dir empty: disabled
  explicit FileCache(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) return;
    std::ifstream in(path());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("algebra") ||
          !j.contains("value"))
        continue;
      mem_[{j["key"].get<std::string>(), j["algebra"].get<std::string>()}] =
          j["value"].get<std::string>();
    }
  }

  static FileCache from_env(bool enabled) {
    const char* dir = std::getenv("SKEIN_CACHE_DIR");
    return FileCache(enabled && dir ? std::string(dir) : std::string());
  }

  bool enabled() const { return !dir_.empty(); }

  std::optional<std::string> lookup(const std::string& key, const std::string& algebra) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find({key, algebra});
    if (it == mem_.end()) return std::nullopt;
    return it->second;
  }

  void store(const std::string& key, const std::string& algebra, const std::string& value) {
    if (dir_.empty()) return;
    std::lock_guard<std::mutex> lock(mu_);
    auto slot = mem_.find({key, algebra});
    if (slot != mem_.end()) return;
    mem_[{key, algebra}] = value;
    nlohmann::json j{{"key", key}, {"algebra", algebra}, {"value", value}};
    std::ofstream out(path(), std::ios::app);
    out << j.dump() << "\n";
  }

 private:
  std::string path() const { return dir_ + "/cache.jsonl"; }

  std::string dir_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::string> mem_;
};

}  // namespace skein
