#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace criticalflow {

/// Flat key/value configuration.
///
/// Lines are `key = value`; `[section]` prefixes following keys with
/// `section.`; `#` starts a comment. Later keys override earlier ones.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  /// Throws std::invalid_argument when absent.
  std::string require(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace criticalflow
