#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace scalardyn::cli {

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> value store filled from presets, INI files and
/// --set overrides, in that order.
class Config {
 public:
  void load_ini_file(const std::string& path);
  void load_ini_text(const std::string& text);
  /// "section.key=value"
  void apply_override(const std::string& assignment);
  void set(const std::string& key, std::string value) { kv_[key] = std::move(value); }
  void erase(const std::string& key) { kv_.erase(key); }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> nums(const std::string& key) const;
  /// Split on `sep`, whitespace-trimmed, empty items dropped.
  std::vector<std::string> list(const std::string& key, char sep = ',') const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

/// Names accepted by --preset.
std::vector<std::string> preset_names();
/// INI text of a preset; ConfigError for unknown names.
std::string preset_text(const std::string& name);

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace scalardyn::cli
