#include "scalardyn_cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cstdlib>
#include <sstream>

namespace scalardyn::cli {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

namespace {

void flatten(const pt::ptree& tree, std::map<std::string, std::string>& kv) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      kv[section] = trim(body.data());
      continue;
    }
    for (const auto& [key, leaf] : body) kv[section + "." + key] = trim(leaf.data());
  }
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
  return v;
}

}  // namespace

void Config::load_ini_file(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  flatten(tree, kv_);
}

void Config::load_ini_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed preset: ") + e.what());
  }
  flatten(tree, kv_);
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.find('.') == std::string::npos) throw ConfigError("--set key must be section.key, got '" + key + "'");
  kv_[key] = trim(assignment.substr(eq + 1));
}

std::string Config::str(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::num(const std::string& key) const { return parse_double(key, str(key)); }

double Config::num(const std::string& key, double fallback) const {
  return has(key) ? parse_double(key, str(key)) : fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = num(key);
  if (v != static_cast<double>(static_cast<long>(v))) throw ConfigError("'" + key + "' expects an integer");
  return static_cast<long>(v);
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = str(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> Config::nums(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : list(key)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<std::string> Config::list(const std::string& key, char sep) const { return split(str(key), sep); }

}  // namespace scalardyn::cli
