#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adpt/errors.hpp"

namespace adpt::harness {

// Flat key=value sections:
//   [section]
//   key = value     # comment
// Values keep IEEE-754 round-trip decimal floats; lists are comma-separated.
class Config {
public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections() const;

  std::string get_str(const std::string& section, const std::string& key) const;
  std::string get_str(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key) const;
  double get_num(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  [[noreturn]] static void fail(const std::string& section, const std::string& key,
                                const std::string& msg);
};

}  // namespace adpt::harness
