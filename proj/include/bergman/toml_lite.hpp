#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bergman {

// Minimal TOML subset sufficient for scenario configs: comments, [section]
// headers, and key = value lines where value is a quoted string, boolean,
// number, or a flat array of those.  Keys are flattened to "section.key".
// No available C++ package provided TOML parsing in this toolchain, so this
// hand-rolled subset covers exactly what the configs use.
struct TomlValue {
  enum class Kind { String, Boolean, Number, Array };
  Kind kind = Kind::Number;
  std::string str;
  bool boolean = false;
  double number = 0.0;
  std::vector<TomlValue> array;
};

class TomlTable {
 public:
  static TomlTable parse(const std::string& text);
  static TomlTable parse_file(const std::string& path);

  bool has(const std::string& key) const;

  // Typed accessors; the two-argument forms return the fallback when the key
  // is absent and throw (naming the key) when it has the wrong type.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_array(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key,
                                       const std::vector<double>& fallback) const;
  std::vector<std::string> get_string_array(const std::string& key) const;
  std::vector<std::string> get_string_array(
      const std::string& key, const std::vector<std::string>& fallback) const;

  void set(const std::string& key, TomlValue value);
  const std::map<std::string, TomlValue>& values() const { return values_; }

 private:
  const TomlValue& require(const std::string& key) const;
  std::map<std::string, TomlValue> values_;
};

}  // namespace bergman
