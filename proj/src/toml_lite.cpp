#include "bergman/toml_lite.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bergman {

namespace {

[[noreturn]] void fail(size_t line, const std::string& what) {
  throw std::runtime_error("config parse error at line " + std::to_string(line) +
                           ": " + what);
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
          c == '.')) {
      return false;
    }
  }
  return true;
}

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  size_t line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
};

TomlValue parse_scalar(Cursor& c);

TomlValue parse_string(Cursor& c) {
  TomlValue v;
  v.kind = TomlValue::Kind::String;
  ++c.pos;  // opening quote
  std::string out;
  while (true) {
    if (c.done()) fail(c.line, "unterminated string");
    char ch = c.s[c.pos++];
    if (ch == '"') break;
    if (ch == '\\') {
      if (c.done()) fail(c.line, "dangling escape");
      char esc = c.s[c.pos++];
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(c.line, std::string("unsupported escape \\") + esc);
      }
    } else {
      out += ch;
    }
  }
  v.str = out;
  return v;
}

TomlValue parse_array(Cursor& c) {
  TomlValue v;
  v.kind = TomlValue::Kind::Array;
  ++c.pos;  // '['
  c.skip_ws();
  if (c.peek() == ']') {
    ++c.pos;
    return v;
  }
  while (true) {
    c.skip_ws();
    v.array.push_back(parse_scalar(c));
    c.skip_ws();
    char ch = c.peek();
    if (ch == ',') {
      ++c.pos;
      c.skip_ws();
      if (c.peek() == ']') {  // trailing comma
        ++c.pos;
        return v;
      }
      continue;
    }
    if (ch == ']') {
      ++c.pos;
      return v;
    }
    fail(c.line, "expected ',' or ']' in array");
  }
}

TomlValue parse_scalar(Cursor& c) {
  char ch = c.peek();
  if (ch == '"') return parse_string(c);
  if (ch == '[') return parse_array(c);
  // Bare token: boolean or number.
  size_t start = c.pos;
  while (!c.done() && c.s[c.pos] != ',' && c.s[c.pos] != ']' && c.s[c.pos] != ' ' &&
         c.s[c.pos] != '\t') {
    ++c.pos;
  }
  std::string tok = c.s.substr(start, c.pos - start);
  TomlValue v;
  if (tok == "true" || tok == "false") {
    v.kind = TomlValue::Kind::Boolean;
    v.boolean = tok == "true";
    return v;
  }
  const char* begin = tok.c_str();
  char* end = nullptr;
  double num = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail(c.line, "cannot parse value '" + tok + "'");
  v.kind = TomlValue::Kind::Number;
  v.number = num;
  return v;
}

const char* kind_name(TomlValue::Kind k) {
  switch (k) {
    case TomlValue::Kind::String: return "string";
    case TomlValue::Kind::Boolean: return "boolean";
    case TomlValue::Kind::Number: return "number";
    case TomlValue::Kind::Array: return "array";
  }
  return "?";
}

[[noreturn]] void type_error(const std::string& key, const char* want,
                             TomlValue::Kind got) {
  throw std::runtime_error("config key '" + key + "' has type " + kind_name(got) +
                           ", expected " + want);
}

}  // namespace

TomlTable TomlTable::parse(const std::string& text) {
  TomlTable table;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = strip(line.substr(1, line.size() - 2));
      if (!valid_key(section)) fail(lineno, "bad section name '" + section + "'");
      continue;
    }
    size_t eq = std::string::npos;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '=' && !quoted) {
        eq = i;
        break;
      }
    }
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = strip(line.substr(0, eq));
    if (!valid_key(key)) fail(lineno, "bad key '" + key + "'");
    std::string rhs = strip(line.substr(eq + 1));
    if (rhs.empty()) fail(lineno, "missing value for '" + key + "'");
    Cursor c{rhs, 0, lineno};
    TomlValue value = parse_scalar(c);
    c.skip_ws();
    if (!c.done()) fail(lineno, "trailing characters after value for '" + key + "'");
    std::string full = section.empty() ? key : section + "." + key;
    table.values_[full] = std::move(value);
  }
  return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool TomlTable::has(const std::string& key) const { return values_.count(key) > 0; }

const TomlValue& TomlTable::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw std::runtime_error("missing config key '" + key + "'");
  }
  return it->second;
}

std::string TomlTable::get_string(const std::string& key) const {
  const TomlValue& v = require(key);
  if (v.kind != TomlValue::Kind::String) type_error(key, "string", v.kind);
  return v.str;
}

std::string TomlTable::get_string(const std::string& key,
                                  const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double TomlTable::get_double(const std::string& key) const {
  const TomlValue& v = require(key);
  if (v.kind != TomlValue::Kind::Number) type_error(key, "number", v.kind);
  return v.number;
}

double TomlTable::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int64_t TomlTable::get_int(const std::string& key) const {
  double x = get_double(key);
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9 || std::abs(x) > 9.0e15) {
    throw std::runtime_error("config key '" + key + "' is not an integer");
  }
  return static_cast<int64_t>(r);
}

int64_t TomlTable::get_int(const std::string& key, int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool TomlTable::get_bool(const std::string& key) const {
  const TomlValue& v = require(key);
  if (v.kind != TomlValue::Kind::Boolean) type_error(key, "boolean", v.kind);
  return v.boolean;
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<double> TomlTable::get_double_array(const std::string& key) const {
  const TomlValue& v = require(key);
  if (v.kind != TomlValue::Kind::Array) type_error(key, "array", v.kind);
  std::vector<double> out;
  for (const TomlValue& e : v.array) {
    if (e.kind != TomlValue::Kind::Number) type_error(key, "array of numbers", e.kind);
    out.push_back(e.number);
  }
  return out;
}

std::vector<double> TomlTable::get_double_array(
    const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_double_array(key) : fallback;
}

std::vector<std::string> TomlTable::get_string_array(const std::string& key) const {
  const TomlValue& v = require(key);
  if (v.kind != TomlValue::Kind::Array) type_error(key, "array", v.kind);
  std::vector<std::string> out;
  for (const TomlValue& e : v.array) {
    if (e.kind != TomlValue::Kind::String) type_error(key, "array of strings", e.kind);
    out.push_back(e.str);
  }
  return out;
}

std::vector<std::string> TomlTable::get_string_array(
    const std::string& key, const std::vector<std::string>& fallback) const {
  return has(key) ? get_string_array(key) : fallback;
}

void TomlTable::set(const std::string& key, TomlValue value) {
  values_[key] = std::move(value);
}

}  // namespace bergman
