#include "bergman/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace bergman {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row width does not match the table columns");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string table_csv(const Table& t) {
  std::string out;
  for (size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += t.columns[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string report_csv(const ExperimentReport& r) { return table_csv(r.table); }

namespace {

// JSON has no literal for non-finite doubles; encode them as tagged strings
// so reports round-trip exactly.
nlohmann::json encode_num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double decode_num(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("unknown numeric tag: " + s);
  }
  return j.get<double>();
}

nlohmann::json table_json(const Table& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["columns"] = t.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    auto jr = nlohmann::json::array();
    for (double x : row) jr.push_back(encode_num(x));
    rows.push_back(jr);
  }
  j["rows"] = rows;
  return j;
}

Table table_from_json(const nlohmann::json& j) {
  Table t;
  t.name = j.at("name").get<std::string>();
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& jr : j.at("rows")) {
    std::vector<double> row;
    for (const auto& x : jr) row.push_back(decode_num(x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string report_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["claim"] = r.claim;
  j["seed"] = r.seed;
  auto cfg = nlohmann::json::array();
  for (const auto& [k, v] : r.config) {
    cfg.push_back(nlohmann::json::array({k, v}));
  }
  j["config"] = cfg;
  j["table"] = table_json(r.table);
  auto series = nlohmann::json::array();
  for (const Table& t : r.series) series.push_back(table_json(t));
  j["series"] = series;
  auto summary = nlohmann::json::array();
  for (const auto& [k, v] : r.summary) {
    summary.push_back(nlohmann::json::array({k, encode_num(v)}));
  }
  j["summary"] = summary;
  j["notes"] = r.notes;
  j["violations"] = r.violations;
  j["passed"] = r.passed;
  j["wall_seconds"] = encode_num(r.wall_seconds);
  return j.dump(2);
}

ExperimentReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentReport r;
  r.scenario = j.at("scenario").get<std::string>();
  r.claim = j.at("claim").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  for (const auto& kv : j.at("config")) {
    r.config.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
  }
  r.table = table_from_json(j.at("table"));
  for (const auto& t : j.at("series")) r.series.push_back(table_from_json(t));
  for (const auto& kv : j.at("summary")) {
    r.summary.emplace_back(kv.at(0).get<std::string>(), decode_num(kv.at(1)));
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.violations = j.at("violations").get<int>();
  r.passed = j.at("passed").get<bool>();
  r.wall_seconds = decode_num(j.at("wall_seconds"));
  return r;
}

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_report_files(const ExperimentReport& r, const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  std::string base = sanitize(r.scenario);
  write_text(dir / (base + ".csv"), report_csv(r));
  write_text(dir / (base + ".json"), report_json(r));
  for (const Table& t : r.series) {
    write_text(dir / (base + "_" + sanitize(t.name) + ".csv"), table_csv(t));
  }
}

}  // namespace bergman
