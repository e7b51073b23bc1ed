#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bergman {

// Rectangular numeric table with named columns; the unit every scenario
// reports its per-item results and plot series in.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const Table&) const = default;

  void add_row(std::vector<double> row);
};

struct ExperimentReport {
  std::string scenario;  // wire id, e.g. "lattice-check"
  std::string claim;     // the mathematical statement exercised
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  Table table;                                              // main results
  std::vector<Table> series;                                // plot data
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> notes;  // violations and analysis remarks
  int violations = 0;              // exact-inequality failures
  bool passed = false;
  double wall_seconds = 0.0;  // JSON only; excluded from CSV for determinism

  bool operator==(const ExperimentReport&) const = default;
};

// Deterministic CSV of one table: header line, then rows printed with %.17g.
std::string table_csv(const Table& t);

// Main-table CSV of a report (identical bytes for identical config+seed).
std::string report_csv(const ExperimentReport& r);

// Full JSON round trip; report_from_json(report_json(r)) == r.
std::string report_json(const ExperimentReport& r);
ExperimentReport report_from_json(const std::string& text);

// Writes <out_dir>/<scenario>.csv, <scenario>.json and one
// <scenario>_<series-name>.csv per series; creates out_dir if needed.
void write_report_files(const ExperimentReport& r, const std::string& out_dir);

// Shortest-possible formatting that still round-trips doubles ("%.17g").
std::string format_double(double x);

}  // namespace bergman
