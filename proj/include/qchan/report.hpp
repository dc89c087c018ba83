#ifndef QCHAN_REPORT_HPP
#define QCHAN_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qchan {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// Numeric table. Column names carry the unit in brackets, e.g. "d[count]".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool points = false;  // markers instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  // Optional histogram bars: edges has one more entry than heights.
  std::vector<double> bar_edges;
  std::vector<double> bar_heights;
  // Optional horizontal reference line.
  bool has_reference = false;
  double reference = 0.0;
  std::string reference_label;
};

std::string render_svg(const PlotSpec& plot);

/// UTC timestamp, ISO 8601 with seconds.
std::string utc_now();

/// One manifest per run: parameters, seed, version, outputs and timestamps.
/// Timestamps live only here so data files stay byte-reproducible.
struct RunManifest {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  std::string version;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace qchan

#endif  // QCHAN_REPORT_HPP
