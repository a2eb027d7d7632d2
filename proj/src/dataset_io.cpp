// Copyright 2026 The samlfd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "samlfd/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "samlfd/error.hpp"

namespace samlfd {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + cell.size()) return std::nullopt;
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string trajectory_to_json(const NamedTrajectory& traj, int indent) {
  const auto& s = traj.trajectory.samples();
  json samples = json::array();
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index d = 0; d < s.cols(); ++d) row.push_back(s(i, d));
    samples.push_back(std::move(row));
  }
  json doc = {{"name", traj.name},
              {"dims", traj.trajectory.dims()},
              {"duration", traj.trajectory.duration()},
              {"samples", std::move(samples)},
              {"provenance", traj.provenance}};
  return doc.dump(indent);
}

NamedTrajectory trajectory_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("trajectory JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array()) {
    fail(ErrorCode::Parse, "trajectory JSON needs an object with a 'samples' array");
  }
  const json& rows = doc["samples"];
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "trajectory JSON has no samples");
  if (!rows[0].is_array()) fail(ErrorCode::Parse, "each sample must be an array of numbers");
  const std::size_t dims = rows[0].size();
  if (doc.contains("dims")) {
    if (!doc["dims"].is_number_integer()) fail(ErrorCode::Parse, "'dims' must be an integer");
    if (doc["dims"].get<long long>() != static_cast<long long>(dims)) {
      fail(ErrorCode::Dimension, "'dims' is " + doc["dims"].dump() + " but samples have " +
                                     std::to_string(dims) + " coordinates");
    }
  }
  SampleMatrix samples(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array()) fail(ErrorCode::Parse, "each sample must be an array of numbers");
    if (row.size() != dims) {
      fail(ErrorCode::Dimension, "sample " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                     " coordinates, expected " + std::to_string(dims));
    }
    for (std::size_t d = 0; d < dims; ++d) {
      const json& v = row[d];
      double value = 0.0;
      if (v.is_null()) {
        value = std::numeric_limits<double>::quiet_NaN();
      } else if (v.is_number()) {
        value = v.get<double>();
      } else {
        fail(ErrorCode::Parse, "sample " + std::to_string(i) + " holds a non-numeric coordinate");
      }
      if (!std::isfinite(value)) {
        fail(ErrorCode::NonFinite, "sample " + std::to_string(i) + " has a non-finite coordinate");
      }
      samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = value;
    }
  }
  double duration = 1.0;
  if (doc.contains("duration")) {
    if (!doc["duration"].is_number()) fail(ErrorCode::Parse, "'duration' must be a number");
    duration = doc["duration"].get<double>();
  }
  NamedTrajectory out{doc.value("name", std::string{}), doc.value("provenance", std::string{}),
                      Trajectory(std::move(samples), duration)};
  return out;
}

NamedTrajectory trajectory_from_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "CSV has no rows");

  std::vector<std::string> header;
  const bool has_header = std::any_of(rows[0].begin(), rows[0].end(),
                                      [](const std::string& c) { return !parse_number(c); });
  if (has_header) {
    for (const auto& c : rows[0]) header.push_back(lower(c));
    rows.erase(rows.begin());
  }
  const std::size_t width = has_header ? header.size() : (rows.empty() ? 0 : rows[0].size());

  std::optional<std::size_t> demo_col;
  std::vector<std::size_t> coord_cols;
  if (has_header) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == "demo" || header[c] == "demo_id") demo_col = c;
    }
    for (const char* axis : {"x", "y", "z"}) {
      auto it = std::find(header.begin(), header.end(), axis);
      if (it != header.end()) coord_cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  if (coord_cols.empty()) {
    for (std::size_t c = 0; c < width && coord_cols.size() < 3; ++c) {
      if (demo_col && *demo_col == c) continue;
      coord_cols.push_back(c);
    }
  }
  if (coord_cols.size() != 2 && coord_cols.size() != 3) {
    fail(ErrorCode::Dimension, "CSV must provide 2 or 3 coordinate columns");
  }

  std::optional<std::string> first_demo;
  std::vector<std::vector<double>> values;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width) {
      fail(ErrorCode::Dimension, "CSV row " + std::to_string(r + 1) + " has " +
                                     std::to_string(row.size()) + " cells, expected " +
                                     std::to_string(width));
    }
    if (demo_col) {
      if (!first_demo) first_demo = row[*demo_col];
      if (row[*demo_col] != *first_demo) continue;
    }
    std::vector<double> sample;
    for (std::size_t c : coord_cols) {
      const std::string cell = lower(row[c]);
      auto v = parse_number(cell);
      if (!v) fail(ErrorCode::Parse, "CSV row " + std::to_string(r + 1) + ": '" + row[c] + "' is not a number");
      if (!std::isfinite(*v)) {
        fail(ErrorCode::NonFinite, "CSV row " + std::to_string(r + 1) + " has a non-finite coordinate");
      }
      sample.push_back(*v);
    }
    values.push_back(std::move(sample));
  }
  if (values.size() < 2) {
    fail(ErrorCode::InvalidArgument, "CSV needs at least 2 samples, got " + std::to_string(values.size()));
  }
  SampleMatrix samples(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(coord_cols.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t d = 0; d < coord_cols.size(); ++d) {
      samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = values[i][d];
    }
  }
  return NamedTrajectory{name, "csv", Trajectory(std::move(samples))};
}

NamedTrajectory load_named_trajectory(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (lower(path.extension().string()) == ".json") {
    NamedTrajectory t = trajectory_from_json(text);
    if (t.name.empty()) t.name = path.stem().string();
    return t;
  }
  return trajectory_from_csv(text, path.stem().string());
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  return load_named_trajectory(path).trajectory;
}

void save_trajectory(const NamedTrajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << trajectory_to_json(traj, 2) << '\n';
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

IngestReport ingest_lasa_csv(const std::filesystem::path& dir, const PreprocessConfig& config) {
  IngestReport report;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    fail(ErrorCode::Io, "'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) report.warnings.push_back("no CSV files in '" + dir.string() + "'");
  for (const auto& file : files) {
    try {
      NamedTrajectory raw = load_named_trajectory(file);
      report.corpus.push_back(NamedTrajectory{raw.name, "LASA/" + raw.name,
                                              preprocess(raw.trajectory, config)});
    } catch (const Error& e) {
      report.warnings.push_back("skipped '" + file.filename().string() + "': " + e.what());
    }
  }
  return report;
}

}  // namespace samlfd
