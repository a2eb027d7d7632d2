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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "samlfd/trajectory.hpp"

namespace samlfd {

struct NamedTrajectory {
  std::string name;
  std::string provenance;
  Trajectory trajectory;
};

/// Trajectory JSON:
///   {"name": str, "dims": int, "duration": number,
///    "samples": [[x, y(, z)], ...], "provenance": str}
std::string trajectory_to_json(const NamedTrajectory& traj, int indent = -1);
NamedTrajectory trajectory_from_json(const std::string& text);

/// Header row naming the columns, then one sample per line. Columns named
/// x, y, z are used when present, otherwise the first 2 or 3 numeric columns.
/// A "demo" column, when present, restricts the read to the first demo id.
NamedTrajectory trajectory_from_csv(const std::string& text, const std::string& name = "");

/// Loads by extension: ".json" is parsed as trajectory JSON, anything else as CSV.
/// Errors: Io (unreadable), Parse, Dimension, NonFinite.
NamedTrajectory load_named_trajectory(const std::filesystem::path& path);
Trajectory load_trajectory(const std::filesystem::path& path);
void save_trajectory(const NamedTrajectory& traj, const std::filesystem::path& path);

struct IngestReport {
  std::vector<NamedTrajectory> corpus;
  std::vector<std::string> warnings;
};

/// Reads every *.csv in `dir` in lexicographic order, keeps the first
/// demonstration of each, and runs the default preprocessing pipeline. Files
/// that fail to load or have fewer than 2 rows are skipped with a warning.
IngestReport ingest_lasa_csv(const std::filesystem::path& dir, const PreprocessConfig& config = {});

/// Synthetic shapes shipped with the library, already preprocessed.
std::vector<std::string> bundled_shape_names();
NamedTrajectory bundled_shape(const std::string& name);
/// The six-shape corpus used by the offline bias study.
std::vector<NamedTrajectory> bundled_corpus();

}  // namespace samlfd
