/*
 * Copyright 2026 The crickpred Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crickpred/ingest.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

/// Environment variable naming the weight-vector config file.
inline constexpr const char* kConfigEnv = "CRICKPRED_CONFIG";

struct InputPaths {
  std::filesystem::path batting;
  std::filesystem::path bowling;
  std::filesystem::path rosters;

  /// batting.csv, bowling.csv and rosters.csv inside `dir`.
  static InputPaths in_directory(const std::filesystem::path& dir);
};

struct LoadedData {
  ingest::History history;
  ingest::RosterBook rosters;
};

/// Strict ingest of the three input files. Throws DataError on bad rows.
LoadedData load_data(const InputPaths& paths);

/// The weight vectors named by `explicit_path`, else by $CRICKPRED_CONFIG,
/// else the published defaults.
features::WeightVectors load_weights(const std::optional<std::filesystem::path>& explicit_path);

/// Runs one command line. Output goes to `out`, diagnostics to `err`, and
/// the return value is an ExitCode. `serve` blocks until the process ends.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crickpred::cli
