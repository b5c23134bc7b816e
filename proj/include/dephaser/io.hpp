// Copyright 2026 The dephaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serialization of analysis results. CSV numbers use "%.17g" so that output
// is byte-stable and round-trips; files are replaced atomically.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dephaser/classicality.hpp"
#include "dephaser/statistics.hpp"
#include "json.hpp"

namespace dephaser {

std::string format_double(double x);

/// Columns x_1..x_n, probability; tuples in flat order (x_1 slowest).
std::string distribution_csv(const JointDistribution& dist);
nlohmann::json distribution_json(const JointDistribution& dist);

/// Columns order, position, t_1..t_Nmax, deficit. Shorter tuples leave the
/// trailing time columns empty.
std::string deficits_csv(const ClassicalityReport& report);
nlohmann::json report_json(const ClassicalityReport& report);
nlohmann::json witness_json(const Witness& witness);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dephaser
