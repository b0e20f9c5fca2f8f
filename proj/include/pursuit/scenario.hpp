// Copyright 2026 The Pursuit Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pursuit/core.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/evader.hpp"

namespace pursuit {

inline constexpr int kScenarioSchema = 1;

// Everything needed to reproduce a run.
struct Scenario {
  GameConfig config;
  PolicySpec policy = IdlePolicy{};
  bool exploratory = false;

  bool operator==(const Scenario&) const = default;
};

// Throws ConfigError on malformed documents.
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Scenario& scenario);

nlohmann::json region_to_json(const ConvexRegion& region);
ConvexRegion region_from_json(const nlohmann::json& doc);

nlohmann::json policy_to_json(const PolicySpec& policy);
PolicySpec policy_from_json(const nlohmann::json& doc);
// Accepts a policy name with default parameters.
PolicySpec policy_from_name(std::string_view name);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const std::filesystem::path& path, const Scenario& scenario);

nlohmann::json params_to_json(const DerivedParams& params);
nlohmann::json report_to_json(const RunResult& result);

// One JSON object per step. Positions are world coordinates; controls and
// energies are along the frame axes the budgets refer to (chase, drive).
void write_trace_ndjson(std::ostream& out, const RunResult& result);
void write_trace_csv(std::ostream& out, const RunResult& result);

// Writes via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace pursuit
