// Copyright 2026 The qscen Authors
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

// Config documents for the qscen command-line tool (schema_version 1).

#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qscen/nonlocal.hpp"
#include "qscen/optics.hpp"
#include "qscen/qcore.hpp"
#include "qscen/scenarios.hpp"

namespace qscen::cli {

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating input. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, tsv };

/// Fields shared by every document.
struct Common {
  Format format = Format::json;
  std::optional<std::string> output;
  /// FNV-1a 64 of the canonical (sorted-key, compact) form of the document.
  std::string hash;
};

struct InlineScenario {
  std::vector<std::string> modes;
  std::vector<Element> elements;
  int max_total_photons = kDefaultMaxPhotons;
  PhotonInput input;
  DetectorPlan detectors;
  std::optional<ClickCondition> condition;
  std::optional<std::string> target;
};

struct RunConfig {
  Common common;
  /// "three-box", "hardy-default", "isomorphism" or "inline".
  std::string scenario;
  std::optional<Box> searched;
  Complex alpha{1.0 / std::numbers::sqrt2, 0.0};
  Complex beta{1.0 / std::numbers::sqrt2, 0.0};
  std::optional<InlineScenario> inline_scenario;
};

struct AblOutcome {
  std::string label;
  std::vector<std::vector<Complex>> span;  ///< orthonormal vectors spanning the outcome subspace
};

struct AblConfig {
  Common common;
  std::vector<Complex> pre;
  std::vector<Complex> post;
  std::vector<AblOutcome> outcomes;
};

struct ChshConfig {
  Common common;
  /// Amplitudes over (up up, up down, down up, down down).
  std::vector<Complex> state;
  std::optional<SpinMeasurementAngles> angles;
};

struct BehaviorConfig {
  Common common;
  std::size_t settings_a = 0;
  std::size_t settings_b = 0;
  std::size_t outcomes_a = 0;
  std::size_t outcomes_b = 0;
  std::vector<double> table;
};

/// Parses text into a JSON document; ConfigError carries "line L, column C".
nlohmann::json parse_document(const std::string& text);

RunConfig parse_run_config(const std::string& text);
AblConfig parse_abl_config(const std::string& text);
ChshConfig parse_chsh_config(const std::string& text);
BehaviorConfig parse_behavior(const std::string& text);

/// 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

}  // namespace qscen::cli
