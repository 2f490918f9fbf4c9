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

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"
#include "qscen/scenarios.hpp"

namespace qscen::cli {

enum class Command { run, abl, chsh, lhv_check };

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioError = 1;
inline constexpr int kExitConfigError = 2;

const char* command_name(Command c);

struct Invocation {
  Command command = Command::run;
  std::string config_text;
  /// Override the document's "format" / "output" fields.
  std::optional<Format> format;
  std::optional<std::string> output;
};

ScenarioResult run_scenario(const RunConfig& config);
ScenarioResult run_abl(const AblConfig& config);
ScenarioResult run_chsh(const ChshConfig& config);
ScenarioResult run_lhv_check(const BehaviorConfig& config);

/// Parses, runs and writes the report (to the output path, else `out`).
/// Diagnostics go to `err`. Returns the process exit code.
int execute(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace qscen::cli
