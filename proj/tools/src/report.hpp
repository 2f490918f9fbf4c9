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

// Byte-stable rendering of scenario results.

#pragma once

#include <string>

#include "config.hpp"
#include "qscen/scenarios.hpp"

namespace qscen::cli {

struct ReportHeader {
  std::string command;
  std::string config_hash;
};

/// Fixed-point with 12 decimals; negative zero prints as zero.
std::string format_number(double v);

/// Fixed key order: schema_version, command, scenario, config_hash,
/// reconstruction_tag (when present), metadata, values, tables, distributions.
std::string render_json(const ReportHeader& header, const ScenarioResult& result);

/// Long format with header "section\tname\tlabel\tcolumn\tvalue".
std::string render_tsv(const ReportHeader& header, const ScenarioResult& result);

std::string render(Format format, const ReportHeader& header, const ScenarioResult& result);

}  // namespace qscen::cli
