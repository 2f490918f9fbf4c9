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

#include "report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace qscen::cli {

namespace {

std::string quote(const std::string& s) {
  return nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string cell(const std::optional<double>& v, bool undefined) {
  if (v) return format_number(*v);
  return undefined ? "\"undefined\"" : "null";
}

template <typename T, typename F>
std::string inline_list(const std::vector<T>& items, F&& each) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += each(items[i]);
  }
  return out + "]";
}

std::string tsv_field(std::string s) {
  for (auto& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void tsv_line(std::string& out, const std::string& section, const std::string& name,
              const std::string& label, const std::string& column, const std::string& value) {
  out += tsv_field(section) + '\t' + tsv_field(name) + '\t' + tsv_field(label) + '\t' +
         tsv_field(column) + '\t' + tsv_field(value) + '\n';
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_json(const ReportHeader& header, const ScenarioResult& r) {
  std::string o = "{\n";
  o += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
  o += "  \"command\": " + quote(header.command) + ",\n";
  o += "  \"scenario\": " + quote(r.scenario) + ",\n";
  o += "  \"config_hash\": " + quote(header.config_hash) + ",\n";
  if (r.reconstruction_tag) o += "  \"reconstruction_tag\": " + quote(*r.reconstruction_tag) + ",\n";

  o += "  \"metadata\": {";
  for (std::size_t i = 0; i < r.metadata.size(); ++i) {
    o += (i ? ",\n    " : "\n    ") + quote(r.metadata[i].first) + ": " + quote(r.metadata[i].second);
  }
  o += r.metadata.empty() ? "},\n" : "\n  },\n";

  o += "  \"values\": {";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    o += (i ? ",\n    " : "\n    ") + quote(r.values[i].first) + ": " + format_number(r.values[i].second);
  }
  o += r.values.empty() ? "},\n" : "\n  },\n";

  o += "  \"tables\": [";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const auto& tab = r.tables[t];
    o += t ? ",\n    {\n" : "\n    {\n";
    o += "      \"name\": " + quote(tab.name) + ",\n";
    o += "      \"columns\": " + inline_list(tab.columns, quote) + ",\n";
    o += "      \"rows\": [";
    for (std::size_t k = 0; k < tab.rows.size(); ++k) {
      const auto& row = tab.rows[k];
      o += (k ? ",\n        " : "\n        ");
      o += "{\"label\": " + quote(row.label) + ", \"values\": " +
           inline_list(row.values, [&](const std::optional<double>& v) { return cell(v, row.undefined); }) +
           "}";
    }
    o += tab.rows.empty() ? "]\n    }" : "\n      ]\n    }";
  }
  o += r.tables.empty() ? "],\n" : "\n  ],\n";

  o += "  \"distributions\": [";
  for (std::size_t d = 0; d < r.distributions.size(); ++d) {
    const auto& dist = r.distributions[d];
    o += d ? ",\n    {\n" : "\n    {\n";
    o += "      \"name\": " + quote(dist.name) + ",\n";
    o += "      \"outcomes\": " + inline_list(dist.outcomes, quote) + ",\n";
    o += "      \"rows\": [";
    for (std::size_t k = 0; k < dist.rows.size(); ++k) {
      const auto& row = dist.rows[k];
      o += (k ? ",\n        " : "\n        ");
      o += "{\"condition\": " + quote(row.condition) + ", \"probabilities\": ";
      o += row.probabilities ? inline_list(*row.probabilities, format_number) : "\"undefined\"";
      o += "}";
    }
    o += dist.rows.empty() ? "]\n    }" : "\n      ]\n    }";
  }
  o += r.distributions.empty() ? "]\n" : "\n  ]\n";
  return o + "}\n";
}

std::string render_tsv(const ReportHeader& header, const ScenarioResult& r) {
  std::string o;
  tsv_line(o, "section", "name", "label", "column", "value");
  tsv_line(o, "header", "schema_version", "", "", std::to_string(kSchemaVersion));
  tsv_line(o, "header", "command", "", "", header.command);
  tsv_line(o, "header", "scenario", "", "", r.scenario);
  tsv_line(o, "header", "config_hash", "", "", header.config_hash);
  if (r.reconstruction_tag) tsv_line(o, "header", "reconstruction_tag", "", "", *r.reconstruction_tag);
  for (const auto& [k, v] : r.metadata) tsv_line(o, "metadata", k, "", "", v);
  for (const auto& [k, v] : r.values) tsv_line(o, "value", k, "", "", format_number(v));
  for (const auto& tab : r.tables) {
    for (const auto& row : tab.rows) {
      for (std::size_t c = 0; c < tab.columns.size(); ++c) {
        const auto& v = row.values.at(c);
        tsv_line(o, "table", tab.name, row.label, tab.columns[c],
                 v ? format_number(*v) : (row.undefined ? "undefined" : "NA"));
      }
    }
  }
  for (const auto& dist : r.distributions) {
    for (const auto& row : dist.rows) {
      for (std::size_t c = 0; c < dist.outcomes.size(); ++c) {
        tsv_line(o, "distribution", dist.name, row.condition, dist.outcomes[c],
                 row.probabilities ? format_number(row.probabilities->at(c)) : "undefined");
      }
    }
  }
  return o;
}

std::string render(Format format, const ReportHeader& header, const ScenarioResult& result) {
  return format == Format::json ? render_json(header, result) : render_tsv(header, result);
}

}  // namespace qscen::cli
