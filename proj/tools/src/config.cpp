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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

namespace qscen::cli {

using nlohmann::json;

namespace {

// A view of one JSON value together with its path from the document root,
// so every schema complaint can name the offending field.
class Node {
 public:
  Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& raw() const { return *value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("schema error at " + path_ + ": " + what);
  }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!value_->is_object()) fail("expected an object");
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& item : value_->items()) {
      if (!known.count(item.key())) {
        throw ConfigError("schema error at " + path_ + "." + item.key() + ": unknown key");
      }
    }
  }

  bool has(const std::string& key) const { return value_->contains(key); }

  Node at(const std::string& key) const {
    if (!value_->contains(key)) {
      throw ConfigError("schema error at " + path_ + "." + key + ": missing required key");
    }
    return {(*value_)[key], path_ + "." + key};
  }

  std::size_t size() const {
    if (!value_->is_array()) fail("expected an array");
    return value_->size();
  }

  Node operator[](std::size_t i) const {
    return {(*value_)[i], path_ + "[" + std::to_string(i) + "]"};
  }

  std::string as_string() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
  }

  double as_number() const {
    if (!value_->is_number()) fail("expected a number");
    const double v = value_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  long long as_int(long long lo, long long hi) const {
    if (!value_->is_number_integer()) fail("expected an integer");
    const auto v = value_->get<long long>();
    if (v < lo || v > hi) {
      fail("expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  bool as_bool() const {
    if (!value_->is_boolean()) fail("expected true or false");
    return value_->get<bool>();
  }

  /// {"re": x, "im": y}; a bare number is read as a real value.
  Complex as_complex() const {
    if (value_->is_number()) return {as_number(), 0.0};
    expect_object({"re", "im"});
    const double re = has("re") ? at("re").as_number() : 0.0;
    const double im = has("im") ? at("im").as_number() : 0.0;
    return {re, im};
  }

  std::vector<Complex> as_complex_vector() const {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].as_complex());
    return out;
  }

 private:
  const json* value_;
  std::string path_;
};

Common read_common(const Node& root) {
  if (root.has("schema_version")) {
    if (root.at("schema_version").as_int(0, 1'000'000) != kSchemaVersion) {
      root.at("schema_version").fail("unsupported schema version (expected 1)");
    }
  }
  Common c;
  if (root.has("format")) {
    const auto f = root.at("format").as_string();
    if (f == "json") {
      c.format = Format::json;
    } else if (f == "tsv") {
      c.format = Format::tsv;
    } else {
      root.at("format").fail("expected \"json\" or \"tsv\"");
    }
  }
  if (root.has("output")) c.output = root.at("output").as_string();
  c.hash = fnv1a64(root.raw().dump());
  return c;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 0;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 0;
    } else {
      ++column;
    }
  }
  return {line, std::max(column, 1)};
}

double read_angle(const Node& n) { return n.as_number(); }

Element read_element(const Node& n) {
  if (!n.raw().is_object()) n.fail("expected an object");
  const auto type = n.at("type").as_string();
  if (type == "beam_splitter") {
    n.expect_object({"type", "modes", "theta", "phi"});
    const auto modes = n.at("modes");
    if (modes.size() != 2) modes.fail("expected two mode labels");
    BeamSplitter bs{modes[0].as_string(), modes[1].as_string(), read_angle(n.at("theta")), 0.0};
    if (n.has("phi")) bs.phi = read_angle(n.at("phi"));
    return bs;
  }
  if (type == "phase_shift") {
    n.expect_object({"type", "mode", "phi"});
    return PhaseShift{n.at("mode").as_string(), read_angle(n.at("phi"))};
  }
  n.at("type").fail("expected \"beam_splitter\" or \"phase_shift\"");
}

InlineScenario read_inline(const Node& n) {
  n.expect_object({"modes", "elements", "max_total_photons", "input", "detectors", "condition",
                   "target"});
  InlineScenario s;
  const auto modes = n.at("modes");
  for (std::size_t i = 0; i < modes.size(); ++i) s.modes.push_back(modes[i].as_string());
  if (n.has("elements")) {
    const auto els = n.at("elements");
    for (std::size_t i = 0; i < els.size(); ++i) s.elements.push_back(read_element(els[i]));
  }
  if (n.has("max_total_photons")) {
    s.max_total_photons = static_cast<int>(n.at("max_total_photons").as_int(1, 16));
  }
  if (n.has("input")) {
    const auto in = n.at("input");
    if (!in.raw().is_object()) in.fail("expected an object of mode -> photon count");
    for (const auto& item : in.raw().items()) {
      s.input[item.key()] = static_cast<int>(in.at(item.key()).as_int(0, 16));
    }
  }
  if (n.has("detectors")) {
    const auto det = n.at("detectors");
    if (!det.raw().is_object()) det.fail("expected an object of mode -> \"present\" | \"absent\"");
    for (const auto& item : det.raw().items()) {
      const auto v = det.at(item.key()).as_string();
      if (v == "present") {
        s.detectors[item.key()] = Detector::present;
      } else if (v == "absent") {
        s.detectors[item.key()] = Detector::absent;
      } else {
        det.at(item.key()).fail("expected \"present\" or \"absent\"");
      }
    }
  }
  if (n.has("condition")) {
    const auto cond = n.at("condition");
    if (!cond.raw().is_object()) cond.fail("expected an object of mode -> click (bool)");
    ClickCondition c;
    for (const auto& item : cond.raw().items()) c[item.key()] = cond.at(item.key()).as_bool();
    s.condition = std::move(c);
  }
  if (n.has("target")) s.target = n.at("target").as_string();
  if (s.condition && !s.target) n.fail("\"condition\" requires \"target\"");
  return s;
}

BlochAngles read_bloch(const Node& n) {
  n.expect_object({"theta", "phi"});
  return {read_angle(n.at("theta")), n.has("phi") ? read_angle(n.at("phi")) : 0.0};
}

std::vector<BlochAngles> read_party(const Node& n) {
  if (n.size() != 2) n.fail("expected two settings");
  return {read_bloch(n[0]), read_bloch(n[1])};
}

}  // namespace

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at line.., column..: " prefix.
    if (const auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ConfigError("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + what);
  }
}

RunConfig parse_run_config(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "$");
  root.expect_object({"schema_version", "format", "output", "scenario", "scenario_inline",
                      "searched", "alpha", "beta"});
  RunConfig c;
  c.common = read_common(root);
  const bool builtin = root.has("scenario");
  const bool inlined = root.has("scenario_inline");
  if (builtin == inlined) {
    throw ConfigError("schema error at $: exactly one of \"scenario\" and \"scenario_inline\" is required");
  }
  auto reject = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (root.has(k)) {
        throw ConfigError(std::string("schema error at $.") + k + ": not used by scenario '" +
                          c.scenario + "'");
      }
    }
  };
  if (inlined) {
    c.scenario = "inline";
    reject({"searched", "alpha", "beta"});
    c.inline_scenario = read_inline(root.at("scenario_inline"));
    return c;
  }
  c.scenario = root.at("scenario").as_string();
  if (c.scenario == "three-box") {
    reject({"alpha", "beta"});
    if (root.has("searched")) {
      const auto s = root.at("searched").as_string();
      if (s == "A") {
        c.searched = Box::A;
      } else if (s == "B") {
        c.searched = Box::B;
      } else if (s == "C") {
        c.searched = Box::C;
      } else if (s != "none") {
        root.at("searched").fail("expected \"A\", \"B\", \"C\" or \"none\"");
      }
    }
  } else if (c.scenario == "hardy-default") {
    reject({"searched", "alpha", "beta"});
  } else if (c.scenario == "isomorphism") {
    reject({"searched"});
    if (root.has("alpha")) c.alpha = root.at("alpha").as_complex();
    if (root.has("beta")) c.beta = root.at("beta").as_complex();
  } else {
    root.at("scenario").fail("unknown scenario (expected \"three-box\", \"hardy-default\" or \"isomorphism\")");
  }
  return c;
}

AblConfig parse_abl_config(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "$");
  root.expect_object({"schema_version", "format", "output", "pre", "post", "outcomes"});
  AblConfig c;
  c.common = read_common(root);
  c.pre = root.at("pre").as_complex_vector();
  c.post = root.at("post").as_complex_vector();
  if (c.pre.empty()) root.at("pre").fail("expected at least one amplitude");
  if (c.post.size() != c.pre.size()) root.at("post").fail("length differs from \"pre\"");
  const auto outs = root.at("outcomes");
  if (outs.size() == 0) outs.fail("expected at least one outcome");
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const auto o = outs[i];
    o.expect_object({"label", "span"});
    AblOutcome out{o.at("label").as_string(), {}};
    const auto span = o.at("span");
    for (std::size_t k = 0; k < span.size(); ++k) {
      out.span.push_back(span[k].as_complex_vector());
      if (out.span.back().size() != c.pre.size()) span[k].fail("length differs from \"pre\"");
    }
    c.outcomes.push_back(std::move(out));
  }
  return c;
}

ChshConfig parse_chsh_config(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "$");
  root.expect_object({"schema_version", "format", "output", "alpha", "beta", "state", "angles"});
  ChshConfig c;
  c.common = read_common(root);
  const bool pair = root.has("alpha") || root.has("beta");
  if (pair == root.has("state")) {
    throw ConfigError("schema error at $: give either \"alpha\"/\"beta\" or \"state\"");
  }
  if (pair) {
    const Complex a = root.at("alpha").as_complex();
    const Complex b = root.at("beta").as_complex();
    c.state = {0.0, a, b, 0.0};
  } else {
    c.state = root.at("state").as_complex_vector();
    if (c.state.size() != 4) root.at("state").fail("expected four amplitudes");
  }
  if (root.has("angles")) {
    const auto ang = root.at("angles");
    ang.expect_object({"alice", "bob"});
    c.angles = SpinMeasurementAngles{read_party(ang.at("alice")), read_party(ang.at("bob"))};
  }
  return c;
}

BehaviorConfig parse_behavior(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "$");
  root.expect_object({"schema_version", "format", "output", "settings", "outcomes", "table"});
  BehaviorConfig c;
  c.common = read_common(root);
  const auto settings = root.at("settings");
  const auto outcomes = root.at("outcomes");
  if (settings.size() != 2) settings.fail("expected [X, Y]");
  if (outcomes.size() != 2) outcomes.fail("expected [An, Bn]");
  c.settings_a = static_cast<std::size_t>(settings[0].as_int(1, 64));
  c.settings_b = static_cast<std::size_t>(settings[1].as_int(1, 64));
  c.outcomes_a = static_cast<std::size_t>(outcomes[0].as_int(1, 64));
  c.outcomes_b = static_cast<std::size_t>(outcomes[1].as_int(1, 64));
  const auto table = root.at("table");
  const std::size_t want = c.settings_a * c.settings_b * c.outcomes_a * c.outcomes_b;
  if (table.size() != want) {
    table.fail("expected " + std::to_string(want) + " entries in (x, y, a, b) row-major order");
  }
  for (std::size_t i = 0; i < want; ++i) c.table.push_back(table[i].as_number());
  return c;
}

}  // namespace qscen::cli
