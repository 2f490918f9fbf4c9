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

#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "qscen/errors.hpp"
#include "qscen/isomorphism.hpp"
#include "qscen/nonlocal.hpp"
#include "qscen/prepost.hpp"
#include "report.hpp"

namespace qscen::cli {

namespace {

Amplitudes to_amplitudes(const std::vector<Complex>& v) {
  Amplitudes a(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) a(static_cast<Eigen::Index>(i)) = v[i];
  return a;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string describe(const ClickCondition& c) {
  std::vector<std::string> parts;
  for (const auto& [mode, click] : c) parts.push_back(mode + (click ? "=click" : "=dark"));
  return parts.empty() ? "none" : join(parts, ",");
}

std::string setting_label(std::size_t x, std::size_t y) {
  return "x=" + std::to_string(x) + ",y=" + std::to_string(y);
}

std::vector<std::string> pair_outcomes(std::size_t an, std::size_t bn) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < an; ++a) {
    for (std::size_t b = 0; b < bn; ++b) out.push_back("a=" + std::to_string(a) + ",b=" + std::to_string(b));
  }
  return out;
}

DistributionTable behavior_table(const std::string& name, const BipartiteBehavior& p) {
  DistributionTable t{name, pair_outcomes(p.outcomes_a(), p.outcomes_b()), {}};
  for (std::size_t x = 0; x < p.settings_a(); ++x) {
    for (std::size_t y = 0; y < p.settings_b(); ++y) {
      std::vector<double> row;
      for (std::size_t a = 0; a < p.outcomes_a(); ++a) {
        for (std::size_t b = 0; b < p.outcomes_b(); ++b) row.push_back(p(x, y, a, b));
      }
      t.rows.push_back({setting_label(x, y), std::move(row)});
    }
  }
  return t;
}

ValueTable angle_table(const std::string& name, const SpinMeasurementAngles& ang) {
  ValueTable t{name, {"theta", "phi"}, {}};
  for (std::size_t x = 0; x < ang.alice.size(); ++x) {
    t.rows.push_back({"alice x=" + std::to_string(x), {ang.alice[x].theta, ang.alice[x].phi}});
  }
  for (std::size_t y = 0; y < ang.bob.size(); ++y) {
    t.rows.push_back({"bob y=" + std::to_string(y), {ang.bob[y].theta, ang.bob[y].phi}});
  }
  return t;
}

std::string strategy_label(const DeterministicStrategy& s) {
  std::vector<std::string> a;
  std::vector<std::string> b;
  for (auto v : s.alice) a.push_back(std::to_string(v));
  for (auto v : s.bob) b.push_back(std::to_string(v));
  return "a(x)=(" + join(a, ",") + ") b(y)=(" + join(b, ",") + ")";
}

void add_membership(ScenarioResult& out, const BipartiteBehavior& p) {
  const auto m = lhv_membership(p);
  if (m.verdict == Verdict::feasible) {
    out.metadata.emplace_back("lhv_verdict", "feasible");
    out.values.emplace_back("lhv_reconstruction_error", m.reconstruction_error);
    ValueTable w{"lhv_weights", {"weight"}, {}};
    for (std::size_t k = 0; k < m.strategies.size(); ++k) {
      if (m.weights[k] > 0.0) w.rows.push_back({strategy_label(m.strategies[k]), {m.weights[k]}});
    }
    out.tables.push_back(std::move(w));
    return;
  }
  out.metadata.emplace_back("lhv_verdict", "infeasible");
  const auto& c = *m.certificate;
  const auto vmax = certificate_vertex_max(c, p.settings_a(), p.settings_b(), p.outcomes_a(), p.outcomes_b());
  out.values.emplace_back("lhv_local_bound", c.local_bound);
  out.values.emplace_back("lhv_certificate_value", c.behavior_value);
  out.values.emplace_back("lhv_certificate_vertex_max",
                          static_cast<double>(vmax) / static_cast<double>(c.denominator));
  out.values.emplace_back("lhv_certificate_denominator", static_cast<double>(c.denominator));
  ValueTable cert{"lhv_certificate", {"coefficient", "numerator"}, {}};
  for (std::size_t x = 0; x < p.settings_a(); ++x) {
    for (std::size_t y = 0; y < p.settings_b(); ++y) {
      for (std::size_t a = 0; a < p.outcomes_a(); ++a) {
        for (std::size_t b = 0; b < p.outcomes_b(); ++b) {
          const auto k = p.offset(x, y, a, b);
          cert.rows.push_back({setting_label(x, y) + ",a=" + std::to_string(a) + ",b=" + std::to_string(b),
                               {c.coefficients[k], static_cast<double>(c.numerators[k])}});
        }
      }
    }
  }
  out.tables.push_back(std::move(cert));
}

ScenarioResult run_inline(const InlineScenario& s) {
  ScenarioResult out;
  out.scenario = "inline";
  const ModeCircuit circuit(s.modes, s.elements, s.max_total_photons);
  const auto state = run_circuit(circuit, s.input);
  const auto present = present_modes(state.space(), s.detectors);
  out.metadata.emplace_back("modes", join(s.modes, ","));
  out.metadata.emplace_back("present_detectors", present.empty() ? "none" : join(present, ","));
  out.values.emplace_back("mean_photon_number", mean_photon_number(state));
  const auto clicks = click_distribution(state, s.detectors);
  out.distributions.push_back({"clicks", clicks.labels(), {{"plan", clicks.probabilities()}}});
  if (s.target) {
    const ClickCondition cond = s.condition.value_or(ClickCondition{});
    out.metadata.emplace_back("condition", describe(cond));
    out.metadata.emplace_back("target", *s.target);
    out.values.emplace_back("conditional_click", conditional_click(state, s.detectors, cond, *s.target));
  }
  return out;
}

struct Prepared {
  Common common;
  ScenarioResult result;
};

Prepared dispatch(Command command, const std::string& text) {
  switch (command) {
    case Command::run: {
      auto c = parse_run_config(text);
      return {c.common, run_scenario(c)};
    }
    case Command::abl: {
      auto c = parse_abl_config(text);
      return {c.common, run_abl(c)};
    }
    case Command::chsh: {
      auto c = parse_chsh_config(text);
      return {c.common, run_chsh(c)};
    }
    case Command::lhv_check: {
      auto c = parse_behavior(text);
      return {c.common, run_lhv_check(c)};
    }
  }
  throw StructuralError("unknown command");
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::run:
      return "run";
    case Command::abl:
      return "abl";
    case Command::chsh:
      return "chsh";
    case Command::lhv_check:
      return "lhv-check";
  }
  return "?";
}

ScenarioResult run_scenario(const RunConfig& c) {
  if (c.scenario == "three-box") return three_box(c.searched);
  if (c.scenario == "hardy-default") return hardy_conditionals(hardy_default());
  if (c.scenario == "isomorphism") return isomorphism_demo(c.alpha, c.beta);
  if (c.scenario == "inline") return run_inline(*c.inline_scenario);
  throw ConfigError("unknown scenario '" + c.scenario + "'");
}

ScenarioResult run_abl(const AblConfig& c) {
  const CompositeSpace space({SubsystemSpec::position("index", static_cast<int>(c.pre.size()))});
  const PrePostEnsemble ensemble(StateVector(space, to_amplitudes(c.pre)),
                                 StateVector(space, to_amplitudes(c.post)));
  std::vector<LinearOperator> projectors;
  std::vector<std::string> labels;
  for (const auto& o : c.outcomes) {
    std::vector<StateVector> span;
    for (const auto& v : o.span) span.emplace_back(space, to_amplitudes(v));
    projectors.push_back(projector_onto(span));
    labels.push_back(o.label);
  }
  const ProjectiveMeasurement m(std::move(projectors), labels);

  ScenarioResult out;
  out.scenario = "abl";
  out.values.emplace_back("postselection_probability", std::norm(ensemble.overlap()));
  const auto born = born_probabilities(ensemble.pre(), m);
  out.distributions.push_back({"born_pre", born.labels(), {{"pre", born.probabilities()}}});
  const auto amps = branch_amplitudes(ensemble, m);
  ValueTable branches{"branch_amplitudes", {"re", "im", "abs2"}, {}};
  for (std::size_t k = 0; k < amps.size(); ++k) {
    branches.rows.push_back({labels[k], {amps[k].real(), amps[k].imag(), std::norm(amps[k])}});
  }
  out.tables.push_back(std::move(branches));
  const auto abl = abl_probabilities(ensemble, m);
  out.distributions.push_back({"abl", abl.labels(), {{"pre, post", abl.probabilities()}}});
  return out;
}

ScenarioResult run_chsh(const ChshConfig& c) {
  const CompositeSpace space({SubsystemSpec::spin_half("A"), SubsystemSpec::spin_half("B")});
  const StateVector state(space, to_amplitudes(c.state));
  if (!state.is_unit()) throw ValidationError("state must have unit norm");
  ScenarioResult out;
  out.scenario = "chsh";
  const auto best = chsh_max(state);
  out.values.emplace_back("chsh_max", best.value);
  out.tables.push_back(angle_table("chsh_max_angles", best.angles));
  const SpinMeasurementAngles& used = c.angles ? *c.angles : best.angles;
  out.metadata.emplace_back("angles", c.angles ? "given" : "optimal");
  const auto behavior = behavior_from_state(state, used);
  if (c.angles) {
    out.values.emplace_back("chsh_value", chsh_value(behavior));
    out.tables.push_back(angle_table("given_angles", used));
  }
  out.distributions.push_back(behavior_table("behavior", behavior));
  add_membership(out, behavior);
  return out;
}

ScenarioResult run_lhv_check(const BehaviorConfig& c) {
  const BipartiteBehavior p(c.settings_a, c.settings_b, c.outcomes_a, c.outcomes_b, c.table);
  ScenarioResult out;
  out.scenario = "lhv-check";
  if (p.settings_a() == 2 && p.settings_b() == 2 && p.outcomes_a() == 2 && p.outcomes_b() == 2) {
    out.values.emplace_back("chsh_value", chsh_value(p));
  }
  add_membership(out, p);
  return out;
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const std::string prefix = std::string("qscen ") + command_name(inv.command) + ": ";
  try {
    auto [common, result] = dispatch(inv.command, inv.config_text);
    const Format format = inv.format.value_or(common.format);
    const auto output = inv.output ? inv.output : common.output;
    const std::string text = render(format, {command_name(inv.command), common.hash}, result);
    if (output && *output != "-") {
      std::ofstream file(*output, std::ios::binary);
      if (!file || !(file << text) || !file.flush()) {
        err << prefix << "cannot write '" << *output << "'\n";
        return kExitConfigError;
      }
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << prefix << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << prefix << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const StructuralError& e) {
    err << prefix << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << prefix << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  }
}

}  // namespace qscen::cli
