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

#include "qscen/scenarios.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "qscen/errors.hpp"
#include "qscen/isomorphism.hpp"

namespace qscen {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename T>
const T& find_named(const std::vector<T>& items, const std::string& name, const char* kind) {
  for (const auto& item : items) {
    if (item.name == name) return item;
  }
  throw StructuralError(std::string("no ") + kind + " named '" + name + "'");
}

}  // namespace

double ScenarioResult::value(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw StructuralError("no value named '" + name + "'");
}

const std::string& ScenarioResult::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  throw StructuralError("no metadata key '" + key + "'");
}

const ValueTable& ScenarioResult::table(const std::string& name) const {
  return find_named(tables, name, "table");
}

const DistributionTable& ScenarioResult::distribution(const std::string& name) const {
  return find_named(distributions, name, "distribution");
}

// --- three boxes -----------------------------------------------------------

namespace {

const char* box_name(Box b) {
  switch (b) {
    case Box::A:
      return "A";
    case Box::B:
      return "B";
    case Box::C:
      return "C";
  }
  return "?";
}

}  // namespace

const CompositeSpace& box_space() {
  static const CompositeSpace space({SubsystemSpec::position("box", 3)});
  return space;
}

StateVector box_state(Box box) {
  return StateVector::basis(box_space(), static_cast<std::size_t>(box));
}

StateVector three_box_pre() {
  Amplitudes a(3);
  a << 1.0, 1.0, 1.0;
  return StateVector::normalized(box_space(), a);
}

StateVector three_box_post() {
  Amplitudes a(3);
  a << 1.0, 1.0, -1.0;
  return StateVector::normalized(box_space(), a);
}

LinearOperator box_projector(Box box) { return projector_onto({box_state(box)}); }

ScenarioResult three_box(std::optional<Box> searched) {
  ScenarioResult out;
  out.scenario = "three-box";
  const auto pre = three_box_pre();
  const auto post = three_box_post();
  out.metadata.emplace_back("pre", "(|A> + |B> + |C>)/sqrt(3)");
  out.metadata.emplace_back("post", "(|A> + |B> - |C>)/sqrt(3)");
  out.metadata.emplace_back("searched", searched ? box_name(*searched) : "none");
  out.values.emplace_back("postselection_probability", std::norm(inner(post, pre)));

  if (!searched) {
    const ProjectiveMeasurement where({box_projector(Box::A), box_projector(Box::B),
                                       box_projector(Box::C)},
                                      {"A", "B", "C"});
    const auto born = born_probabilities(pre, where);
    out.distributions.push_back({"born_pre", born.labels(), {{"pre", born.probabilities()}}});
    return out;
  }

  const std::string name = box_name(*searched);
  const auto measurement = ProjectiveMeasurement::binary(
      box_projector(*searched), "found in " + name, "not found in " + name);
  const PrePostEnsemble ensemble(pre, post);
  const auto abl = abl_probabilities(ensemble, measurement);
  const auto amps = branch_amplitudes(ensemble, measurement);

  out.values.emplace_back("probability_found", abl[0]);
  out.values.emplace_back("probability_not_found", abl[1]);
  out.distributions.push_back({"abl", abl.labels(), {{"pre, post", abl.probabilities()}}});

  ValueTable branches{"branch_amplitudes", {"re", "im", "abs2"}, {}};
  std::string vanishing = "none";
  for (std::size_t k = 0; k < amps.size(); ++k) {
    branches.rows.push_back(
        {abl.labels()[k], {amps[k].real(), amps[k].imag(), std::norm(amps[k])}});
    if (std::abs(amps[k]) <= kTolerance) vanishing = abl.labels()[k];
  }
  out.tables.push_back(std::move(branches));
  out.metadata.emplace_back("vanishing_branch", vanishing);

  // Not finding the particle leaves the collapsed state; report its overlap
  // with the post-selected state.
  const auto miss = LinearOperator::identity(box_space()) - box_projector(*searched);
  const auto collapsed = postselect(pre, miss);
  const Complex overlap = inner(post, collapsed.state);
  out.values.emplace_back("miss_probability", collapsed.probability);
  out.values.emplace_back("miss_overlap_with_post_abs", std::abs(overlap));
  return out;
}

// --- Hardy -------------------------------------------------------------------

const std::vector<std::string>& hardy_modes() {
  static const std::vector<std::string> modes{"s",  "a1", "a2", "u1", "u2",
                                              "f1", "f2", "g1", "g2"};
  return modes;
}

int hardy_site_of(const std::string& mode) {
  if (mode == "s") return 0;
  if (mode.size() == 2 && (mode[1] == '1' || mode[1] == '2')) return mode[1] - '0';
  throw StructuralError("'" + mode + "' is not a Hardy mode");
}

void check_site_partition(const ModeCircuit& circuit) {
  bool source_stage = true;
  for (const auto& e : circuit.elements()) {
    std::set<int> sites;
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      sites = {hardy_site_of(bs->mode_i), hardy_site_of(bs->mode_j)};
    } else {
      sites = {hardy_site_of(std::get<PhaseShift>(e).mode)};
    }
    const bool touches_source = sites.count(0) > 0;
    if (touches_source) {
      if (!source_stage) throw ValidationError("element on s after the site stage began");
      continue;
    }
    source_stage = false;
    if (sites.size() != 1) throw ValidationError("element couples the two sites");
  }
}

ModeCircuit HardyScenario::circuit_for(bool u1, bool u2) const {
  std::vector<Element> elements;
  elements.push_back(BeamSplitter{"s", "u2", source_theta, 0.0});
  elements.push_back(BeamSplitter{"s", "u1", kPi / 2, 0.0});
  const std::array<bool, 2> present{u1, u2};
  for (int i = 0; i < 2; ++i) {
    const std::string k = std::to_string(i + 1);
    const auto& site = sites[static_cast<std::size_t>(i)];
    if (!present[static_cast<std::size_t>(i)]) {
      elements.push_back(BeamSplitter{"u" + k, "g" + k, kPi / 2, 0.0});
    }
    elements.push_back(BeamSplitter{"a" + k, "f" + k, kPi / 2, 0.0});
    elements.push_back(BeamSplitter{"f" + k, "g" + k, site.mixer_theta, site.mixer_phi});
    elements.push_back(BeamSplitter{"f" + k, "g" + k, site.final_theta, site.final_phi});
  }
  return ModeCircuit(hardy_modes(), std::move(elements), kDefaultMaxPhotons);
}

DetectorPlan HardyScenario::plan_for(bool u1, bool u2) const {
  return {{"u1", u1 ? Detector::present : Detector::absent},
          {"u2", u2 ? Detector::present : Detector::absent},
          {"f1", Detector::present},
          {"g1", Detector::present},
          {"f2", Detector::present},
          {"g2", Detector::present}};
}

double hardy_f_probability(const HardyScenario& scenario, const StateVector& state) {
  ClickCondition both = scenario.f_patterns[0];
  both.insert(scenario.f_patterns[1].begin(), scenario.f_patterns[1].end());
  return pattern_probability(state, both);
}

namespace {

struct HardyConfig {
  bool u1;
  bool u2;
};

constexpr std::array<HardyConfig, 4> kConfigs{
    {{false, false}, {true, false}, {false, true}, {true, true}}};

std::string config_label(const HardyConfig& c) {
  return std::string("U1=") + (c.u1 ? "present" : "absent") + ",U2=" + (c.u2 ? "present" : "absent");
}

ClickCondition f_both(const HardyScenario& scenario) {
  ClickCondition both = scenario.f_patterns[0];
  both.insert(scenario.f_patterns[1].begin(), scenario.f_patterns[1].end());
  return both;
}

// P(U_i clicks | F1 = F2 = 1) for the given configuration; nullopt if the
// condition is null.
std::optional<double> certainty(const HardyScenario& scenario, const HardyConfig& config,
                                const std::string& target) {
  const auto state = run_circuit(scenario.circuit_for(config.u1, config.u2), scenario.input);
  try {
    return conditional_click(state, scenario.plan_for(config.u1, config.u2), f_both(scenario),
                             target);
  } catch (const ConditioningError&) {
    return std::nullopt;
  }
}

std::string describe(const HardyScenario& s) {
  char buf[640];
  std::snprintf(
      buf, sizeof buf,
      "reconstruction: interferometer internals chosen here, not taken from the source "
      "argument; source splitter s->u1/u2 theta=%.6f; U_i absorbs u_i when present, "
      "otherwise u_i feeds g_i; a_i coupled into f_i; site mixer f_i/g_i theta=%.6f "
      "phi=%.6f; site final f_i/g_i theta=%.6f phi=%.6f; inputs one photon each in "
      "s, a1, a2; F_i=1 iff g_i clicks and f_i does not; max_total_photons=%d",
      s.source_theta, s.sites[0].mixer_theta, s.sites[0].mixer_phi, s.sites[0].final_theta,
      s.sites[0].final_phi, kDefaultMaxPhotons);
  return buf;
}

}  // namespace

HardyScenario hardy_default() {
  HardyScenario s;
  s.source_theta = kPi / 4;
  for (auto& site : s.sites) site = {kPi / 4, 0.0, kPi / 4, 0.0};
  s.f_patterns[0] = {{"f1", false}, {"g1", true}};
  s.f_patterns[1] = {{"f2", false}, {"g2", true}};
  s.input = {{"s", 1}, {"a1", 1}, {"a2", 1}};
  s.reconstruction_tag = describe(s);
  validate_reconstruction(s);
  return s;
}

void validate_reconstruction(const HardyScenario& s) {
  for (const auto& c : kConfigs) check_site_partition(s.circuit_for(c.u1, c.u2));
  const auto first = certainty(s, {true, false}, "u1");
  const auto second = certainty(s, {false, true}, "u2");
  if (!first || !second || std::abs(*first - 1.0) > kTolerance ||
      std::abs(*second - 1.0) > kTolerance) {
    throw ReconstructionError(
        "reconstruction invalid: the Hardy circuit does not reproduce both conditional "
        "certainties");
  }
}

ScenarioResult hardy_conditionals(const HardyScenario& scenario) {
  ScenarioResult out;
  out.scenario = "hardy-default";
  out.reconstruction_tag = scenario.reconstruction_tag;
  out.metadata.emplace_back("condition", "F1=1,F2=1");
  out.metadata.emplace_back("F1", "g1 clicks, f1 dark");
  out.metadata.emplace_back("F2", "g2 clicks, f2 dark");

  ValueTable summary{"hardy_conditionals",
                     {"P(F1=1,F2=1)", "P(u1|F1=1,F2=1)", "P(u2|F1=1,F2=1)",
                      "P(u1&u2|F1=1,F2=1)"},
                     {}};
  DistributionTable f_joint{"F_joint", {"F1=0,F2=0", "F1=0,F2=1", "F1=1,F2=0", "F1=1,F2=1"}, {}};
  DistributionTable site1{"site1_marginal_f1g1", {"00", "01", "10", "11"}, {}};
  const auto condition = f_both(scenario);

  for (const auto& c : kConfigs) {
    const auto state = run_circuit(scenario.circuit_for(c.u1, c.u2), scenario.input);
    const double p_f = pattern_probability(state, condition);
    const bool defined = p_f > kNullEventCutoff;

    auto conditional = [&](const ClickCondition& extra) -> std::optional<double> {
      if (!defined) return std::nullopt;
      auto joint = condition;
      joint.insert(extra.begin(), extra.end());
      return pattern_probability(state, joint) / p_f;
    };
    ValueTable::Row row{config_label(c), {p_f, std::nullopt, std::nullopt, std::nullopt}, !defined};
    if (c.u1) row.values[1] = conditional({{"u1", true}});
    if (c.u2) row.values[2] = conditional({{"u2", true}});
    if (c.u1 && c.u2) row.values[3] = conditional({{"u1", true}, {"u2", true}});
    summary.rows.push_back(std::move(row));

    // Distribution of the present U detectors given F1 = F2 = 1.
    std::vector<std::string> u_modes;
    if (c.u1) u_modes.emplace_back("u1");
    if (c.u2) u_modes.emplace_back("u2");
    DistributionTable u_given{"U_given_F1F2[" + config_label(c) + "]", {}, {}};
    if (u_modes.empty()) {
      u_given.outcomes = {"no measurement"};
      u_given.rows.push_back(
          {"F1=1,F2=1", defined ? std::optional(std::vector<double>{1.0}) : std::nullopt});
    } else {
      const std::size_t n = u_modes.size();
      std::vector<double> probs;
      for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
        std::string label;
        ClickCondition extra;
        for (std::size_t k = 0; k < n; ++k) {
          const bool click = (pattern >> (n - 1 - k)) & 1U;
          label += click ? '1' : '0';
          extra[u_modes[k]] = click;
        }
        u_given.outcomes.push_back(label);
        if (defined) probs.push_back(*conditional(extra));
      }
      u_given.rows.push_back({"F1=1,F2=1", defined ? std::optional(probs) : std::nullopt});
    }
    out.distributions.push_back(std::move(u_given));

    // F_i = 0 is the complement of the F_i pattern.
    const double p1 = pattern_probability(state, scenario.f_patterns[0]);
    const double p2 = pattern_probability(state, scenario.f_patterns[1]);
    const std::vector<double> fj{1.0 - p1 - p2 + p_f, p2 - p_f, p1 - p_f, p_f};
    f_joint.rows.push_back({config_label(c), fj});

    const auto marginal = click_distribution(state, {{"f1", Detector::present},
                                                     {"g1", Detector::present}});
    site1.rows.push_back({config_label(c), marginal.probabilities()});
  }
  out.tables.push_back(std::move(summary));
  out.distributions.push_back(std::move(f_joint));
  out.distributions.push_back(std::move(site1));
  return out;
}

// --- isomorphism -------------------------------------------------------------

ScenarioResult isomorphism_demo(Complex alpha, Complex beta) {
  ScenarioResult out;
  out.scenario = "isomorphism";
  const auto site_state = photon_to_spins(alpha, beta);
  const auto spins = spin_pair(site_state);

  ValueTable amps{"two_spin_amplitudes", {"re", "im"}, {}};
  const std::array<const char*, 4> names{"up,up", "up,down", "down,up", "down,down"};
  for (std::size_t k = 0; k < 4; ++k) {
    amps.rows.push_back({names[k], {spins.amplitude(k).real(), spins.amplitude(k).imag()}});
  }
  out.tables.push_back(std::move(amps));

  const std::array<std::size_t, 2> site_a{0, 1};
  const std::array<std::size_t, 1> spin_a{0};
  const auto photon_schmidt = schmidt_coefficients(photon_state(alpha, beta), site_a);
  const auto spin_schmidt = schmidt_coefficients(spins, spin_a);
  out.tables.push_back({"schmidt_coefficients",
                        {"first", "second"},
                        {{"photon", {photon_schmidt[0], photon_schmidt[1]}},
                         {"spins", {spin_schmidt[0], spin_schmidt[1]}}}});

  const auto optimum = chsh_max(spins);
  out.values.emplace_back("chsh_max", optimum.value);
  ValueTable angles{"chsh_angles", {"theta", "phi"}, {}};
  for (std::size_t x = 0; x < 2; ++x) {
    angles.rows.push_back({"alice x=" + std::to_string(x),
                           {optimum.angles.alice[x].theta, optimum.angles.alice[x].phi}});
  }
  for (std::size_t y = 0; y < 2; ++y) {
    angles.rows.push_back({"bob y=" + std::to_string(y),
                           {optimum.angles.bob[y].theta, optimum.angles.bob[y].phi}});
  }
  out.tables.push_back(std::move(angles));

  const auto behavior = behavior_from_state(spins, optimum.angles);
  DistributionTable table{"chsh_behavior", {"a=0,b=0", "a=0,b=1", "a=1,b=0", "a=1,b=1"}, {}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      table.rows.push_back({"x=" + std::to_string(x) + ",y=" + std::to_string(y),
                            std::vector<double>{behavior(x, y, 0, 0), behavior(x, y, 0, 1),
                                                behavior(x, y, 1, 0), behavior(x, y, 1, 1)}});
    }
  }
  out.distributions.push_back(std::move(table));

  const auto membership = lhv_membership(behavior);
  if (membership.verdict == Verdict::feasible) {
    out.metadata.emplace_back("lhv_verdict", "feasible");
    out.values.emplace_back("lhv_reconstruction_error", membership.reconstruction_error);
  } else {
    out.metadata.emplace_back("lhv_verdict", "infeasible");
    const auto& cert = *membership.certificate;
    out.values.emplace_back("lhv_local_bound", cert.local_bound);
    out.values.emplace_back("lhv_certificate_value", cert.behavior_value);
  }
  return out;
}

}  // namespace qscen
