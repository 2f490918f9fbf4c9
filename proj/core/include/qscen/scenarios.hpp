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

// Ready-to-run scenarios and the tables they report.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qscen/nonlocal.hpp"
#include "qscen/optics.hpp"
#include "qscen/prepost.hpp"
#include "qscen/qcore.hpp"

namespace qscen {

/// Free-form numeric table; a missing value reads as "undefined".
struct ValueTable {
  struct Row {
    std::string label;
    /// Empty cells are quantities not measured in this row.
    std::vector<std::optional<double>> values;
    /// Set when the row's conditioning event is null; empty cells then read "undefined".
    bool undefined = false;
  };
  std::string name;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

/// Each row is a distribution over `outcomes` (sums to 1) or undefined when
/// its condition has probability zero.
struct DistributionTable {
  struct Row {
    std::string condition;
    std::optional<std::vector<double>> probabilities;
  };
  std::string name;
  std::vector<std::string> outcomes;
  std::vector<Row> rows;
};

struct ScenarioResult {
  std::string scenario;
  std::optional<std::string> reconstruction_tag;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::pair<std::string, double>> values;
  std::vector<ValueTable> tables;
  std::vector<DistributionTable> distributions;

  /// StructuralError when the name is missing.
  double value(const std::string& name) const;
  const std::string& meta(const std::string& key) const;
  const ValueTable& table(const std::string& name) const;
  const DistributionTable& distribution(const std::string& name) const;
};

// --- three boxes -----------------------------------------------------------

enum class Box { A, B, C };

/// One particle, position subsystem with boxes A, B, C (indices 0, 1, 2).
const CompositeSpace& box_space();
StateVector box_state(Box box);
/// (|A> + |B> + |C>) / sqrt(3)
StateVector three_box_pre();
/// (|A> + |B> - |C>) / sqrt(3)
StateVector three_box_post();
LinearOperator box_projector(Box box);

/// ABL table for {P_searched, 1 - P_searched} with the branch amplitudes, or
/// the Born table of the pre-selected state over {A, B, C} when nothing is
/// searched.
ScenarioResult three_box(std::optional<Box> searched);

// --- Hardy's two-site interferometer (reconstruction) ----------------------

struct HardySite {
  double mixer_theta = 0.0;
  double mixer_phi = 0.0;
  double final_theta = 0.0;
  double final_phi = 0.0;
};

/// Modes s, a1, a2, u1, u2, f1, f2, g1, g2. The source splitter sends the s
/// photon into u1 or u2. A present U_i detector absorbs whatever arrives in u_i;
/// without it, u_i feeds the site interferometer at g_i, where it meets the
/// a_i photon (coupled into f_i) on the mixer and then the final splitter,
/// whose outputs f_i and g_i carry the F/G detectors.
struct HardyScenario {
  double source_theta = 0.0;
  std::array<HardySite, 2> sites{};
  /// F_i = 1 iff the site-i final detectors show exactly this pattern.
  std::array<ClickCondition, 2> f_patterns{};
  bool u1_present = false;
  bool u2_present = false;
  PhotonInput input;
  std::string reconstruction_tag;

  ModeCircuit circuit_for(bool u1, bool u2) const;
  DetectorPlan plan_for(bool u1, bool u2) const;
  ModeCircuit circuit() const { return circuit_for(u1_present, u2_present); }
  DetectorPlan plan() const { return plan_for(u1_present, u2_present); }
};

const std::vector<std::string>& hardy_modes();

/// Site (1 or 2) of a mode, 0 for the source mode s.
int hardy_site_of(const std::string& mode);

/// Throws ValidationError unless every element touches a single site, apart
/// from the leading source elements on s.
void check_site_partition(const ModeCircuit& circuit);

/// The shipped reconstruction. Validates the two conditional certainties on
/// construction and throws ReconstructionError if they fail.
HardyScenario hardy_default();

/// ReconstructionError unless P(u1 | F1=F2=1) = 1 with only U1 present and
/// P(u2 | F1=F2=1) = 1 with only U2 present; ValidationError when an element
/// crosses sites.
void validate_reconstruction(const HardyScenario& scenario);

/// P(F1 = 1 and F2 = 1) for a state of the given scenario.
double hardy_f_probability(const HardyScenario& scenario, const StateVector& state);

/// Four detector configurations; for each, P(F1 = F2 = 1) and the present
/// U_i click probabilities conditioned on it ("undefined" when the condition
/// is null or the detector is absent).
ScenarioResult hardy_conditionals(const HardyScenario& scenario);

// --- photon <-> spins -------------------------------------------------------

/// Two-spin amplitudes, Schmidt coefficients, the CHSH optimum and the local
/// polytope verdict for the optimal behavior.
ScenarioResult isomorphism_demo(Complex alpha, Complex beta);

}  // namespace qscen
