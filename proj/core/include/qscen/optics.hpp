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

// Linear-optical circuits over labelled modes with bounded photon number.
//
// Beam splitter convention, on creation operators:
//   a_i^+ -> cos(theta) a_i^+ + i e^{i phi} sin(theta) a_j^+
//   a_j^+ -> i e^{-i phi} sin(theta) a_i^+ + cos(theta) a_j^+
// Every mode is truncated at max_total_photons. On the two-mode space used for
// a single element, sectors whose photon count exceeds that capacity are only
// partially representable; the element acts as the identity there. Circuits
// never populate those sectors because the input total is capped.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qscen/prepost.hpp"
#include "qscen/qcore.hpp"

namespace qscen {

inline constexpr int kDefaultMaxPhotons = 3;

struct BeamSplitter {
  std::string mode_i;
  std::string mode_j;
  double theta = 0.0;  ///< [0, pi/2]
  double phi = 0.0;    ///< [0, 2 pi)
};

struct PhaseShift {
  std::string mode;
  double phi = 0.0;  ///< [0, 2 pi)
};

using Element = std::variant<BeamSplitter, PhaseShift>;

class ModeCircuit {
 public:
  ModeCircuit(std::vector<std::string> modes, std::vector<Element> elements,
              int max_total_photons = kDefaultMaxPhotons);

  const std::vector<std::string>& modes() const { return modes_; }
  const std::vector<Element>& elements() const { return elements_; }
  int max_total_photons() const { return max_total_photons_; }
  std::size_t mode_index(const std::string& label) const;

 private:
  std::vector<std::string> modes_;
  std::vector<Element> elements_;
  int max_total_photons_;
};

/// Occupancy per mode label; unlisted modes are empty.
using PhotonInput = std::map<std::string, int>;

enum class Detector { present, absent };

/// Detector placement per mode label; unlisted modes carry no detector.
using DetectorPlan = std::map<std::string, Detector>;

/// One optical-mode subsystem per circuit mode, each truncated at max_total_photons.
CompositeSpace build_space(const ModeCircuit& circuit);

/// Two-mode operator (mode i slow, mode j fast), per-mode occupancy 0..capacity.
LinearOperator beam_splitter_unitary(double theta, double phi, int capacity);
LinearOperator phase_shift_unitary(double phi, int capacity);

/// Applies the elements left to right to the Fock basis state `input`.
StateVector run_circuit(const ModeCircuit& circuit, const PhotonInput& input);

/// The single-photon mode-transfer matrix U with a_in^+ -> sum_out U(out, in) a_out^+.
Matrix mode_transfer_matrix(const ModeCircuit& circuit);

/// Expected total photon number of a state on a circuit-built space.
double mean_photon_number(const StateVector& state);

/// Modes marked present, in the order they appear in the state's space.
std::vector<std::string> present_modes(const CompositeSpace& space, const DetectorPlan& plan);

/// Joint click statistics of the present detectors. Outcome labels are bit
/// strings over present_modes(...) ('1' = click, i.e. at least one photon), in
/// lexicographic order. With no detector present the single outcome is
/// "no measurement".
ConditionalDistribution click_distribution(const StateVector& state, const DetectorPlan& plan);

/// Required click value per mode.
using ClickCondition = std::map<std::string, bool>;

/// P(target clicks | condition) under joint detection of all present modes.
/// ConditioningError when the condition has probability <= kNullEventCutoff.
double conditional_click(const StateVector& state, const DetectorPlan& plan,
                         const ClickCondition& condition, const std::string& target);

/// Probability that every (mode, click) requirement holds.
double pattern_probability(const StateVector& state, const ClickCondition& pattern);

}  // namespace qscen
