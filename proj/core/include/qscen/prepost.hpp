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

// Pre- and post-selected ensembles and conditional outcome probabilities.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qscen/qcore.hpp"

namespace qscen {

/// Denominators at or below this are treated as conditioning on a null event.
inline constexpr double kNullEventCutoff = 1e-20;

class PrePostEnsemble {
 public:
  /// Both states must be unit norm and share a space.
  PrePostEnsemble(StateVector pre, StateVector post);

  const StateVector& pre() const { return pre_; }
  const StateVector& post() const { return post_; }
  const CompositeSpace& space() const { return pre_.space(); }
  /// <post|pre>
  Complex overlap() const { return inner(post_, pre_); }
  /// True when <post|pre> vanishes; such ensembles are legal but some
  /// measurements will make post-selection impossible.
  bool orthogonal() const;

 private:
  StateVector pre_;
  StateVector post_;
};

/// Outcome-labelled distribution; probabilities sum to 1 within kTolerance.
class ConditionalDistribution {
 public:
  ConditionalDistribution(std::vector<std::string> labels, std::vector<double> probabilities);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  std::size_t size() const { return labels_.size(); }
  double operator[](std::size_t i) const { return probabilities_.at(i); }
  /// Probability of the outcome with this label; StructuralError if absent.
  double at(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> probabilities_;
};

/// p_j = |<post|P_j|pre>|^2 / sum_k |<post|P_k|pre>|^2.
/// ConditioningError when the denominator is <= kNullEventCutoff.
ConditionalDistribution abl_probabilities(const PrePostEnsemble& ensemble,
                                          const ProjectiveMeasurement& measurement);

/// The branch amplitudes <post|P_j|pre> behind abl_probabilities.
std::vector<Complex> branch_amplitudes(const PrePostEnsemble& ensemble,
                                       const ProjectiveMeasurement& measurement);

/// p_j = <psi|P_j|psi> for a unit-norm state.
ConditionalDistribution born_probabilities(const StateVector& state,
                                           const ProjectiveMeasurement& measurement);

struct PostselectResult {
  StateVector state;   ///< P|psi> / ||P|psi>||
  double probability;  ///< ||P|psi>||^2
};

/// ConditioningError ("null branch") when ||P|psi>||^2 <= kNullEventCutoff.
PostselectResult postselect(const StateVector& state, const LinearOperator& projector);

struct MeasurementStep {
  ProjectiveMeasurement measurement;
  std::size_t outcome;
};

/// Probability of collapsing through each chosen outcome in order and then
/// passing the final post-selection projector. A null intermediate branch
/// yields 0. An omitted step models an absent detector.
double sequence_probability(const StateVector& pre, std::span<const MeasurementStep> steps,
                            const LinearOperator& post_projector);

}  // namespace qscen
