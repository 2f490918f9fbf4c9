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

#include "qscen/prepost.hpp"

#include <cmath>
#include <numeric>

#include "qscen/errors.hpp"

namespace qscen {

namespace {

void require_unit(const StateVector& s, const char* what) {
  if (!s.is_unit()) throw ValidationError(std::string(what) + " must be a unit-norm state");
}

void require_space(const CompositeSpace& expected, const CompositeSpace& got, const char* what) {
  if (!(expected == got)) throw StructuralError(std::string(what) + ": space mismatch");
}

bool is_projector(const LinearOperator& p) {
  const Matrix& m = p.matrix();
  return max_abs_diff(m * m, m) <= kTolerance && max_abs_diff(m, m.adjoint()) <= kTolerance;
}

}  // namespace

PrePostEnsemble::PrePostEnsemble(StateVector pre, StateVector post)
    : pre_(std::move(pre)), post_(std::move(post)) {
  require_unit(pre_, "pre-selected state");
  require_unit(post_, "post-selected state");
  require_space(pre_.space(), post_.space(), "ensemble");
}

bool PrePostEnsemble::orthogonal() const { return std::abs(overlap()) <= kTolerance; }

ConditionalDistribution::ConditionalDistribution(std::vector<std::string> labels,
                                                 std::vector<double> probabilities)
    : labels_(std::move(labels)), probabilities_(std::move(probabilities)) {
  if (labels_.size() != probabilities_.size()) {
    throw StructuralError("distribution needs one label per probability");
  }
  double sum = 0.0;
  for (double p : probabilities_) {
    if (p < -kTolerance || p > 1.0 + kTolerance) {
      throw ValidationError("probability outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolerance) throw ValidationError("probabilities do not sum to 1");
}

double ConditionalDistribution::at(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return probabilities_[i];
  }
  throw StructuralError("no outcome labelled '" + label + "'");
}

std::vector<Complex> branch_amplitudes(const PrePostEnsemble& ensemble,
                                       const ProjectiveMeasurement& measurement) {
  require_space(ensemble.space(), measurement.space(), "abl");
  std::vector<Complex> out;
  out.reserve(measurement.size());
  for (const auto& p : measurement.projectors()) {
    out.push_back(ensemble.post().amplitudes().dot(p.matrix() * ensemble.pre().amplitudes()));
  }
  return out;
}

ConditionalDistribution abl_probabilities(const PrePostEnsemble& ensemble,
                                          const ProjectiveMeasurement& measurement) {
  const auto amps = branch_amplitudes(ensemble, measurement);
  std::vector<double> weights;
  weights.reserve(amps.size());
  for (auto a : amps) weights.push_back(std::norm(a));
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= kNullEventCutoff) {
    throw ConditioningError("post-selection impossible for this measurement");
  }
  for (double& w : weights) w /= total;
  return {measurement.labels(), std::move(weights)};
}

ConditionalDistribution born_probabilities(const StateVector& state,
                                           const ProjectiveMeasurement& measurement) {
  require_unit(state, "state");
  require_space(state.space(), measurement.space(), "born");
  std::vector<double> probs;
  probs.reserve(measurement.size());
  for (const auto& p : measurement.projectors()) {
    probs.push_back(std::max(0.0, state.amplitudes().dot(p.matrix() * state.amplitudes()).real()));
  }
  return {measurement.labels(), std::move(probs)};
}

PostselectResult postselect(const StateVector& state, const LinearOperator& projector) {
  require_space(state.space(), projector.space(), "postselect");
  if (!is_projector(projector)) throw ValidationError("postselect: operator is not a projector");
  const Amplitudes branch = projector.matrix() * state.amplitudes();
  const double probability = branch.squaredNorm();
  if (probability <= kNullEventCutoff) throw ConditioningError("null branch");
  return {StateVector::normalized(state.space(), branch), std::min(1.0, probability)};
}

double sequence_probability(const StateVector& pre, std::span<const MeasurementStep> steps,
                            const LinearOperator& post_projector) {
  require_space(pre.space(), post_projector.space(), "sequence");
  Amplitudes v = pre.amplitudes();
  for (const auto& step : steps) {
    require_space(pre.space(), step.measurement.space(), "sequence step");
    if (step.outcome >= step.measurement.size()) {
      throw StructuralError("sequence step outcome out of range");
    }
    v = step.measurement.projector(step.outcome).matrix() * v;
    if (v.squaredNorm() <= kNullEventCutoff) return 0.0;
  }
  v = post_projector.matrix() * v;
  return v.squaredNorm();
}

}  // namespace qscen
