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
#include <random>

#include <gtest/gtest.h>

#include "qscen/errors.hpp"
#include "qscen/scenarios.hpp"
#include "support/oracles.hpp"

namespace qscen {
namespace {

ProjectiveMeasurement searched(Box box) {
  return ProjectiveMeasurement::binary(box_projector(box), "found", "not found");
}

PrePostEnsemble three_box_ensemble() { return {three_box_pre(), three_box_post()}; }

// Independent amplitude oracle: <post| P |pre> from the raw tuples.
double abl_oracle(const std::array<double, 3>& pre, const std::array<double, 3>& post,
                  const std::array<bool, 3>& in_projector) {
  double yes = 0.0;
  double no = 0.0;
  for (int k = 0; k < 3; ++k) (in_projector[k] ? yes : no) += post[k] * pre[k];
  return yes * yes / (yes * yes + no * no);
}

TEST(Abl, ThreeBoxCertainties) {
  const auto a = abl_probabilities(three_box_ensemble(), searched(Box::A));
  EXPECT_NEAR(a[0], 1.0, 1e-12);
  EXPECT_NEAR(a[1], 0.0, 1e-12);
  const auto b = abl_probabilities(three_box_ensemble(), searched(Box::B));
  EXPECT_NEAR(b[0], 1.0, 1e-12);
  EXPECT_NEAR(b[1], 0.0, 1e-12);
}

TEST(Abl, ThreeBoxBoxCMatchesAmplitudeOracle) {
  const double r = 1.0 / std::sqrt(3.0);
  const double expected = abl_oracle({r, r, r}, {r, r, -r}, {false, false, true});
  EXPECT_NEAR(expected, 0.2, 1e-15);  // (1/9) / (1/9 + 4/9)
  const auto c = abl_probabilities(three_box_ensemble(), searched(Box::C));
  EXPECT_NEAR(c[0], 0.2, 1e-12);
  EXPECT_NEAR(c[1], 0.8, 1e-12);
}

TEST(Abl, ThreeOutcomeSearchIsUniform) {
  const ProjectiveMeasurement where({box_projector(Box::A), box_projector(Box::B),
                                     box_projector(Box::C)},
                                    {"A", "B", "C"});
  const auto d = abl_probabilities(three_box_ensemble(), where);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(d[k], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(d.labels()[2], "C");
  EXPECT_NEAR(d.at("B"), 1.0 / 3.0, 1e-12);
}

TEST(Abl, ImpossiblePostSelection) {
  // post orthogonal to every branch: pre = |A>, post = |B>, measure {P_A, 1-P_A}.
  const PrePostEnsemble e(box_state(Box::A), box_state(Box::B));
  EXPECT_TRUE(e.orthogonal());
  EXPECT_THROW(abl_probabilities(e, searched(Box::A)), ConditioningError);
}

TEST(Abl, RejectsUnnormalizedStates) {
  const StateVector half(box_space(), 0.5 * three_box_pre().amplitudes());
  EXPECT_THROW(PrePostEnsemble(half, three_box_post()), ValidationError);
}

TEST(Born, Examples) {
  const ProjectiveMeasurement where({box_projector(Box::A), box_projector(Box::B),
                                     box_projector(Box::C)},
                                    {"A", "B", "C"});
  const auto d = born_probabilities(three_box_pre(), where);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(d[k], 1.0 / 3.0, 1e-15);

  const auto a = born_probabilities(box_state(Box::A), searched(Box::A));
  EXPECT_EQ(a[0], 1.0);
  EXPECT_EQ(a[1], 0.0);

  const CompositeSpace two({SubsystemSpec::position("p", 2)});
  Amplitudes amp(2);
  amp << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const auto p0 = projector_onto({StateVector::basis(two, 0)});
  const auto p1 = projector_onto({StateVector::basis(two, 1)});
  const auto ab = born_probabilities(StateVector(two, amp), ProjectiveMeasurement({p0, p1}, {"A", "B"}));
  EXPECT_NEAR(ab[0], 0.36, 1e-15);
  EXPECT_NEAR(ab[1], 0.64, 1e-15);
}

TEST(Postselect, MissingBoxAProjectsOntoBC) {
  const auto miss = LinearOperator::identity(box_space()) - box_projector(Box::A);
  const auto r = postselect(three_box_pre(), miss);
  EXPECT_NEAR(r.probability, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::abs(r.state.amplitude(0)), 0.0, 1e-15);
  EXPECT_NEAR(r.state.amplitude(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.state.amplitude(2).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(r.state.is_unit());
  EXPECT_NEAR(std::abs(inner(three_box_post(), r.state)), 0.0, 1e-15);
}

TEST(Postselect, HitAndNullBranch) {
  const auto r = postselect(three_box_pre(), box_projector(Box::A));
  EXPECT_NEAR(r.probability, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.state.amplitude(0).real(), 1.0, 1e-15);
  EXPECT_THROW(postselect(box_state(Box::A), box_projector(Box::B)), ConditioningError);
  const LinearOperator not_projector(box_space(), 2.0 * Matrix::Identity(3, 3));
  EXPECT_THROW(postselect(three_box_pre(), not_projector), ValidationError);
}

TEST(Sequence, Examples) {
  const auto pre = three_box_pre();
  const auto post = projector_onto({three_box_post()});
  EXPECT_NEAR(sequence_probability(pre, {}, LinearOperator::identity(box_space())), 1.0, 1e-15);

  // Chain-rule oracle by explicit collapse: P(found A) = 1/3, then |<post|A>|^2 = 1/3.
  const auto collapsed = postselect(pre, box_projector(Box::A));
  const double oracle = collapsed.probability * std::norm(inner(three_box_post(), collapsed.state));
  EXPECT_NEAR(oracle, 1.0 / 9.0, 1e-15);
  const std::vector<MeasurementStep> hit{{searched(Box::A), 0}};
  EXPECT_NEAR(sequence_probability(pre, hit, post), 1.0 / 9.0, 1e-15);

  const std::vector<MeasurementStep> miss{{searched(Box::A), 1}};
  EXPECT_NEAR(sequence_probability(pre, miss, post), 0.0, 1e-15);

  // An intermediate null branch is a zero, not an error.
  const std::vector<MeasurementStep> null_chain{{searched(Box::A), 0}, {searched(Box::B), 0}};
  EXPECT_EQ(sequence_probability(pre, null_chain, post), 0.0);
}

// --- properties -------------------------------------------------------------

struct RandomSetup {
  CompositeSpace space{{SubsystemSpec::position("p", 3), SubsystemSpec::spin_half("q")}};
  std::mt19937_64 rng{2024};

  ProjectiveMeasurement random_measurement(int outcomes) {
    const Matrix u = testing::random_unitary(rng, 6);
    std::vector<LinearOperator> ps;
    std::vector<std::string> labels;
    int col = 0;
    for (int k = 0; k < outcomes; ++k) {
      const int width = k + 1 == outcomes ? 6 - col : 1 + static_cast<int>(rng() % 2);
      Matrix p = Matrix::Zero(6, 6);
      for (int c = col; c < col + width; ++c) p += u.col(c) * u.col(c).adjoint();
      col += width;
      ps.emplace_back(space, p);
      labels.push_back("m" + std::to_string(k));
    }
    return ProjectiveMeasurement(ps, labels);
  }
};

TEST(AblProperties, BornReduction) {
  RandomSetup setup;
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = testing::random_state(setup.rng, setup.space);
    const auto m = setup.random_measurement(2 + trial % 2);
    const Matrix basis = testing::random_unitary(setup.rng, 6);
    std::vector<double> reduced(m.size(), 0.0);
    for (int k = 0; k < 6; ++k) {
      const StateVector phi(setup.space, basis.col(k));
      double weight = 0.0;
      for (const auto& p : m.projectors()) {
        weight += std::norm(phi.amplitudes().dot(p.matrix() * psi.amplitudes()));
      }
      const auto abl = abl_probabilities(PrePostEnsemble(psi, phi), m);
      for (std::size_t j = 0; j < m.size(); ++j) reduced[j] += weight * abl[j];
    }
    const auto born = born_probabilities(psi, m);
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_NEAR(reduced[j], born[j], 1e-10);
  }
}

TEST(AblProperties, CertaintyIffComplementaryBranchVanishes) {
  RandomSetup setup;
  for (int trial = 0; trial < 50; ++trial) {
    const auto pre = testing::random_state(setup.rng, setup.space);
    const auto m = setup.random_measurement(2);
    // Choose post orthogonal to (1 - P)|pre>.
    const Amplitudes miss = m.projector(1).matrix() * pre.amplitudes();
    Amplitudes post = testing::random_amplitudes(setup.rng, 6);
    post -= miss * (miss.dot(post) / miss.squaredNorm());
    const StateVector post_state = StateVector::normalized(setup.space, post);
    const PrePostEnsemble e(pre, post_state);
    const auto amps = branch_amplitudes(e, m);
    ASSERT_LE(std::abs(amps[1]), 1e-14);
    ASSERT_GT(std::abs(amps[0]), 1e-6);
    EXPECT_NEAR(abl_probabilities(e, m)[0], 1.0, 1e-12);

    // A generic post leaves both branches alive and no certainty.
    const PrePostEnsemble generic(pre, testing::random_state(setup.rng, setup.space));
    const auto d = abl_probabilities(generic, m);
    EXPECT_LT(d[0], 1.0 - 1e-9);
  }
}

TEST(AblProperties, GlobalPhaseInvariance) {
  RandomSetup setup;
  for (int trial = 0; trial < 30; ++trial) {
    const auto pre = testing::random_state(setup.rng, setup.space);
    const auto post = testing::random_state(setup.rng, setup.space);
    const auto m = setup.random_measurement(3);
    const Complex phase = std::polar(1.0, 0.1 * trial);
    const auto base = abl_probabilities(PrePostEnsemble(pre, post), m);
    const auto shifted = abl_probabilities(
        PrePostEnsemble(StateVector(setup.space, phase * pre.amplitudes()),
                        StateVector(setup.space, std::conj(phase) * post.amplitudes())),
        m);
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_NEAR(base[j], shifted[j], 1e-12);
  }
}

TEST(SequenceProperties, SingleStepMatchesAmplitude) {
  RandomSetup setup;
  for (int trial = 0; trial < 30; ++trial) {
    const auto pre = testing::random_state(setup.rng, setup.space);
    const auto phi = testing::random_state(setup.rng, setup.space);
    const auto m = setup.random_measurement(2);
    const std::vector<MeasurementStep> steps{{m, 0}};
    const double chain = sequence_probability(pre, steps, projector_onto({phi}));
    const double direct = std::norm(phi.amplitudes().dot(m.projector(0).matrix() * pre.amplitudes()));
    EXPECT_NEAR(chain, direct, 1e-12);
  }
}

}  // namespace
}  // namespace qscen
