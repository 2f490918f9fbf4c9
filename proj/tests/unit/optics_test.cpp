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

#include "qscen/optics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "qscen/errors.hpp"
#include "support/optics_oracle.hpp"

namespace qscen {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

using testing::oracle_transfer;

struct RandomCircuit {
  ModeCircuit circuit;
  PhotonInput input;
  std::vector<int> occupancy;
};

RandomCircuit random_circuit(std::mt19937_64& rng, int modes, int max_photons) {
  std::uniform_real_distribution<double> theta(0.0, kPi / 2);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  std::vector<std::string> labels;
  for (int m = 0; m < modes; ++m) labels.push_back("m" + std::to_string(m));
  std::vector<Element> elements;
  const int count = 1 + static_cast<int>(rng() % 8);
  for (int k = 0; k < count; ++k) {
    if (rng() % 4 == 0) {
      elements.push_back(PhaseShift{labels[rng() % labels.size()], phase(rng)});
    } else {
      const auto i = rng() % labels.size();
      auto j = rng() % (labels.size() - 1);
      if (j >= i) ++j;
      elements.push_back(BeamSplitter{labels[i], labels[j], theta(rng), phase(rng)});
    }
  }
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  const int total = static_cast<int>(rng() % static_cast<unsigned>(max_photons + 1));
  for (int p = 0; p < total; ++p) ++occ[rng() % occ.size()];
  PhotonInput input;
  for (int m = 0; m < modes; ++m) {
    if (occ[static_cast<std::size_t>(m)] > 0) input[labels[static_cast<std::size_t>(m)]] = occ[static_cast<std::size_t>(m)];
  }
  return {ModeCircuit(labels, elements, max_photons), input, occ};
}

TEST(BeamSplitter, FiftyFiftyOnSinglePhoton) {
  const ModeCircuit c({"a", "b"}, {BeamSplitter{"a", "b", kPi / 4, 0.0}});
  const auto out = run_circuit(c, {{"a", 1}});
  const auto& space = out.space();
  const std::array<std::size_t, 2> d10{1, 0};
  const std::array<std::size_t, 2> d01{0, 1};
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(out.amplitude(space.index(d10)) - Complex(r, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(space.index(d01)) - Complex(0.0, r)), 0.0, 1e-15);
}

TEST(BeamSplitter, ZeroAngleIsIdentity) {
  for (int cap = 1; cap <= 3; ++cap) {
    const auto u = beam_splitter_unitary(0.0, 1.3, cap);
    EXPECT_LE(max_abs_diff(u.matrix(), Matrix::Identity(u.matrix().rows(), u.matrix().cols())), 1e-15);
  }
}

TEST(BeamSplitter, TwoFiftyFiftySplittersComposeByMatrixProduct) {
  const std::vector<Element> els{BeamSplitter{"a", "b", kPi / 4, 0.0}, BeamSplitter{"a", "b", kPi / 4, 0.0}};
  const ModeCircuit c({"a", "b"}, els);
  // 2x2 oracle: [[c, i s],[i s, c]]^2 at 45 degrees = [[0, i],[i, 0]].
  Matrix bs(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  bs << r, kI * r, kI * r, r;
  const Matrix twice = bs * bs;
  EXPECT_LE(max_abs_diff(twice, oracle_transfer({"a", "b"}, els)), 1e-15);
  EXPECT_LE(max_abs_diff(mode_transfer_matrix(c), twice), 1e-15);
  const auto out = run_circuit(c, {{"a", 1}});
  const std::array<std::size_t, 2> d01{0, 1};
  EXPECT_NEAR(std::abs(out.amplitude(out.space().index(d01)) - twice(1, 0)), 0.0, 1e-15);
}

TEST(BeamSplitter, HongOuMandelDip) {
  const ModeCircuit c({"a", "b"}, {BeamSplitter{"a", "b", kPi / 4, 0.0}});
  const auto out = run_circuit(c, {{"a", 1}, {"b", 1}});
  const std::array<std::size_t, 2> d11{1, 1};
  EXPECT_NEAR(std::abs(out.amplitude(out.space().index(d11))), 0.0, 1e-15);
}

TEST(BeamSplitter, ElementsAreUnitary) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> theta(0.0, kPi / 2);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const int cap = 1 + trial % 4;
    EXPECT_TRUE(is_unitary(beam_splitter_unitary(theta(rng), phase(rng), cap), 1e-10));
    EXPECT_TRUE(is_unitary(phase_shift_unitary(phase(rng), cap), 1e-10));
  }
  EXPECT_TRUE(is_unitary(beam_splitter_unitary(kPi / 2, 0.0, 3), 1e-10));
}

TEST(ModeCircuit, Validation) {
  EXPECT_THROW(ModeCircuit({}, {}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "a"}, {}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "b"}, {BeamSplitter{"a", "c", 0.1, 0.0}}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "b"}, {BeamSplitter{"a", "a", 0.1, 0.0}}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "b"}, {BeamSplitter{"a", "b", 2.0, 0.0}}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "b"}, {BeamSplitter{"a", "b", -0.1, 0.0}}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a", "b"}, {PhaseShift{"a", 2 * kPi}}), ValidationError);
  EXPECT_THROW(ModeCircuit({"a"}, {}, 0), ValidationError);
  const ModeCircuit ok({"a", "b"}, {});
  EXPECT_THROW(run_circuit(ok, {{"a", 4}}), ValidationError);
  EXPECT_THROW(run_circuit(ok, {{"z", 1}}), ValidationError);
  EXPECT_THROW(run_circuit(ok, {{"a", -1}}), ValidationError);
}

TEST(BuildSpace, OneModePerLabel) {
  const ModeCircuit c({"x", "y", "z"}, {}, 2);
  const auto space = build_space(c);
  ASSERT_EQ(space.size(), 3u);
  EXPECT_EQ(space.dimension(), 27u);
  EXPECT_EQ(space.subsystem(1).label(), "y");
  EXPECT_EQ(space.subsystem(1).kind(), SubsystemKind::optical_mode);
}

TEST(Clicks, Examples) {
  const ModeCircuit c({"a", "b"}, {BeamSplitter{"a", "b", kPi / 4, 0.0}});
  const auto out = run_circuit(c, {{"a", 1}});
  const auto d = click_distribution(out, {{"a", Detector::present}, {"b", Detector::present}});
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d.labels()[1], "01");
  EXPECT_NEAR(d.at("10"), 0.5, 1e-15);
  EXPECT_NEAR(d.at("01"), 0.5, 1e-15);
  EXPECT_EQ(d.at("00"), 0.0);
  EXPECT_EQ(d.at("11"), 0.0);

  const auto none = click_distribution(out, {{"a", Detector::absent}});
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none.labels()[0], "no measurement");
  EXPECT_EQ(none[0], 1.0);

  const auto vac = run_circuit(c, {});
  const auto dv = click_distribution(vac, {{"a", Detector::present}, {"b", Detector::present}});
  EXPECT_EQ(dv.at("00"), 1.0);

  EXPECT_THROW(click_distribution(out, {{"q", Detector::present}}), StructuralError);
}

TEST(Clicks, ConditionalExamples) {
  const ModeCircuit c({"a", "b"}, {BeamSplitter{"a", "b", kPi / 4, 0.0}});
  const auto out = run_circuit(c, {{"a", 1}});
  const DetectorPlan both{{"a", Detector::present}, {"b", Detector::present}};
  EXPECT_NEAR(conditional_click(out, both, {}, "a"), 0.5, 1e-15);
  EXPECT_EQ(conditional_click(out, both, {{"b", true}}, "a"), 0.0);
  EXPECT_EQ(conditional_click(out, both, {{"b", false}}, "a"), 1.0);
  EXPECT_THROW(conditional_click(out, both, {{"a", true}, {"b", true}}, "a"), ConditioningError);
  const DetectorPlan only_a{{"a", Detector::present}, {"b", Detector::absent}};
  EXPECT_THROW(conditional_click(out, only_a, {}, "b"), ValidationError);
  EXPECT_THROW(conditional_click(out, only_a, {{"b", true}}, "a"), ValidationError);
}

TEST(OpticsProperties, NumberConservationAgainstPermanentOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int modes = 2 + trial % 3;
    const auto rc = random_circuit(rng, modes, 3);
    const auto out = run_circuit(rc.circuit, rc.input);
    const int total = std::accumulate(rc.occupancy.begin(), rc.occupancy.end(), 0);
    EXPECT_NEAR(mean_photon_number(out), total, 1e-12);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);

    const Matrix u = oracle_transfer(rc.circuit.modes(), rc.circuit.elements());
    EXPECT_LE(max_abs_diff(mode_transfer_matrix(rc.circuit), u), 1e-12);
    const auto expected = testing::boson_amplitudes(u, rc.occupancy);
    const auto& space = out.space();
    for (std::size_t idx = 0; idx < space.dimension(); ++idx) {
      const auto digits = space.digits(idx);
      const std::vector<int> pattern(digits.begin(), digits.end());
      const auto it = expected.find(pattern);
      const Complex want = it == expected.end() ? Complex(0.0) : it->second;
      ASSERT_NEAR(std::abs(out.amplitude(idx) - want), 0.0, 1e-12) << "trial " << trial;
    }
  }
}

TEST(OpticsProperties, ClickDistributionsSumToOne) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rc = random_circuit(rng, 3, 3);
    const auto out = run_circuit(rc.circuit, rc.input);
    DetectorPlan plan;
    for (const auto& m : rc.circuit.modes()) {
      const auto r = rng() % 3;
      if (r < 2) plan[m] = r == 0 ? Detector::present : Detector::absent;
    }
    const auto d = click_distribution(out, plan);
    double sum = 0.0;
    for (double p : d.probabilities()) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(OpticsProperties, AbsentDetectorLocalityOnProductStates) {
  // Two independent groups {a, b} and {c, d}; no element crosses the cut.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> theta(0.0, kPi / 2);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const ModeCircuit c({"a", "b", "c", "d"},
                        {BeamSplitter{"a", "b", theta(rng), phase(rng)},
                         BeamSplitter{"c", "d", theta(rng), phase(rng)},
                         PhaseShift{"b", phase(rng)}});
    const auto out = run_circuit(c, {{"a", 1}, {"c", 1}, {"d", trial % 2}});
    const DetectorPlan absent{{"a", Detector::present}, {"b", Detector::present}, {"c", Detector::absent}};
    const DetectorPlan present{{"a", Detector::present}, {"b", Detector::present}, {"c", Detector::present}};
    const auto d0 = click_distribution(out, absent);
    const auto d1 = click_distribution(out, present);
    // Marginalize the c bit (last character) away.
    for (std::size_t k = 0; k < d0.size(); ++k) {
      double m = 0.0;
      for (std::size_t j = 0; j < d1.size(); ++j) {
        if (d1.labels()[j].substr(0, 2) == d0.labels()[k]) m += d1[j];
      }
      EXPECT_NEAR(m, d0[k], 1e-12);
    }
  }
}

TEST(OpticsProperties, ParallelEvaluationIsBitwiseIdentical) {
  std::mt19937_64 rng(14);
  const auto rc = random_circuit(rng, 4, 3);
  const auto state = run_circuit(rc.circuit, {{"m0", 1}, {"m1", 1}, {"m2", 1}});
  std::vector<DetectorPlan> plans;
  for (unsigned mask = 0; mask < 16; ++mask) {
    DetectorPlan p;
    for (unsigned m = 0; m < 4; ++m) {
      p["m" + std::to_string(m)] = (mask >> m) & 1U ? Detector::present : Detector::absent;
    }
    plans.push_back(p);
  }
  std::vector<std::vector<double>> serial;
  for (const auto& p : plans) serial.push_back(click_distribution(state, p).probabilities());
  std::vector<std::vector<double>> parallel(plans.size());
  std::vector<std::thread> workers;
  for (std::size_t k = 0; k < plans.size(); ++k) {
    workers.emplace_back([&, k] {
      const auto s = run_circuit(rc.circuit, {{"m0", 1}, {"m1", 1}, {"m2", 1}});
      parallel[k] = click_distribution(s, plans[k]).probabilities();
    });
  }
  for (auto& w : workers) w.join();
  for (std::size_t k = 0; k < plans.size(); ++k) EXPECT_EQ(serial[k], parallel[k]);
}

}  // namespace
}  // namespace qscen
