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

#include "qscen/isomorphism.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qscen/errors.hpp"
#include "support/oracles.hpp"

namespace qscen {
namespace {

constexpr std::size_t kUp = 0;
constexpr std::size_t kDown = 1;

// Index into (mode@A, spin@A, mode@B, spin@B).
std::size_t at(std::size_t ma, std::size_t sa, std::size_t mb, std::size_t sb) {
  return ma * 8 + sa * 4 + mb * 2 + sb;
}

StateVector layout_basis(std::size_t ma, std::size_t sa, std::size_t mb, std::size_t sb) {
  return StateVector::basis(site_layout(), at(ma, sa, mb, sb));
}

TEST(SiteLayout, Shape) {
  const auto& s = site_layout();
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.subsystem(0).kind(), SubsystemKind::optical_mode);
  EXPECT_EQ(s.subsystem(0).dimension(), 2u);
  EXPECT_EQ(s.subsystem(1).kind(), SubsystemKind::spin_half);
  EXPECT_EQ(s.subsystem(2).kind(), SubsystemKind::optical_mode);
  EXPECT_EQ(s.subsystem(3).kind(), SubsystemKind::spin_half);
  EXPECT_EQ(s.dimension(), 16u);
}

TEST(Transfer, LocalAction) {
  const auto ta = transfer_unitary(Site::A);
  // |1,down>_A -> |0,up>_A
  EXPECT_NEAR(std::abs(inner(layout_basis(0, kUp, 0, kDown), apply(ta, layout_basis(1, kDown, 0, kDown))) - 1.0),
              0.0, 1e-15);
  // |0,down>_A fixed, |1,up>_A fixed
  EXPECT_NEAR(std::abs(inner(layout_basis(0, kDown, 1, kUp), apply(ta, layout_basis(0, kDown, 1, kUp))) - 1.0),
              0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner(layout_basis(1, kUp, 0, kDown), apply(ta, layout_basis(1, kUp, 0, kDown))) - 1.0),
              0.0, 1e-15);
  // Site B is untouched by the A transfer, whatever its contents.
  EXPECT_NEAR(std::abs(inner(layout_basis(0, kUp, 1, kDown), apply(ta, layout_basis(1, kDown, 1, kDown))) - 1.0),
              0.0, 1e-15);
  const auto tb = transfer_unitary(Site::B);
  EXPECT_NEAR(std::abs(inner(layout_basis(0, kDown, 0, kUp), apply(tb, layout_basis(0, kDown, 1, kDown))) - 1.0),
              0.0, 1e-15);
}

TEST(Transfer, UnitaryInvolutionAndCommuting) {
  const auto ta = transfer_unitary(Site::A);
  const auto tb = transfer_unitary(Site::B);
  EXPECT_TRUE(is_unitary(ta, 1e-12));
  EXPECT_TRUE(is_unitary(tb, 1e-12));
  const Matrix id = Matrix::Identity(16, 16);
  EXPECT_LE(max_abs_diff((ta * ta).matrix(), id), 1e-15);
  EXPECT_LE(max_abs_diff((tb * tb).matrix(), id), 1e-15);
  EXPECT_LE(max_abs_diff((ta * tb).matrix(), (tb * ta).matrix()), 1e-12);
}

TEST(PhotonToSpins, Examples) {
  const auto one = photon_to_spins(1.0, 0.0);
  EXPECT_NEAR(std::abs(one.amplitude(at(0, kUp, 0, kDown)) - 1.0), 0.0, 1e-15);

  const Complex alpha(0.6, 0.0);
  const Complex beta(0.0, 0.8);
  const auto out = photon_to_spins(alpha, beta);
  for (std::size_t k = 0; k < 16; ++k) {
    Complex want = 0.0;
    if (k == at(0, kUp, 0, kDown)) want = alpha;
    if (k == at(0, kDown, 0, kUp)) want = beta;
    EXPECT_NEAR(std::abs(out.amplitude(k) - want), 0.0, 1e-12) << k;
  }

  const double r = 1.0 / std::sqrt(2.0);
  const auto pair = spin_pair(photon_to_spins(r, r));
  const std::array<std::size_t, 1> a{0};
  const auto sc = schmidt_coefficients(pair, a);
  EXPECT_NEAR(sc[0], r, 1e-12);
  EXPECT_NEAR(sc[1], r, 1e-12);

  EXPECT_THROW(photon_to_spins(1.0, 1.0), ValidationError);
  EXPECT_THROW(photon_to_spins(0.0, 0.0), ValidationError);
}

TEST(PhotonToSpins, MatchesExplicitTransferChain) {
  const Complex alpha(0.3, -0.4);
  const Complex beta = std::sqrt(1.0 - std::norm(alpha));
  const auto chain = apply(transfer_unitary(Site::B), apply(transfer_unitary(Site::A), photon_state(alpha, beta)));
  EXPECT_LE(max_abs_diff(chain.amplitudes(), photon_to_spins(alpha, beta).amplitudes()), 1e-15);
}

TEST(SpinsToPhoton, Examples) {
  const auto up_down = StateVector::basis(spin_pair_space(), kUp * 2 + kDown);
  const auto photon = spins_to_photon(up_down);
  EXPECT_NEAR(std::abs(photon.amplitude(at(1, kDown, 0, kDown)) - 1.0), 0.0, 1e-15);

  const auto up_up = StateVector::basis(spin_pair_space(), kUp * 2 + kUp);
  EXPECT_THROW(spins_to_photon(up_up), ValidationError);
  EXPECT_THROW(spins_to_photon(layout_basis(1, kDown, 0, kDown)), ValidationError);
}

TEST(IsomorphismProperties, RoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [alpha, beta] = testing::random_pair(rng);
    const auto there = photon_to_spins(alpha, beta);
    const auto back = spins_to_photon(there);
    EXPECT_LE(max_abs_diff(back.amplitudes(), photon_state(alpha, beta).amplitudes()), 1e-12);
    const auto back2 = spins_to_photon(spin_pair(there));
    EXPECT_LE(max_abs_diff(back2.amplitudes(), photon_state(alpha, beta).amplitudes()), 1e-12);
  }
}

TEST(IsomorphismProperties, PreservesInnerProducts) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [a, b] = testing::random_pair(rng);
    const auto [a2, b2] = testing::random_pair(rng);
    const Complex want = std::conj(a) * a2 + std::conj(b) * b2;
    EXPECT_NEAR(std::abs(inner(photon_to_spins(a, b), photon_to_spins(a2, b2)) - want), 0.0, 1e-12);
  }
}

TEST(IsomorphismProperties, SchmidtCorrespondence) {
  std::mt19937_64 rng(23);
  const std::array<std::size_t, 2> site_a{0, 1};
  const std::array<std::size_t, 1> spin_a{0};
  for (int trial = 0; trial < 100; ++trial) {
    const auto [a, b] = testing::random_pair(rng);
    const auto spins = schmidt_coefficients(spin_pair(photon_to_spins(a, b)), spin_a);
    const auto photon = schmidt_coefficients(photon_state(a, b), site_a);
    const double hi = std::max(std::abs(a), std::abs(b));
    const double lo = std::min(std::abs(a), std::abs(b));
    EXPECT_NEAR(spins[0], hi, 1e-10);
    EXPECT_NEAR(spins[1], lo, 1e-10);
    EXPECT_NEAR(photon[0], spins[0], 1e-10);
    EXPECT_NEAR(photon[1], spins[1], 1e-10);
  }
}

}  // namespace
}  // namespace qscen
