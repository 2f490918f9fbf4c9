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

#include <array>
#include <cmath>

#include "qscen/errors.hpp"

namespace qscen {

namespace {

constexpr std::size_t kUp = 0;
constexpr std::size_t kDown = 1;

// Local (mode, spin) basis: index = photons * 2 + spin.
constexpr Eigen::Index kVacuumUp = 0;
constexpr Eigen::Index kPhotonDown = 3;

std::size_t site_index(std::size_t mode_a, std::size_t spin_a, std::size_t mode_b,
                       std::size_t spin_b) {
  const std::array<std::size_t, 4> digits{mode_a, spin_a, mode_b, spin_b};
  return site_layout().index(digits);
}

void require_normalized(Complex alpha, Complex beta) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(beta.real()) || !std::isfinite(beta.imag()) ||
      std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTolerance) {
    throw ValidationError("|alpha|^2 + |beta|^2 must equal 1");
  }
}

}  // namespace

const CompositeSpace& site_layout() {
  static const CompositeSpace space({SubsystemSpec::optical_mode("mode@A", 1),
                                     SubsystemSpec::spin_half("spin@A"),
                                     SubsystemSpec::optical_mode("mode@B", 1),
                                     SubsystemSpec::spin_half("spin@B")});
  return space;
}

const CompositeSpace& spin_pair_space() {
  static const CompositeSpace space(
      {SubsystemSpec::spin_half("spin@A"), SubsystemSpec::spin_half("spin@B")});
  return space;
}

LinearOperator transfer_unitary(Site site) {
  Matrix local = Matrix::Identity(4, 4);
  local(kVacuumUp, kVacuumUp) = 0.0;
  local(kPhotonDown, kPhotonDown) = 0.0;
  local(kVacuumUp, kPhotonDown) = 1.0;
  local(kPhotonDown, kVacuumUp) = 1.0;
  const std::array<std::size_t, 2> targets =
      site == Site::A ? std::array<std::size_t, 2>{0, 1} : std::array<std::size_t, 2>{2, 3};
  return LinearOperator::unitary(site_layout(), embed(local, targets, site_layout()).matrix());
}

StateVector photon_state(Complex alpha, Complex beta) {
  Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(site_layout().dimension()));
  a(static_cast<Eigen::Index>(site_index(1, kDown, 0, kDown))) = alpha;
  a(static_cast<Eigen::Index>(site_index(0, kDown, 1, kDown))) = beta;
  return StateVector(site_layout(), std::move(a));
}

StateVector photon_to_spins(Complex alpha, Complex beta) {
  require_normalized(alpha, beta);
  const auto photon = photon_state(alpha, beta);
  return apply(transfer_unitary(Site::B), apply(transfer_unitary(Site::A), photon));
}

StateVector spin_pair(const StateVector& site_state) {
  if (!(site_state.space() == site_layout())) {
    throw StructuralError("spin_pair: state is not on the site layout");
  }
  Amplitudes a(4);
  double kept = 0.0;
  for (std::size_t sa = 0; sa < 2; ++sa) {
    for (std::size_t sb = 0; sb < 2; ++sb) {
      const Complex v = site_state.amplitude(site_index(0, sa, 0, sb));
      a(static_cast<Eigen::Index>(sa * 2 + sb)) = v;
      kept += std::norm(v);
    }
  }
  if (site_state.norm_squared() - kept > kTolerance) {
    throw ValidationError("spin_pair: photon modes are populated");
  }
  return StateVector(spin_pair_space(), std::move(a));
}

StateVector spins_to_photon(const StateVector& spins) {
  StateVector site_state = spins;
  if (spins.space() == spin_pair_space()) {
    Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(site_layout().dimension()));
    for (std::size_t sa = 0; sa < 2; ++sa) {
      for (std::size_t sb = 0; sb < 2; ++sb) {
        a(static_cast<Eigen::Index>(site_index(0, sa, 0, sb))) =
            spins.amplitude(sa * 2 + sb);
      }
    }
    site_state = StateVector(site_layout(), std::move(a));
  } else if (!(spins.space() == site_layout())) {
    throw StructuralError("spins_to_photon: expected a two-spin or site-layout state");
  }
  const double inside = std::norm(site_state.amplitude(site_index(0, kUp, 0, kDown))) +
                        std::norm(site_state.amplitude(site_index(0, kDown, 0, kUp)));
  if (site_state.norm_squared() - inside > kTolerance) {
    throw ValidationError("spins_to_photon: state has support outside span{|up down>, |down up>}");
  }
  // The transfers are involutions and commute, so B then A undoes A then B.
  return apply(transfer_unitary(Site::A), apply(transfer_unitary(Site::B), site_state));
}

}  // namespace qscen
