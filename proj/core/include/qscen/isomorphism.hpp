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

// Local photon <-> spin transfer between a delocalized single photon and two
// separated spin-1/2 systems.
//
// The site layout is the four-subsystem space (mode@A, spin@A, mode@B, spin@B)
// with each mode holding at most one photon. At a site, the transfer swaps
// |1, down> with |0, up> and leaves |0, down> and |1, up> alone, so applying it
// at A and then B carries (alpha |A> + beta |B>) |down down> to
// alpha |up down> + beta |down up> with the photon modes empty.

#pragma once

#include "qscen/qcore.hpp"

namespace qscen {

enum class Site { A, B };

/// The (mode@A, spin@A, mode@B, spin@B) space.
const CompositeSpace& site_layout();

/// The (spin@A, spin@B) space that carries the two-spin state on its own.
const CompositeSpace& spin_pair_space();

/// Acts on the (mode, spin) pair at `site` and as the identity on the other site.
LinearOperator transfer_unitary(Site site);

/// ValidationError unless |alpha|^2 + |beta|^2 = 1 within kTolerance.
/// Returns the site-layout state after transfer at A then B.
StateVector photon_to_spins(Complex alpha, Complex beta);

/// Inverse of photon_to_spins. Accepts a site-layout state or a two-spin state;
/// ValidationError when the input has weight outside span{|up down>, |down up>}
/// (photon modes empty) beyond kTolerance.
StateVector spins_to_photon(const StateVector& spins);

/// Drops the (empty) photon modes of a site-layout state.
/// ValidationError when a photon mode is populated beyond kTolerance.
StateVector spin_pair(const StateVector& site_state);

/// Builds alpha |1 0> + beta |0 1> (photon at A / at B) with both spins down.
StateVector photon_state(Complex alpha, Complex beta);

}  // namespace qscen
