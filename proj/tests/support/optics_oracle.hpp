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

// Test-only linear-optics oracles: a single-photon transfer matrix written
// straight from the beam-splitter convention, and click statistics computed
// from first-quantized (permanent) amplitudes.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qscen/optics.hpp"
#include "support/oracles.hpp"

namespace qscen::testing {

inline Matrix oracle_transfer(const std::vector<std::string>& modes,
                              const std::vector<Element>& elements) {
  const Complex i_unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(modes.size());
  auto idx = [&](const std::string& m) {
    return static_cast<Eigen::Index>(std::find(modes.begin(), modes.end(), m) - modes.begin());
  };
  Matrix u = Matrix::Identity(n, n);
  for (const auto& e : elements) {
    Matrix s = Matrix::Identity(n, n);
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      const auto i = idx(bs->mode_i);
      const auto j = idx(bs->mode_j);
      s(i, i) = std::cos(bs->theta);
      s(j, j) = std::cos(bs->theta);
      s(j, i) = i_unit * std::polar(1.0, bs->phi) * std::sin(bs->theta);
      s(i, j) = i_unit * std::polar(1.0, -bs->phi) * std::sin(bs->theta);
    } else {
      const auto& ps = std::get<PhaseShift>(e);
      s(idx(ps.mode), idx(ps.mode)) = std::polar(1.0, ps.phi);
    }
    u = s * u;
  }
  return u;
}

/// Occupation-pattern probabilities of a circuit, from permanents.
inline std::map<std::vector<int>, double> oracle_patterns(const ModeCircuit& c,
                                                          const PhotonInput& input) {
  std::vector<int> occ(c.modes().size(), 0);
  for (const auto& [m, n] : input) {
    occ[static_cast<std::size_t>(std::find(c.modes().begin(), c.modes().end(), m) - c.modes().begin())] = n;
  }
  std::map<std::vector<int>, double> out;
  for (const auto& [pattern, amp] : boson_amplitudes(oracle_transfer(c.modes(), c.elements()), occ)) {
    out[pattern] = std::norm(amp);
  }
  return out;
}

/// Probability that each listed mode clicks (true) or stays dark (false).
inline double oracle_click_probability(const ModeCircuit& c,
                                       const std::map<std::vector<int>, double>& patterns,
                                       const std::map<std::string, bool>& want) {
  double p = 0.0;
  for (const auto& [pattern, prob] : patterns) {
    bool ok = true;
    for (const auto& [mode, click] : want) {
      const auto k = static_cast<std::size_t>(std::find(c.modes().begin(), c.modes().end(), mode) - c.modes().begin());
      if ((pattern[k] > 0) != click) ok = false;
    }
    if (ok) p += prob;
  }
  return p;
}

}  // namespace qscen::testing
