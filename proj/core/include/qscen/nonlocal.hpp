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

// Bipartite behaviors, CHSH values, and membership in the local polytope.
//
// A behavior is the table P(a, b | x, y) stored row-major over (x, y, a, b).
// Deterministic strategies fix a(x) and b(y); their behaviors are the 0/1
// vertices of the local polytope, and a behavior admits a local hidden
// variable model iff it is a convex combination of them.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qscen/qcore.hpp"

namespace qscen {

inline constexpr double kSignalingTolerance = 1e-9;
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kCertificateMargin = 1e-6;
inline constexpr std::size_t kMaxStrategies = 10'000'000;

class BipartiteBehavior {
 public:
  /// Validates nonnegativity, per-setting normalization (kTolerance) and
  /// no-signaling (kSignalingTolerance).
  BipartiteBehavior(std::size_t settings_a, std::size_t settings_b, std::size_t outcomes_a,
                    std::size_t outcomes_b, std::vector<double> table);

  std::size_t settings_a() const { return settings_a_; }
  std::size_t settings_b() const { return settings_b_; }
  std::size_t outcomes_a() const { return outcomes_a_; }
  std::size_t outcomes_b() const { return outcomes_b_; }
  const std::vector<double>& table() const { return table_; }

  std::size_t offset(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    return ((x * settings_b_ + y) * outcomes_a_ + a) * outcomes_b_ + b;
  }
  double operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    return table_[offset(x, y, a, b)];
  }

  /// P(a, b | x, y) = 1 / (An * Bn) for every entry.
  static BipartiteBehavior uniform(std::size_t settings_a, std::size_t settings_b,
                                   std::size_t outcomes_a, std::size_t outcomes_b);

 private:
  std::size_t settings_a_;
  std::size_t settings_b_;
  std::size_t outcomes_a_;
  std::size_t outcomes_b_;
  std::vector<double> table_;
};

struct DeterministicStrategy {
  std::vector<std::size_t> alice;  ///< a(x)
  std::vector<std::size_t> bob;    ///< b(y)

  bool operator==(const DeterministicStrategy&) const = default;
};

/// All An^X * Bn^Y strategies, lexicographic in (a(0..X-1), b(0..Y-1)) with
/// the last entry varying fastest. CapacityError beyond kMaxStrategies.
std::vector<DeterministicStrategy> enumerate_strategies(std::size_t settings_a,
                                                        std::size_t settings_b,
                                                        std::size_t outcomes_a,
                                                        std::size_t outcomes_b);

/// The 0/1 behavior of a deterministic strategy.
BipartiteBehavior strategy_behavior(const DeterministicStrategy& s, std::size_t outcomes_a,
                                    std::size_t outcomes_b);

struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Measurement direction per setting for each party. Outcome 0 is spin up
/// along the direction (eigenvalue +1), outcome 1 spin down.
struct SpinMeasurementAngles {
  std::vector<BlochAngles> alice;
  std::vector<BlochAngles> bob;
};

/// Born-rule behavior for a unit-norm state on a spin-half (x) spin-half space.
BipartiteBehavior behavior_from_state(const StateVector& state,
                                      const SpinMeasurementAngles& angles);

/// E(0,0) + E(0,1) + E(1,0) - E(1,1) with E the +-1 correlator.
/// StructuralError unless the behavior has 2 settings and 2 outcomes per party.
double chsh_value(const BipartiteBehavior& behavior);

struct ChshOptimum {
  double value = 0.0;
  SpinMeasurementAngles angles;
};

/// Maximizes the CHSH value over measurement angles. Bob's directions are
/// searched on a pi/12 grid (13 polar by 24 azimuthal points each) and refined
/// by coordinate-wise golden-section sweeps; Alice's best response to each
/// candidate is closed form. Deterministic.
ChshOptimum chsh_max(const StateVector& state);

/// Spin correlation tensor T(k, l) = <sigma_k (x) sigma_l>, k, l in {x, y, z}.
Eigen::Matrix3d correlation_tensor(const StateVector& state);

/// A Bell inequality sum c . P <= local_bound, with dyadic coefficients
/// numerators / denominator so vertex evaluations are exact.
struct BellCertificate {
  std::vector<double> coefficients;      ///< same layout as the behavior table
  std::vector<std::int64_t> numerators;  ///< coefficients * denominator
  std::int64_t denominator = 0;
  double local_bound = 0.0;
  double behavior_value = 0.0;  ///< c . P for the tested behavior
};

enum class Verdict { feasible, infeasible };

struct MembershipResult {
  Verdict verdict = Verdict::feasible;
  std::vector<DeterministicStrategy> strategies;
  std::vector<double> weights;  ///< per strategy; empty when infeasible
  std::optional<BellCertificate> certificate;
  /// Largest |sum w P_s - P| over table entries (feasible case).
  double reconstruction_error = 0.0;
};

/// Largest value of the certificate over all deterministic strategies, in
/// exact integer arithmetic (units of 1 / denominator).
std::int64_t certificate_vertex_max(const BellCertificate& cert, std::size_t settings_a,
                                    std::size_t settings_b, std::size_t outcomes_a,
                                    std::size_t outcomes_b);

/// Solves the local-polytope feasibility LP by two-phase simplex. On
/// infeasibility returns a Bell inequality from the dual of the white-noise
/// visibility LP, normalized so that c . uniform = 0 and the local bound is 2,
/// and verified against every vertex before returning.
MembershipResult lhv_membership(const BipartiteBehavior& behavior);

}  // namespace qscen
