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

#include "qscen/nonlocal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "qscen/errors.hpp"
#include "qscen/simplex.hpp"

namespace qscen {

BipartiteBehavior::BipartiteBehavior(std::size_t settings_a, std::size_t settings_b,
                                     std::size_t outcomes_a, std::size_t outcomes_b,
                                     std::vector<double> table)
    : settings_a_(settings_a), settings_b_(settings_b), outcomes_a_(outcomes_a),
      outcomes_b_(outcomes_b), table_(std::move(table)) {
  if (settings_a_ == 0 || settings_b_ == 0 || outcomes_a_ == 0 || outcomes_b_ == 0) {
    throw StructuralError("behavior counts must be positive");
  }
  if (table_.size() != settings_a_ * settings_b_ * outcomes_a_ * outcomes_b_) {
    throw StructuralError("behavior table has the wrong number of entries");
  }
  for (double p : table_) {
    if (!std::isfinite(p) || p < -1e-12) throw ValidationError("behavior entries must be >= 0");
  }
  for (std::size_t x = 0; x < settings_a_; ++x) {
    for (std::size_t y = 0; y < settings_b_; ++y) {
      double sum = 0.0;
      for (std::size_t a = 0; a < outcomes_a_; ++a) {
        for (std::size_t b = 0; b < outcomes_b_; ++b) sum += (*this)(x, y, a, b);
      }
      if (std::abs(sum - 1.0) > kTolerance) {
        throw ValidationError("behavior row (x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                              ") does not sum to 1");
      }
    }
  }
  // Alice's marginal must not depend on y, Bob's must not depend on x.
  for (std::size_t x = 0; x < settings_a_; ++x) {
    for (std::size_t a = 0; a < outcomes_a_; ++a) {
      double first = 0.0;
      for (std::size_t y = 0; y < settings_b_; ++y) {
        double m = 0.0;
        for (std::size_t b = 0; b < outcomes_b_; ++b) m += (*this)(x, y, a, b);
        if (y == 0) first = m;
        if (std::abs(m - first) > kSignalingTolerance) {
          throw ValidationError("behavior signals from Bob to Alice");
        }
      }
    }
  }
  for (std::size_t y = 0; y < settings_b_; ++y) {
    for (std::size_t b = 0; b < outcomes_b_; ++b) {
      double first = 0.0;
      for (std::size_t x = 0; x < settings_a_; ++x) {
        double m = 0.0;
        for (std::size_t a = 0; a < outcomes_a_; ++a) m += (*this)(x, y, a, b);
        if (x == 0) first = m;
        if (std::abs(m - first) > kSignalingTolerance) {
          throw ValidationError("behavior signals from Alice to Bob");
        }
      }
    }
  }
}

BipartiteBehavior BipartiteBehavior::uniform(std::size_t settings_a, std::size_t settings_b,
                                             std::size_t outcomes_a, std::size_t outcomes_b) {
  const std::size_t n = settings_a * settings_b * outcomes_a * outcomes_b;
  return {settings_a, settings_b, outcomes_a, outcomes_b,
          std::vector<double>(n, 1.0 / static_cast<double>(outcomes_a * outcomes_b))};
}

std::vector<DeterministicStrategy> enumerate_strategies(std::size_t settings_a,
                                                        std::size_t settings_b,
                                                        std::size_t outcomes_a,
                                                        std::size_t outcomes_b) {
  if (settings_a == 0 || settings_b == 0 || outcomes_a == 0 || outcomes_b == 0) {
    throw StructuralError("strategy counts must be positive");
  }
  double count = std::pow(static_cast<double>(outcomes_a), static_cast<double>(settings_a)) *
                 std::pow(static_cast<double>(outcomes_b), static_cast<double>(settings_b));
  if (count > static_cast<double>(kMaxStrategies)) {
    throw CapacityError("too many deterministic strategies (" + std::to_string(count) + ")");
  }
  const auto total = static_cast<std::size_t>(count);
  std::vector<DeterministicStrategy> out;
  out.reserve(total);
  DeterministicStrategy s{std::vector<std::size_t>(settings_a, 0),
                          std::vector<std::size_t>(settings_b, 0)};
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(s);
    // Odometer increment, Bob's last setting fastest.
    std::size_t y = settings_b;
    bool carry = true;
    while (carry && y-- > 0) {
      carry = ++s.bob[y] == outcomes_b;
      if (carry) s.bob[y] = 0;
    }
    std::size_t x = settings_a;
    while (carry && x-- > 0) {
      carry = ++s.alice[x] == outcomes_a;
      if (carry) s.alice[x] = 0;
    }
  }
  return out;
}

BipartiteBehavior strategy_behavior(const DeterministicStrategy& s, std::size_t outcomes_a,
                                    std::size_t outcomes_b) {
  const std::size_t X = s.alice.size();
  const std::size_t Y = s.bob.size();
  std::vector<double> table(X * Y * outcomes_a * outcomes_b, 0.0);
  for (std::size_t x = 0; x < X; ++x) {
    for (std::size_t y = 0; y < Y; ++y) {
      if (s.alice[x] >= outcomes_a || s.bob[y] >= outcomes_b) {
        throw ValidationError("strategy assignment out of range");
      }
      table[((x * Y + y) * outcomes_a + s.alice[x]) * outcomes_b + s.bob[y]] = 1.0;
    }
  }
  return {X, Y, outcomes_a, outcomes_b, std::move(table)};
}

// ---------------------------------------------------------------------------

namespace {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

const std::array<Mat2, 3>& paulis() {
  static const std::array<Mat2, 3> s = [] {
    const Complex i(0.0, 1.0);
    Mat2 x, y, z;
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return std::array<Mat2, 3>{x, y, z};
  }();
  return s;
}

Eigen::Vector3d direction(const BlochAngles& a) {
  return {std::sin(a.theta) * std::cos(a.phi), std::sin(a.theta) * std::sin(a.phi),
          std::cos(a.theta)};
}

BlochAngles angles_of(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n < 1e-15) return {0.0, 0.0};
  const Eigen::Vector3d u = v / n;
  double phi = std::atan2(u.y(), u.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return {std::acos(std::clamp(u.z(), -1.0, 1.0)), phi};
}

Mat2 spin_projector(const BlochAngles& angles, std::size_t outcome) {
  const Eigen::Vector3d n = direction(angles);
  const auto& s = paulis();
  const Mat2 obs = n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (Mat2::Identity() + sign * obs);
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

Eigen::Vector4cd two_spin_amplitudes(const StateVector& state) {
  const auto& space = state.space();
  if (space.size() != 2 || space.subsystem(0).kind() != SubsystemKind::spin_half ||
      space.subsystem(1).kind() != SubsystemKind::spin_half) {
    throw StructuralError("expected a state on spin-half (x) spin-half");
  }
  if (!state.is_unit()) throw ValidationError("state must have unit norm");
  return state.amplitudes();
}

}  // namespace

BipartiteBehavior behavior_from_state(const StateVector& state,
                                      const SpinMeasurementAngles& angles) {
  const Eigen::Vector4cd psi = two_spin_amplitudes(state);
  const std::size_t X = angles.alice.size();
  const std::size_t Y = angles.bob.size();
  if (X == 0 || Y == 0) throw StructuralError("each party needs at least one setting");
  for (const auto& a : angles.alice) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.phi)) throw ValidationError("angles must be finite");
  }
  for (const auto& b : angles.bob) {
    if (!std::isfinite(b.theta) || !std::isfinite(b.phi)) throw ValidationError("angles must be finite");
  }
  std::vector<double> table(X * Y * 4);
  for (std::size_t x = 0; x < X; ++x) {
    for (std::size_t y = 0; y < Y; ++y) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          const Mat4 m = kron(spin_projector(angles.alice[x], a), spin_projector(angles.bob[y], b));
          table[((x * Y + y) * 2 + a) * 2 + b] = psi.dot(m * psi).real();
        }
      }
    }
  }
  return {X, Y, 2, 2, std::move(table)};
}

double chsh_value(const BipartiteBehavior& behavior) {
  if (behavior.settings_a() != 2 || behavior.settings_b() != 2 || behavior.outcomes_a() != 2 ||
      behavior.outcomes_b() != 2) {
    throw StructuralError("CHSH needs two settings and two outcomes per party");
  }
  auto correlator = [&](std::size_t x, std::size_t y) {
    return behavior(x, y, 0, 0) - behavior(x, y, 0, 1) - behavior(x, y, 1, 0) +
           behavior(x, y, 1, 1);
  };
  return correlator(0, 0) + correlator(0, 1) + correlator(1, 0) - correlator(1, 1);
}

Eigen::Matrix3d correlation_tensor(const StateVector& state) {
  const Eigen::Vector4cd psi = two_spin_amplitudes(state);
  const auto& s = paulis();
  Eigen::Matrix3d t;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) t(k, l) = psi.dot(kron(s[k], s[l]) * psi).real();
  }
  return t;
}

namespace {

constexpr double kGridStep = std::numbers::pi / 12.0;
constexpr int kPolarPoints = 13;    // 0 .. pi inclusive
constexpr int kAzimuthPoints = 24;  // 0 .. 23 pi / 12
constexpr int kMinSweeps = 3;
constexpr int kMaxSweeps = 100;
constexpr double kGoldenWidth = 1e-9;

// CHSH value with Alice answering Bob's directions optimally.
double best_response_value(const Eigen::Matrix3d& t, const std::array<double, 4>& bob) {
  const Eigen::Vector3d b0 = direction({bob[0], bob[1]});
  const Eigen::Vector3d b1 = direction({bob[2], bob[3]});
  return (t * (b0 + b1)).norm() + (t * (b0 - b1)).norm();
}

double golden_maximize(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > kGoldenWidth) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ChshOptimum chsh_max(const StateVector& state) {
  const Eigen::Matrix3d t = correlation_tensor(state);

  std::vector<Eigen::Vector3d> grid;
  std::vector<std::array<double, 2>> grid_angles;
  for (int p = 0; p < kPolarPoints; ++p) {
    for (int q = 0; q < kAzimuthPoints; ++q) {
      grid_angles.push_back({p * kGridStep, q * kGridStep});
      grid.push_back(direction({p * kGridStep, q * kGridStep}));
    }
  }
  std::array<double, 4> best{};
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double v = (t * (grid[i] + grid[j])).norm() + (t * (grid[i] - grid[j])).norm();
      if (v > best_value) {
        best_value = v;
        best = {grid_angles[i][0], grid_angles[i][1], grid_angles[j][0], grid_angles[j][1]};
      }
    }
  }

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = best_value;
    for (std::size_t k = 0; k < best.size(); ++k) {
      auto trial = best;
      auto f = [&](double v) {
        trial[k] = v;
        return best_response_value(t, trial);
      };
      const double arg = golden_maximize(f, best[k] - kGridStep, best[k] + kGridStep);
      trial[k] = arg;
      const double value = best_response_value(t, trial);
      if (value > best_value) {
        best_value = value;
        best = trial;
      }
    }
    if (sweep + 1 >= kMinSweeps && best_value - before < 1e-13) break;
  }

  const Eigen::Vector3d b0 = direction({best[0], best[1]});
  const Eigen::Vector3d b1 = direction({best[2], best[3]});
  ChshOptimum out;
  out.angles.alice = {angles_of(t * (b0 + b1)), angles_of(t * (b0 - b1))};
  out.angles.bob = {angles_of(b0), angles_of(b1)};
  out.value = chsh_value(behavior_from_state(state, out.angles));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kDenominator = std::int64_t{1} << 30;

std::int64_t vertex_value(const std::vector<std::int64_t>& num, const DeterministicStrategy& s,
                          std::size_t outcomes_a, std::size_t outcomes_b) {
  const std::size_t Y = s.bob.size();
  std::int64_t v = 0;
  for (std::size_t x = 0; x < s.alice.size(); ++x) {
    for (std::size_t y = 0; y < Y; ++y) {
      v += num[((x * Y + y) * outcomes_a + s.alice[x]) * outcomes_b + s.bob[y]];
    }
  }
  return v;
}

Eigen::MatrixXd vertex_matrix(const std::vector<DeterministicStrategy>& strategies,
                              const BipartiteBehavior& shape) {
  const auto rows = static_cast<Eigen::Index>(shape.table().size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(strategies.size()));
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto& st = strategies[s];
    for (std::size_t x = 0; x < st.alice.size(); ++x) {
      for (std::size_t y = 0; y < st.bob.size(); ++y) {
        d(static_cast<Eigen::Index>(shape.offset(x, y, st.alice[x], st.bob[y])),
          static_cast<Eigen::Index>(s)) = 1.0;
      }
    }
  }
  return d;
}

BellCertificate build_certificate(const Eigen::VectorXd& dual, const BipartiteBehavior& behavior,
                                  const std::vector<DeterministicStrategy>& strategies) {
  const std::size_t X = behavior.settings_a();
  const std::size_t Y = behavior.settings_b();
  const std::size_t An = behavior.outcomes_a();
  const std::size_t Bn = behavior.outcomes_b();
  const std::size_t n = behavior.table().size();

  // Shift so the uniform behavior scores 0, then scale the local bound to 2.
  std::vector<double> c(dual.data(), dual.data() + dual.size());
  double uniform_score = 0.0;
  for (double v : c) uniform_score += v / static_cast<double>(An * Bn);
  const double shift = -uniform_score / static_cast<double>(X * Y);
  for (double& v : c) v += shift;
  double bound = -std::numeric_limits<double>::infinity();
  for (const auto& s : strategies) {
    double v = 0.0;
    for (std::size_t x = 0; x < X; ++x) {
      for (std::size_t y = 0; y < Y; ++y) v += c[behavior.offset(x, y, s.alice[x], s.bob[y])];
    }
    bound = std::max(bound, v);
  }
  if (!(bound > 1e-12)) throw NumericalError("dual certificate has no positive local bound");

  BellCertificate cert;
  cert.denominator = kDenominator;
  cert.numerators.resize(n);
  const double scale = 2.0 / bound;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = std::round(c[k] * scale * static_cast<double>(kDenominator));
    if (std::abs(v) > 1e15) throw NumericalError("certificate coefficients overflow");
    cert.numerators[k] = static_cast<std::int64_t>(v);
  }
  // Rounding moved the bound slightly; one block shift restores exactly 2,
  // since every vertex picks exactly one entry of block (0, 0).
  std::int64_t vmax = std::numeric_limits<std::int64_t>::min();
  for (const auto& s : strategies) vmax = std::max(vmax, vertex_value(cert.numerators, s, An, Bn));
  const std::int64_t delta = vmax - 2 * kDenominator;
  for (std::size_t a = 0; a < An; ++a) {
    for (std::size_t b = 0; b < Bn; ++b) cert.numerators[behavior.offset(0, 0, a, b)] -= delta;
  }
  cert.coefficients.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    cert.coefficients[k] =
        static_cast<double>(cert.numerators[k]) / static_cast<double>(kDenominator);
  }
  cert.local_bound = 2.0;
  cert.behavior_value = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cert.behavior_value += cert.coefficients[k] * behavior.table()[k];
  }
  return cert;
}

}  // namespace

std::int64_t certificate_vertex_max(const BellCertificate& cert, std::size_t settings_a,
                                    std::size_t settings_b, std::size_t outcomes_a,
                                    std::size_t outcomes_b) {
  if (cert.numerators.size() != settings_a * settings_b * outcomes_a * outcomes_b) {
    throw StructuralError("certificate does not match the behavior shape");
  }
  std::int64_t vmax = std::numeric_limits<std::int64_t>::min();
  for (const auto& s : enumerate_strategies(settings_a, settings_b, outcomes_a, outcomes_b)) {
    vmax = std::max(vmax, vertex_value(cert.numerators, s, outcomes_a, outcomes_b));
  }
  return vmax;
}

MembershipResult lhv_membership(const BipartiteBehavior& behavior) {
  const std::size_t X = behavior.settings_a();
  const std::size_t Y = behavior.settings_b();
  const std::size_t An = behavior.outcomes_a();
  const std::size_t Bn = behavior.outcomes_b();

  MembershipResult out;
  out.strategies = enumerate_strategies(X, Y, An, Bn);
  const Eigen::MatrixXd d = vertex_matrix(out.strategies, behavior);
  const auto rows = d.rows();
  const auto cols = d.cols();

  Eigen::VectorXd p(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    p(k) = std::max(0.0, behavior.table()[static_cast<std::size_t>(k)]);
  }

  const auto membership = solve_lp(d, p, Eigen::VectorXd::Zero(cols), kFeasibilityTolerance);
  if (membership.status == LpStatus::optimal) {
    Eigen::VectorXd w = membership.x.cwiseMax(0.0);
    w /= w.sum();
    out.verdict = Verdict::feasible;
    out.weights.assign(w.data(), w.data() + w.size());
    out.reconstruction_error = (d * w - p).cwiseAbs().maxCoeff();
    return out;
  }

  // max v  s.t.  sum_s w_s D_s = v P + (1 - v) U,  w >= 0.
  const auto uniform = BipartiteBehavior::uniform(X, Y, An, Bn);
  Eigen::VectorXd u(rows);
  for (Eigen::Index k = 0; k < rows; ++k) u(k) = uniform.table()[static_cast<std::size_t>(k)];
  Eigen::MatrixXd a(rows, cols + 1);
  a.leftCols(cols) = d;
  a.col(cols) = -(p - u);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols + 1);
  cost(cols) = -1.0;
  const auto visibility = solve_lp(a, u, cost, kFeasibilityTolerance);
  if (visibility.status != LpStatus::optimal) {
    throw NumericalError("visibility LP did not reach an optimum");
  }

  auto cert = build_certificate(visibility.y, behavior, out.strategies);
  const std::int64_t vmax = certificate_vertex_max(cert, X, Y, An, Bn);
  if (vmax != 2 * cert.denominator) throw NumericalError("certificate failed vertex verification");
  if (!(cert.behavior_value > cert.local_bound + kCertificateMargin)) {
    throw NumericalError("behavior violates the certificate by less than the margin");
  }
  out.verdict = Verdict::infeasible;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace qscen
