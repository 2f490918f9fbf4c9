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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "qscen/errors.hpp"

namespace qscen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

CompositeSpace two_mode_space(int capacity) {
  return CompositeSpace({SubsystemSpec::optical_mode("i", capacity),
                         SubsystemSpec::optical_mode("j", capacity)});
}

void check_phase(double phi) {
  if (!std::isfinite(phi) || phi < 0.0 || phi >= kTwoPi) {
    throw ValidationError("phase must lie in [0, 2 pi)");
  }
}

std::size_t occupancy(std::size_t index, const CompositeSpace& space, std::size_t mode) {
  return (index / space.stride(mode)) % space.subsystem(mode).dimension();
}

void require_mode_space(const CompositeSpace& space) {
  for (const auto& s : space.subsystems()) {
    if (s.kind() != SubsystemKind::optical_mode) {
      throw StructuralError("state is not on a circuit-built space");
    }
  }
}

}  // namespace

ModeCircuit::ModeCircuit(std::vector<std::string> modes, std::vector<Element> elements,
                         int max_total_photons)
    : modes_(std::move(modes)), elements_(std::move(elements)),
      max_total_photons_(max_total_photons) {
  if (modes_.empty()) throw ValidationError("circuit needs at least one mode");
  if (max_total_photons_ < 1) throw ValidationError("max_total_photons must be positive");
  std::set<std::string> seen;
  for (const auto& m : modes_) {
    if (m.empty()) throw ValidationError("mode labels must not be empty");
    if (!seen.insert(m).second) throw ValidationError("duplicate mode '" + m + "'");
  }
  for (const auto& e : elements_) {
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      mode_index(bs->mode_i);
      mode_index(bs->mode_j);
      if (bs->mode_i == bs->mode_j) throw ValidationError("beam splitter needs two distinct modes");
      if (!std::isfinite(bs->theta) || bs->theta < 0.0 || bs->theta > std::numbers::pi / 2) {
        throw ValidationError("beam splitter theta must lie in [0, pi/2]");
      }
      check_phase(bs->phi);
    } else {
      const auto& ps = std::get<PhaseShift>(e);
      mode_index(ps.mode);
      check_phase(ps.phi);
    }
  }
}

std::size_t ModeCircuit::mode_index(const std::string& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i] == label) return i;
  }
  throw ValidationError("circuit has no mode '" + label + "'");
}

CompositeSpace build_space(const ModeCircuit& circuit) {
  std::vector<SubsystemSpec> subs;
  subs.reserve(circuit.modes().size());
  for (const auto& m : circuit.modes()) {
    subs.push_back(SubsystemSpec::optical_mode(m, circuit.max_total_photons()));
  }
  return CompositeSpace(std::move(subs));
}

LinearOperator beam_splitter_unitary(double theta, double phi, int capacity) {
  if (capacity < 1) throw ValidationError("capacity must be at least 1");
  const auto space = two_mode_space(capacity);
  const auto d = static_cast<Eigen::Index>(space.dimension());
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;
  const Complex c = std::cos(theta);
  const Complex s = std::sin(theta);
  const Complex i_unit(0.0, 1.0);
  // a_i^+ -> x a_i^+ + y a_j^+ ;  a_j^+ -> z a_i^+ + w a_j^+
  const Complex x = c;
  const Complex y = i_unit * std::exp(i_unit * phi) * s;
  const Complex z = i_unit * std::exp(-i_unit * phi) * s;
  const Complex w = c;

  Matrix u = Matrix::Identity(d, d);
  for (int n = 0; n <= capacity; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int m = n - k;
      const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(k) * width + m);
      u.col(col).setZero();
      const double in_norm = std::sqrt(factorial(k) * factorial(m));
      for (int r = 0; r <= k; ++r) {
        for (int t = 0; t <= m; ++t) {
          const int p = r + t;  // photons leaving in mode i
          const Complex coeff = binomial(k, r) * std::pow(x, r) * std::pow(y, k - r) *
                                binomial(m, t) * std::pow(z, t) * std::pow(w, m - t);
          const auto row = static_cast<Eigen::Index>(static_cast<std::size_t>(p) * width + (n - p));
          u(row, col) += coeff * std::sqrt(factorial(p) * factorial(n - p)) / in_norm;
        }
      }
    }
  }
  return LinearOperator::unitary(space, std::move(u));
}

LinearOperator phase_shift_unitary(double phi, int capacity) {
  if (capacity < 1) throw ValidationError("capacity must be at least 1");
  const CompositeSpace space({SubsystemSpec::optical_mode("i", capacity)});
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    u(n, n) = std::exp(Complex(0.0, phi * static_cast<double>(n)));
  }
  return LinearOperator::unitary(space, std::move(u));
}

StateVector run_circuit(const ModeCircuit& circuit, const PhotonInput& input) {
  auto space = build_space(circuit);
  std::vector<std::size_t> digits(circuit.modes().size(), 0);
  int total = 0;
  for (const auto& [mode, n] : input) {
    if (n < 0) throw ValidationError("negative occupancy for mode '" + mode + "'");
    digits[circuit.mode_index(mode)] = static_cast<std::size_t>(n);
    total += n;
  }
  if (total > circuit.max_total_photons()) {
    throw ValidationError("input occupancy exceeds max_total_photons");
  }
  auto state = StateVector::basis(space, digits);
  const int cap = circuit.max_total_photons();
  for (const auto& e : circuit.elements()) {
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      const std::array<std::size_t, 2> targets{circuit.mode_index(bs->mode_i),
                                               circuit.mode_index(bs->mode_j)};
      state = apply_local(beam_splitter_unitary(bs->theta, bs->phi, cap).matrix(), targets,
                          state, true);
    } else {
      const auto& ps = std::get<PhaseShift>(e);
      const std::array<std::size_t, 1> targets{circuit.mode_index(ps.mode)};
      state = apply_local(phase_shift_unitary(ps.phi, cap).matrix(), targets, state, true);
    }
  }
  return state;
}

Matrix mode_transfer_matrix(const ModeCircuit& circuit) {
  const auto n = static_cast<Eigen::Index>(circuit.modes().size());
  Matrix u = Matrix::Identity(n, n);
  const Complex i_unit(0.0, 1.0);
  for (const auto& e : circuit.elements()) {
    Matrix step = Matrix::Identity(n, n);
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      const auto a = static_cast<Eigen::Index>(circuit.mode_index(bs->mode_i));
      const auto b = static_cast<Eigen::Index>(circuit.mode_index(bs->mode_j));
      const double c = std::cos(bs->theta);
      const double s = std::sin(bs->theta);
      step(a, a) = c;
      step(b, a) = i_unit * std::exp(i_unit * bs->phi) * s;
      step(a, b) = i_unit * std::exp(-i_unit * bs->phi) * s;
      step(b, b) = c;
    } else {
      const auto& ps = std::get<PhaseShift>(e);
      const auto a = static_cast<Eigen::Index>(circuit.mode_index(ps.mode));
      step(a, a) = std::exp(i_unit * ps.phi);
    }
    u = step * u;
  }
  return u;
}

double mean_photon_number(const StateVector& state) {
  const auto& space = state.space();
  require_mode_space(space);
  double mean = 0.0;
  for (std::size_t idx = 0; idx < space.dimension(); ++idx) {
    const double p = std::norm(state.amplitude(idx));
    if (p == 0.0) continue;
    std::size_t total = 0;
    for (std::size_t m = 0; m < space.size(); ++m) total += occupancy(idx, space, m);
    mean += p * static_cast<double>(total);
  }
  return mean / state.norm_squared();
}

std::vector<std::string> present_modes(const CompositeSpace& space, const DetectorPlan& plan) {
  for (const auto& [mode, det] : plan) space.index_of(mode);
  std::vector<std::string> out;
  for (const auto& s : space.subsystems()) {
    auto it = plan.find(s.label());
    if (it != plan.end() && it->second == Detector::present) out.push_back(s.label());
  }
  return out;
}

namespace {

// Probability mass of each click pattern over `modes`, indexed by the bit
// pattern with the first mode as the most significant bit. Summation runs in
// basis order, so results are reproducible bit for bit.
std::vector<double> pattern_masses(const StateVector& state,
                                   const std::vector<std::size_t>& modes) {
  const auto& space = state.space();
  std::vector<double> mass(std::size_t{1} << modes.size(), 0.0);
  for (std::size_t idx = 0; idx < space.dimension(); ++idx) {
    const double p = std::norm(state.amplitude(idx));
    if (p == 0.0) continue;
    std::size_t pattern = 0;
    for (auto m : modes) pattern = (pattern << 1) | (occupancy(idx, space, m) > 0 ? 1 : 0);
    mass[pattern] += p;
  }
  return mass;
}

std::string bits(std::size_t pattern, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t k = 0; k < width; ++k) {
    if ((pattern >> (width - 1 - k)) & 1U) out[k] = '1';
  }
  return out;
}

}  // namespace

ConditionalDistribution click_distribution(const StateVector& state, const DetectorPlan& plan) {
  const auto& space = state.space();
  require_mode_space(space);
  const auto modes = present_modes(space, plan);
  if (modes.empty()) return {{"no measurement"}, {1.0}};
  if (modes.size() > 20) throw CapacityError("too many present detectors");
  std::vector<std::size_t> idx;
  for (const auto& m : modes) idx.push_back(space.index_of(m));
  auto mass = pattern_masses(state, idx);
  const double total = state.norm_squared();
  if (total <= kNullEventCutoff) throw ConditioningError("zero state has no click statistics");
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < mass.size(); ++p) {
    labels.push_back(bits(p, modes.size()));
    mass[p] /= total;
  }
  return {std::move(labels), std::move(mass)};
}

double pattern_probability(const StateVector& state, const ClickCondition& pattern) {
  const auto& space = state.space();
  require_mode_space(space);
  std::vector<std::size_t> modes;
  std::size_t wanted = 0;
  for (const auto& [mode, click] : pattern) {
    modes.push_back(space.index_of(mode));
    wanted = (wanted << 1) | (click ? 1 : 0);
  }
  const auto mass = pattern_masses(state, modes);
  return mass[wanted] / state.norm_squared();
}

double conditional_click(const StateVector& state, const DetectorPlan& plan,
                         const ClickCondition& condition, const std::string& target) {
  const auto present = present_modes(state.space(), plan);
  auto is_present = [&](const std::string& m) {
    return std::find(present.begin(), present.end(), m) != present.end();
  };
  if (!is_present(target)) throw ValidationError("target mode '" + target + "' has no detector");
  for (const auto& [mode, click] : condition) {
    if (!is_present(mode)) throw ValidationError("condition mode '" + mode + "' has no detector");
  }
  const double p_condition = pattern_probability(state, condition);
  if (p_condition <= kNullEventCutoff) throw ConditioningError("conditioning on null event");
  auto joint = condition;
  if (auto it = joint.find(target); it != joint.end()) {
    return it->second ? 1.0 : 0.0;
  }
  joint[target] = true;
  return pattern_probability(state, joint) / p_condition;
}

}  // namespace qscen
