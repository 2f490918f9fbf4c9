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

#include "qscen/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qscen/errors.hpp"

namespace qscen {

SubsystemSpec::SubsystemSpec(std::string label, SubsystemKind kind, std::size_t dimension)
    : label_(std::move(label)), kind_(kind), dimension_(dimension) {
  if (label_.empty()) throw StructuralError("subsystem label must not be empty");
}

SubsystemSpec SubsystemSpec::spin_half(std::string label) {
  return {std::move(label), SubsystemKind::spin_half, 2};
}

SubsystemSpec SubsystemSpec::optical_mode(std::string label, int max_occupancy) {
  if (max_occupancy < 0) throw ValidationError("mode '" + label + "': negative max occupancy");
  return {std::move(label), SubsystemKind::optical_mode, static_cast<std::size_t>(max_occupancy) + 1};
}

SubsystemSpec SubsystemSpec::position(std::string label, int box_count) {
  if (box_count <= 0) throw ValidationError("position '" + label + "': box count must be positive");
  return {std::move(label), SubsystemKind::position, static_cast<std::size_t>(box_count)};
}

CompositeSpace::CompositeSpace(std::vector<SubsystemSpec> subsystems)
    : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw StructuralError("composite space needs at least one subsystem");
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (!seen.insert(s.label()).second) {
      throw StructuralError("duplicate subsystem label '" + s.label() + "'");
    }
  }
  strides_.assign(subsystems_.size(), 1);
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = dimension_;
    dimension_ *= subsystems_[i].dimension();
  }
}

std::size_t CompositeSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label() == label) return i;
  }
  throw StructuralError("no subsystem labelled '" + label + "'");
}

std::vector<std::size_t> CompositeSpace::digits(std::size_t index) const {
  if (index >= dimension_) throw StructuralError("basis index out of range");
  std::vector<std::size_t> out(subsystems_.size());
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    out[i] = index / strides_[i];
    index %= strides_[i];
  }
  return out;
}

std::size_t CompositeSpace::index(std::span<const std::size_t> digits) const {
  if (digits.size() != subsystems_.size()) throw StructuralError("digit tuple has wrong length");
  std::size_t out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= subsystems_[i].dimension()) throw StructuralError("digit out of range");
    out += digits[i] * strides_[i];
  }
  return out;
}

CompositeSpace concat(const CompositeSpace& left, const CompositeSpace& right) {
  auto subs = left.subsystems();
  subs.insert(subs.end(), right.subsystems().begin(), right.subsystems().end());
  return CompositeSpace(std::move(subs));
}

// ---------------------------------------------------------------------------

StateVector::StateVector(CompositeSpace space, Amplitudes amplitudes, bool unit)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)), unit_(unit) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dimension()) {
    throw StructuralError("amplitude count does not match space dimension");
  }
}

StateVector::StateVector(CompositeSpace space, Amplitudes amplitudes)
    : StateVector(std::move(space), std::move(amplitudes), false) {
  unit_ = std::abs(amplitudes_.squaredNorm() - 1.0) <= kNormTolerance;
}

StateVector StateVector::normalized(CompositeSpace space, Amplitudes amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  amplitudes /= n;
  return StateVector(std::move(space), std::move(amplitudes), true);
}

StateVector StateVector::basis(CompositeSpace space, std::size_t index) {
  if (index >= space.dimension()) throw StructuralError("basis index out of range");
  Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(space.dimension()));
  a(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(space), std::move(a), true);
}

StateVector StateVector::basis(CompositeSpace space, std::span<const std::size_t> digits) {
  const std::size_t idx = space.index(digits);
  return basis(std::move(space), idx);
}

// ---------------------------------------------------------------------------

LinearOperator::LinearOperator(CompositeSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw StructuralError("operator order does not match space dimension");
  }
}

LinearOperator LinearOperator::identity(const CompositeSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dimension());
  LinearOperator op(space, Matrix::Identity(d, d));
  op.known_unitary_ = true;
  return op;
}

LinearOperator LinearOperator::zero(const CompositeSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dimension());
  return LinearOperator(space, Matrix::Zero(d, d));
}

LinearOperator LinearOperator::unitary(CompositeSpace space, Matrix matrix) {
  LinearOperator op(std::move(space), std::move(matrix));
  if (!is_unitary(op.matrix_, kTolerance)) throw ValidationError("operator is not unitary");
  op.known_unitary_ = true;
  return op;
}

namespace {

void require_same_space(const CompositeSpace& a, const CompositeSpace& b, const char* what) {
  if (!(a == b)) throw StructuralError(std::string(what) + ": operands live on different spaces");
}

}  // namespace

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a.space(), b.space(), "operator product");
  if (a.known_unitary() && b.known_unitary()) {
    return LinearOperator::unitary(a.space(), a.matrix() * b.matrix());
  }
  return LinearOperator(a.space(), a.matrix() * b.matrix());
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a.space(), b.space(), "operator difference");
  return LinearOperator(a.space(), a.matrix() - b.matrix());
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a.space(), b.space(), "operator sum");
  return LinearOperator(a.space(), a.matrix() + b.matrix());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<LinearOperator> projectors,
                                             std::vector<std::string> labels)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (projectors_.empty()) throw StructuralError("measurement needs at least one projector");
  if (labels_.size() != projectors_.size()) {
    throw StructuralError("measurement needs exactly one label per projector");
  }
  const auto& space = projectors_.front().space();
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const auto& p = projectors_[i];
    require_same_space(space, p.space(), "measurement");
    const Matrix& m = p.matrix();
    if (max_abs_diff(m * m, m) > kTolerance) {
      throw ValidationError("projector '" + labels_[i] + "' is not idempotent");
    }
    if (max_abs_diff(m, m.adjoint()) > kTolerance) {
      throw ValidationError("projector '" + labels_[i] + "' is not self-adjoint");
    }
    sum += m;
  }
  if (max_abs_diff(sum, Matrix::Identity(d, d)) > kTolerance) {
    throw ValidationError("projectors do not sum to the identity");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::binary(const LinearOperator& projector,
                                                    std::string yes_label,
                                                    std::string no_label) {
  auto complement = LinearOperator::identity(projector.space()) - projector;
  return ProjectiveMeasurement({projector, std::move(complement)},
                               {std::move(yes_label), std::move(no_label)});
}

// ---------------------------------------------------------------------------

StateVector tensor_state(const StateVector& left, const StateVector& right) {
  auto space = concat(left.space(), right.space());
  const auto& l = left.amplitudes();
  const auto& r = right.amplitudes();
  Amplitudes out(l.size() * r.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    out.segment(i * r.size(), r.size()) = l(i) * r;
  }
  return StateVector(std::move(space), std::move(out));
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.dimension() != ket.dimension()) throw StructuralError("inner: dimension mismatch");
  return bra.amplitudes().dot(ket.amplitudes());
}

StateVector apply(const LinearOperator& op, const StateVector& state) {
  if (op.dimension() != state.dimension()) throw StructuralError("apply: dimension mismatch");
  return StateVector(state.space(), op.matrix() * state.amplitudes(),
                     op.known_unitary() && state.is_unit());
}

namespace {

struct LocalLayout {
  std::vector<std::size_t> offsets;  // flat offset of each local basis index
  std::vector<std::size_t> bases;    // flat indices with every target digit zero
};

LocalLayout local_layout(std::span<const std::size_t> targets, const CompositeSpace& space,
                         Eigen::Index local_order) {
  std::set<std::size_t> distinct;
  std::size_t order = 1;
  for (auto t : targets) {
    if (t >= space.size()) throw StructuralError("embed: target index out of range");
    if (!distinct.insert(t).second) throw StructuralError("embed: targets must be distinct");
    order *= space.subsystem(t).dimension();
  }
  if (targets.empty()) throw StructuralError("embed: no targets");
  if (static_cast<Eigen::Index>(order) != local_order) {
    throw StructuralError("embed: local operator order does not match target dimensions");
  }

  LocalLayout layout;
  layout.offsets.resize(order);
  for (std::size_t local = 0; local < order; ++local) {
    std::size_t rem = local;
    std::size_t offset = 0;
    for (std::size_t k = targets.size(); k-- > 0;) {
      const auto dim = space.subsystem(targets[k]).dimension();
      offset += (rem % dim) * space.stride(targets[k]);
      rem /= dim;
    }
    layout.offsets[local] = offset;
  }

  layout.bases.reserve(space.dimension() / order);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    bool zero = true;
    for (auto t : targets) {
      if ((i / space.stride(t)) % space.subsystem(t).dimension() != 0) {
        zero = false;
        break;
      }
    }
    if (zero) layout.bases.push_back(i);
  }
  return layout;
}

}  // namespace

LinearOperator embed(const Matrix& local, std::span<const std::size_t> targets,
                     const CompositeSpace& space) {
  if (local.rows() != local.cols()) throw StructuralError("embed: local operator is not square");
  const auto layout = local_layout(targets, space, local.rows());
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix full = Matrix::Zero(d, d);
  for (auto base : layout.bases) {
    for (std::size_t r = 0; r < layout.offsets.size(); ++r) {
      for (std::size_t c = 0; c < layout.offsets.size(); ++c) {
        full(static_cast<Eigen::Index>(base + layout.offsets[r]),
             static_cast<Eigen::Index>(base + layout.offsets[c])) =
            local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return LinearOperator(space, std::move(full));
}

LinearOperator embed(const LinearOperator& local, std::span<const std::size_t> targets,
                     const CompositeSpace& space) {
  auto out = embed(local.matrix(), targets, space);
  if (local.known_unitary()) return LinearOperator::unitary(space, out.matrix());
  return out;
}

StateVector apply_local(const Matrix& local, std::span<const std::size_t> targets,
                        const StateVector& state, bool unitary) {
  if (local.rows() != local.cols()) throw StructuralError("apply_local: operator is not square");
  const auto& space = state.space();
  const auto layout = local_layout(targets, space, local.rows());
  const auto& in = state.amplitudes();
  Amplitudes out(in.size());
  Amplitudes gathered(local.rows());
  for (auto base : layout.bases) {
    for (std::size_t k = 0; k < layout.offsets.size(); ++k) {
      gathered(static_cast<Eigen::Index>(k)) =
          in(static_cast<Eigen::Index>(base + layout.offsets[k]));
    }
    const Amplitudes mixed = local * gathered;
    for (std::size_t k = 0; k < layout.offsets.size(); ++k) {
      out(static_cast<Eigen::Index>(base + layout.offsets[k])) =
          mixed(static_cast<Eigen::Index>(k));
    }
  }
  return StateVector(space, std::move(out), unitary && state.is_unit());
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.adjoint() * m, Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_unitary(const LinearOperator& op, double tol) { return is_unitary(op.matrix(), tol); }

LinearOperator projector_onto(std::span<const StateVector> basis_states) {
  if (basis_states.empty()) throw StructuralError("projector_onto: no states supplied");
  const auto& space = basis_states.front().space();
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix p = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < basis_states.size(); ++i) {
    const auto& v = basis_states[i];
    require_same_space(space, v.space(), "projector_onto");
    if (std::abs(v.norm_squared() - 1.0) > kTolerance) {
      throw ValidationError("projector_onto: state " + std::to_string(i) + " is not normalized");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(inner(basis_states[j], v)) > kTolerance) {
        throw ValidationError("projector_onto: states " + std::to_string(j) + " and " +
                              std::to_string(i) + " are not orthogonal");
      }
    }
    p += v.amplitudes() * v.amplitudes().adjoint();
  }
  return LinearOperator(space, std::move(p));
}

LinearOperator projector_onto(std::initializer_list<StateVector> basis_states) {
  return projector_onto(std::span<const StateVector>(basis_states.begin(), basis_states.size()));
}

std::vector<double> schmidt_coefficients(const StateVector& state,
                                         std::span<const std::size_t> party) {
  const auto& space = state.space();
  std::vector<bool> in_party(space.size(), false);
  for (auto p : party) {
    if (p >= space.size()) throw StructuralError("schmidt: subsystem index out of range");
    if (in_party[p]) throw StructuralError("schmidt: duplicate subsystem index");
    in_party[p] = true;
  }
  std::size_t rows = 1;
  std::size_t cols = 1;
  for (std::size_t i = 0; i < space.size(); ++i) {
    (in_party[i] ? rows : cols) *= space.subsystem(i).dimension();
  }
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t idx = 0; idx < space.dimension(); ++idx) {
    std::size_t r = 0;
    std::size_t c = 0;
    const auto dig = space.digits(idx);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto dim = space.subsystem(i).dimension();
      if (in_party[i]) {
        r = r * dim + dig[i];
      } else {
        c = c * dim + dig[i];
      }
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state.amplitude(idx);
  }
  const Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace qscen
