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

// Composite Hilbert spaces, dense states and operators, projective measurements.
//
// Basis ordering is mixed-radix with the last subsystem varying fastest: for
// subsystems with dimensions (d0, d1, ..., dn-1) the digit tuple (k0, ..., kn-1)
// maps to index ((k0 * d1 + k1) * d2 + k2) ... . Every module and file format
// uses this ordering. Spin-half subsystems use index 0 for |up> and 1 for
// |down>; optical modes index their photon number.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qscen {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Global comparison tolerance for projector and unitarity checks.
inline constexpr double kTolerance = 1e-10;
/// Tolerance on |norm^2 - 1| for a state to carry the unit-norm flag.
inline constexpr double kNormTolerance = 1e-12;

class LinearOperator;

enum class SubsystemKind { spin_half, optical_mode, position };

class SubsystemSpec {
 public:
  static SubsystemSpec spin_half(std::string label);
  static SubsystemSpec optical_mode(std::string label, int max_occupancy);
  static SubsystemSpec position(std::string label, int box_count);

  const std::string& label() const { return label_; }
  SubsystemKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }

  bool operator==(const SubsystemSpec&) const = default;

 private:
  SubsystemSpec(std::string label, SubsystemKind kind, std::size_t dimension);

  std::string label_;
  SubsystemKind kind_;
  std::size_t dimension_;
};

class CompositeSpace {
 public:
  /// Throws StructuralError on an empty list or duplicate labels.
  explicit CompositeSpace(std::vector<SubsystemSpec> subsystems);

  std::size_t size() const { return subsystems_.size(); }
  const SubsystemSpec& subsystem(std::size_t i) const { return subsystems_.at(i); }
  const std::vector<SubsystemSpec>& subsystems() const { return subsystems_; }
  std::size_t dimension() const { return dimension_; }

  /// Index of the subsystem with this label; StructuralError if absent.
  std::size_t index_of(const std::string& label) const;

  /// Distance in the flat index between consecutive digits of subsystem i.
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;

  bool operator==(const CompositeSpace& other) const {
    return subsystems_ == other.subsystems_;
  }

 private:
  std::vector<SubsystemSpec> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

/// Subsystems of `left` followed by those of `right`.
CompositeSpace concat(const CompositeSpace& left, const CompositeSpace& right);

class StateVector {
 public:
  /// Flag is set iff |sum |a|^2 - 1| <= kNormTolerance.
  StateVector(CompositeSpace space, Amplitudes amplitudes);

  /// Rescales to unit norm; ValidationError for the zero vector.
  static StateVector normalized(CompositeSpace space, Amplitudes amplitudes);
  static StateVector basis(CompositeSpace space, std::size_t index);
  static StateVector basis(CompositeSpace space, std::span<const std::size_t> digits);

  const CompositeSpace& space() const { return space_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  std::size_t dimension() const { return space_.dimension(); }
  bool is_unit() const { return unit_; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  StateVector(CompositeSpace space, Amplitudes amplitudes, bool unit);
  friend StateVector apply(const LinearOperator&, const StateVector&);
  friend StateVector apply_local(const Matrix&, std::span<const std::size_t>, const StateVector&,
                                 bool);

  CompositeSpace space_;
  Amplitudes amplitudes_;
  bool unit_;
};

class LinearOperator {
 public:
  LinearOperator(CompositeSpace space, Matrix matrix);

  static LinearOperator identity(const CompositeSpace& space);
  static LinearOperator zero(const CompositeSpace& space);
  /// ValidationError unless the matrix passes is_unitary at kTolerance.
  static LinearOperator unitary(CompositeSpace space, Matrix matrix);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return space_.dimension(); }
  /// True when unitarity was verified at construction.
  bool known_unitary() const { return known_unitary_; }

 private:
  CompositeSpace space_;
  Matrix matrix_;
  bool known_unitary_ = false;
};

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);

class ProjectiveMeasurement {
 public:
  /// Validates idempotence, self-adjointness and completeness at kTolerance.
  ProjectiveMeasurement(std::vector<LinearOperator> projectors, std::vector<std::string> labels);

  /// The two-outcome measurement {P, 1 - P}.
  static ProjectiveMeasurement binary(const LinearOperator& projector, std::string yes_label,
                                      std::string no_label);

  const CompositeSpace& space() const { return projectors_.front().space(); }
  std::size_t size() const { return projectors_.size(); }
  const LinearOperator& projector(std::size_t i) const { return projectors_.at(i); }
  const std::vector<LinearOperator>& projectors() const { return projectors_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<LinearOperator> projectors_;
  std::vector<std::string> labels_;
};

/// Kronecker product; StructuralError on a label collision.
StateVector tensor_state(const StateVector& left, const StateVector& right);

/// <bra|ket>, conjugate-linear in the first argument.
Complex inner(const StateVector& bra, const StateVector& ket);

/// Matrix-vector product. The result keeps the unit-norm flag only if the
/// state had it and the operator is known unitary.
StateVector apply(const LinearOperator& op, const StateVector& state);

/// Full-space operator acting as `local` on `targets` (in the given order) and
/// as the identity elsewhere.
LinearOperator embed(const LinearOperator& local, std::span<const std::size_t> targets,
                     const CompositeSpace& space);
LinearOperator embed(const Matrix& local, std::span<const std::size_t> targets,
                     const CompositeSpace& space);

/// Applies `local` on `targets` without materializing the full operator.
/// `unitary` declares that `local` is unitary so the norm flag may be kept.
StateVector apply_local(const Matrix& local, std::span<const std::size_t> targets,
                        const StateVector& state, bool unitary = false);

bool is_unitary(const Matrix& m, double tol);
bool is_unitary(const LinearOperator& op, double tol);

/// Sum of |v><v| over pairwise orthogonal (within kTolerance) states.
LinearOperator projector_onto(std::span<const StateVector> basis_states);
LinearOperator projector_onto(std::initializer_list<StateVector> basis_states);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Singular values of the amplitude matrix across the cut `party` | rest,
/// sorted in decreasing order.
std::vector<double> schmidt_coefficients(const StateVector& state,
                                         std::span<const std::size_t> party);

}  // namespace qscen
