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

#pragma once

#include <stdexcept>
#include <string>

namespace qscen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, labels or dimensions do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition (normalization, orthogonality, ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of (numerically) zero probability.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// The linear program hit a pivot too small to trust.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A shipped scenario reconstruction failed its own validation.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qscen
