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

// Dense two-phase simplex for  min c^T x  s.t.  A x = b, x >= 0.
//
// Bland's rule for both the entering and the leaving variable, so the method
// cannot cycle on the highly degenerate problems that come out of behavior
// tables. Pivots smaller than kMinPivot raise NumericalError naming the pivot.

#pragma once

#include <Eigen/Dense>

namespace qscen {

inline constexpr double kMinPivot = 1e-13;

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;  ///< primal point (phase-one point when infeasible)
  /// Duals of the equality rows. At optimality c - A^T y >= 0 and b^T y equals
  /// the optimum. When infeasible these are the phase-one duals: A^T y <= 0 and
  /// b^T y > 0, a Farkas certificate.
  Eigen::VectorXd y;
  double objective = 0.0;
  /// Sum of artificial variables at the end of phase one.
  double infeasibility = 0.0;
  int pivots = 0;
};

/// `feasibility_tol` bounds the phase-one residual accepted as feasible.
LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& c, double feasibility_tol);

}  // namespace qscen
