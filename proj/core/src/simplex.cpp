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

#include "qscen/simplex.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "qscen/errors.hpp"

namespace qscen {

namespace {

constexpr double kCostEps = 1e-12;
// Tableau entries below this are rounding debris from earlier pivots.
constexpr double kFlush = 1e-15;

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : rows_(a.rows()), vars_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1),
        flipped_(static_cast<std::size_t>(a.rows()), false),
        basis_(static_cast<std::size_t>(a.rows())),
        active_(static_cast<std::size_t>(a.rows()), true) {
    t_.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      flipped_[static_cast<std::size_t>(i)] = sign < 0.0;
      t_.row(i).head(vars_) = sign * a.row(i);
      t_(i, vars_ + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
      basis_[static_cast<std::size_t>(i)] = vars_ + i;
    }
  }

  Eigen::Index rhs() const { return vars_ + rows_; }
  bool artificial(Eigen::Index j) const { return j >= vars_ && j < rhs(); }

  // Reduced costs for cost vector `cost` (length vars_ + rows_).
  void price(const Eigen::VectorXd& cost) {
    z_ = Eigen::VectorXd::Zero(rhs() + 1);
    z_.head(rhs()) = cost;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) z_ -= cb * t_.row(i).transpose();
    }
  }

  // Runs simplex iterations; returns false if unbounded.
  bool iterate(bool allow_artificial, int& pivots) {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < rhs(); ++j) {
        if (!allow_artificial && artificial(j)) continue;
        if (z_(j) < -kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double a = t_(i, enter);
        if (a <= 0.0) continue;
        const double ratio = t_(i, rhs()) / a;
        if (ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] <
                                  basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const double p = t_(row, col);
    if (std::abs(p) < kMinPivot) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "ill-conditioned LP: pivot %.3e at row %ld, column %ld", p,
                    static_cast<long>(row), static_cast<long>(col));
      throw NumericalError(buf);
    }
    t_.row(row) /= p;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    const double fz = z_(col);
    if (fz != 0.0) z_ -= fz * t_.row(row).transpose();
    t_ = t_.unaryExpr([](double v) { return std::abs(v) < kFlush ? 0.0 : v; });
    t_.col(col).setZero();
    t_(row, col) = 1.0;
    z_(col) = 0.0;
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Pivots zero-level artificials out of the basis; rows that cannot be
  // cleared are linearly dependent and get dropped.
  void drive_out_artificials(int& pivots) {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!artificial(basis_[static_cast<std::size_t>(i)])) continue;
      Eigen::Index col = -1;
      double best = 0.0;
      for (Eigen::Index j = 0; j < vars_; ++j) {
        if (std::abs(t_(i, j)) > std::max(best, 1e-9)) {
          best = std::abs(t_(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++pivots;
      } else {
        active_[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const auto j = basis_[static_cast<std::size_t>(i)];
      if (j < vars_ && active_[static_cast<std::size_t>(i)]) x(j) = t_(i, rhs());
    }
    return x;
  }

  double artificial_sum() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (artificial(basis_[static_cast<std::size_t>(i)])) s += t_(i, rhs());
    }
    return s;
  }

  // Row duals from the reduced costs of the artificial columns, given the cost
  // each artificial carried in the current phase.
  Eigen::VectorXd duals(double artificial_cost) const {
    Eigen::VectorXd y(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double yi = artificial_cost - z_(vars_ + i);
      y(i) = flipped_[static_cast<std::size_t>(i)] ? -yi : yi;
    }
    return y;
  }

 private:
  Eigen::Index rows_;
  Eigen::Index vars_;
  Eigen::MatrixXd t_;
  Eigen::VectorXd z_;
  std::vector<bool> flipped_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> active_;
};

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                    double feasibility_tol) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw StructuralError("solve_lp: inconsistent dimensions");
  }
  const Eigen::Index n = a.cols();
  const Eigen::Index m = a.rows();
  Tableau tab(a, b);
  LpSolution out;

  Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(n + m);
  phase_one.tail(m).setOnes();
  tab.price(phase_one);
  tab.iterate(true, out.pivots);
  out.infeasibility = tab.artificial_sum();
  if (out.infeasibility > feasibility_tol) {
    out.status = LpStatus::infeasible;
    out.x = tab.primal();
    out.y = tab.duals(1.0);
    return out;
  }

  tab.drive_out_artificials(out.pivots);
  Eigen::VectorXd phase_two = Eigen::VectorXd::Zero(n + m);
  phase_two.head(n) = c;
  tab.price(phase_two);
  const bool bounded = tab.iterate(false, out.pivots);
  out.x = tab.primal();
  out.y = tab.duals(0.0);
  out.objective = c.dot(out.x);
  out.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
  return out;
}

}  // namespace qscen
