#include "rts/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rts/domain.hpp"

namespace rts {

namespace {
constexpr double kPivotEps = 1e-11;
constexpr double kFeasTol = 1e-7;
constexpr int kRefactorInterval = 256;
}  // namespace

int BoundedSimplex::add_row(RowType type, double rhs, double artificial_cost) {
  if (rhs < 0) throw RtsError("simplex: negative right-hand side");
  int row = rows();
  rhs_.push_back(rhs);
  row_type_.push_back(type);
  logical_.push_back(-1);

  int logical = add_column(type == RowType::Equal ? artificial_cost : 0.0, kInfinity,
                           {{row, 1.0}});
  logical_[static_cast<std::size_t>(row)] = logical;
  artificial_[static_cast<std::size_t>(logical)] = (type == RowType::Equal);

  if (basis_ready_) {
    // Extend the factorization: no pre-existing column touches this row, so
    // the basis matrix gains an identity row/column for the new logical.
    std::size_t old_m = m() - 1;
    std::vector<double> grown(m() * m(), 0.0);
    for (std::size_t i = 0; i < old_m; ++i)
      for (std::size_t j = 0; j < old_m; ++j)
        grown[i * m() + j] = binv_[i * old_m + j];
    grown[(m() - 1) * m() + (m() - 1)] = 1.0;
    binv_ = std::move(grown);
    basis_.push_back(logical);
    xb_.push_back(rhs);
    status_[static_cast<std::size_t>(logical)] = VarStatus::Basic;
    basic_row_[static_cast<std::size_t>(logical)] = row;
  }
  return row;
}

int BoundedSimplex::add_column(double cost, double upper,
                               const std::vector<std::pair<int, double>>& entries) {
  for (const auto& [row, v] : entries) {
    if (row < 0 || row >= rows()) throw RtsError("simplex: column entry row out of range");
    (void)v;
  }
  cost_.push_back(cost);
  upper_.push_back(upper);
  entries_.push_back(entries);
  status_.push_back(VarStatus::AtLower);
  basic_row_.push_back(-1);
  artificial_.push_back(false);
  return cols() - 1;
}

void BoundedSimplex::set_cost(int col, double cost) { cost_[static_cast<std::size_t>(col)] = cost; }

void BoundedSimplex::set_upper(int col, double upper) {
  upper_[static_cast<std::size_t>(col)] = upper;
  if (status_[static_cast<std::size_t>(col)] == VarStatus::AtUpper && upper >= kInfinity)
    status_[static_cast<std::size_t>(col)] = VarStatus::AtLower;
}

double BoundedSimplex::nonbasic_value(int col) const {
  return status_[static_cast<std::size_t>(col)] == VarStatus::AtUpper
             ? upper_[static_cast<std::size_t>(col)]
             : 0.0;
}

void BoundedSimplex::reset_basis() {
  for (int j = 0; j < cols(); ++j) {
    status_[static_cast<std::size_t>(j)] = VarStatus::AtLower;
    basic_row_[static_cast<std::size_t>(j)] = -1;
  }
  basis_.assign(m(), -1);
  binv_.assign(m() * m(), 0.0);
  xb_.assign(m(), 0.0);
  for (int i = 0; i < rows(); ++i) {
    int logical = logical_[static_cast<std::size_t>(i)];
    basis_[static_cast<std::size_t>(i)] = logical;
    status_[static_cast<std::size_t>(logical)] = VarStatus::Basic;
    basic_row_[static_cast<std::size_t>(logical)] = i;
    binv_[static_cast<std::size_t>(i) * m() + static_cast<std::size_t>(i)] = 1.0;
    xb_[static_cast<std::size_t>(i)] = rhs_[static_cast<std::size_t>(i)];
  }
  basis_ready_ = true;
}

std::vector<double> BoundedSimplex::ftran(int col) const {
  std::vector<double> w(m(), 0.0);
  for (const auto& [row, v] : entries_[static_cast<std::size_t>(col)]) {
    const std::size_t r = static_cast<std::size_t>(row);
    for (std::size_t i = 0; i < m(); ++i) w[i] += v * binv_[i * m() + r];
  }
  return w;
}

void BoundedSimplex::compute_duals() {
  y_.assign(m(), 0.0);
  for (std::size_t k = 0; k < m(); ++k) {
    double ck = cost_[static_cast<std::size_t>(basis_[k])];
    if (ck == 0.0) continue;
    const double* row = &binv_[k * m()];
    for (std::size_t i = 0; i < m(); ++i) y_[i] += ck * row[i];
  }
}

void BoundedSimplex::refactorize() {
  // Rebuild B^{-1} from the basis columns by Gauss-Jordan elimination with
  // partial pivoting, then recompute the basic values from scratch.
  const std::size_t n = m();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [row, v] : entries_[static_cast<std::size_t>(basis_[k])])
      a[static_cast<std::size_t>(row) * n + k] = v;

  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-12) throw RtsError("simplex: singular basis during refactorization");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    double d = a[col * n + col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] /= d;
      inv[col * n + j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  // inv now holds (P B)^-1 composed correctly: rows were swapped jointly.
  binv_ = std::move(inv);
  recompute_xb();
}

void BoundedSimplex::recompute_xb() {
  std::vector<double> rhs_eff(rhs_);
  for (int j = 0; j < cols(); ++j) {
    if (status_[static_cast<std::size_t>(j)] != VarStatus::AtUpper) continue;
    double v = upper_[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    for (const auto& [row, coef] : entries_[static_cast<std::size_t>(j)])
      rhs_eff[static_cast<std::size_t>(row)] -= coef * v;
  }
  for (std::size_t i = 0; i < m(); ++i) {
    double acc = 0.0;
    const double* row = &binv_[i * m()];
    for (std::size_t k = 0; k < m(); ++k) acc += row[k] * rhs_eff[k];
    xb_[i] = acc;
  }
}

void BoundedSimplex::lock_artificial(int col) {
  cost_[static_cast<std::size_t>(col)] = 0.0;
  upper_[static_cast<std::size_t>(col)] = 0.0;
}

bool BoundedSimplex::lock_zero_artificials() {
  bool changed = false;
  for (int j = 0; j < cols(); ++j) {
    std::size_t js = static_cast<std::size_t>(j);
    if (!artificial_[js] || cost_[js] == 0.0) continue;
    double v = status_[js] == VarStatus::Basic ? xb_[static_cast<std::size_t>(basic_row_[js])]
                                               : nonbasic_value(j);
    if (std::fabs(v) <= kFeasTol) {
      lock_artificial(j);
      changed = true;
    }
  }
  return changed;
}

double BoundedSimplex::dual_tolerance() const {
  // Big-M costs in the basis inflate the attainable dual accuracy.
  double max_cb = 0.0;
  for (std::size_t k = 0; k < m(); ++k)
    max_cb = std::max(max_cb, std::fabs(cost_[static_cast<std::size_t>(basis_[k])]));
  return 1e-9 * std::max(1.0, 1e-3 * max_cb);
}

LpStatus BoundedSimplex::solve(long long max_pivots) {
  if (!basis_ready_ || basis_.size() != m()) reset_basis();
  if (max_pivots < 0) max_pivots = 20000 + 400LL * rows() + 10LL * cols();

  // A bound fixed below a basic value (branching) invalidates the basis.
  for (std::size_t i = 0; i < m(); ++i) {
    int col = basis_[i];
    if (xb_[i] > upper_[static_cast<std::size_t>(col)] + kFeasTol || xb_[i] < -kFeasTol) {
      reset_basis();
      break;
    }
  }

  long long pivot_count = 0;
  int degenerate_streak = 0;
  bool bland = false;
  int since_refactor = 0;

  while (true) {
    compute_duals();
    const double tol = dual_tolerance();

    int entering = -1;
    double best_violation = tol;
    for (int j = 0; j < cols(); ++j) {
      std::size_t js = static_cast<std::size_t>(j);
      if (status_[js] == VarStatus::Basic) continue;
      if (upper_[js] <= 0.0 && status_[js] == VarStatus::AtLower) continue;  // fixed
      double d = cost_[js];
      for (const auto& [row, v] : entries_[js]) d -= y_[static_cast<std::size_t>(row)] * v;
      double violation = 0.0;
      if (status_[js] == VarStatus::AtLower && d < -tol) violation = -d;
      if (status_[js] == VarStatus::AtUpper && d > tol) violation = d;
      if (violation <= 0.0) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (violation > best_violation) {
        best_violation = violation;
        entering = j;
      }
    }

    if (entering < 0) {
      // Optimal at current costs. Freeze finished artificials;若 costs
      // changed the duals must be re-derived, so iterate once more.
      if (lock_zero_artificials()) continue;
      compute_duals();
      for (int j = 0; j < cols(); ++j) {
        std::size_t js = static_cast<std::size_t>(j);
        if (artificial_[js] && cost_[js] > 0.0) {
          double v = status_[js] == VarStatus::Basic
                         ? xb_[static_cast<std::size_t>(basic_row_[js])]
                         : nonbasic_value(j);
          if (std::fabs(v) > kFeasTol) return LpStatus::EqInfeasible;
        }
      }
      return LpStatus::Optimal;
    }

    const std::size_t ej = static_cast<std::size_t>(entering);
    const double sign = status_[ej] == VarStatus::AtLower ? 1.0 : -1.0;
    std::vector<double> w = ftran(entering);

    // Ratio test over the basic variables plus the entering bound flip.
    double theta = upper_[ej] >= kInfinity ? std::numeric_limits<double>::infinity()
                                           : upper_[ej];
    int leaving_row = -1;
    bool leaving_to_upper = false;
    double leaving_pivot = 0.0;
    for (std::size_t i = 0; i < m(); ++i) {
      double delta = sign * w[i];
      int bcol = basis_[i];
      double ub = upper_[static_cast<std::size_t>(bcol)];
      double limit;
      bool to_upper;
      if (delta > kPivotEps) {
        limit = xb_[i] / delta;
        to_upper = false;
      } else if (delta < -kPivotEps && ub < kInfinity) {
        limit = (ub - xb_[i]) / -delta;
        to_upper = true;
      } else {
        continue;
      }
      if (limit < 0) limit = 0;
      bool better;
      if (limit < theta - 1e-12) {
        better = true;
      } else if (limit < theta + 1e-12 && leaving_row >= 0) {
        better = bland ? basis_[i] < basis_[static_cast<std::size_t>(leaving_row)]
                       : std::fabs(w[i]) > std::fabs(leaving_pivot);
      } else {
        better = false;
      }
      if (better) {
        theta = limit;
        leaving_row = static_cast<int>(i);
        leaving_to_upper = to_upper;
        leaving_pivot = w[i];
      }
    }

    if (leaving_row < 0 && !std::isfinite(theta))
      throw RtsError("simplex: unbounded direction");

    if (++pivot_count > max_pivots) return LpStatus::IterationLimit;
    ++pivots_;

    if (leaving_row < 0) {
      // Bound flip: the entering variable runs to its other bound.
      for (std::size_t i = 0; i < m(); ++i) xb_[i] -= sign * theta * w[i];
      status_[ej] = status_[ej] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      continue;
    }

    const std::size_t lr = static_cast<std::size_t>(leaving_row);
    const int leaving_col = basis_[lr];

    for (std::size_t i = 0; i < m(); ++i) xb_[i] -= sign * theta * w[i];
    double entering_value = nonbasic_value(entering) + sign * theta;

    status_[static_cast<std::size_t>(leaving_col)] =
        leaving_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
    basic_row_[static_cast<std::size_t>(leaving_col)] = -1;
    basis_[lr] = entering;
    status_[ej] = VarStatus::Basic;
    basic_row_[ej] = leaving_row;
    xb_[lr] = entering_value;

    // Gauss-Jordan update of B^{-1} around the pivot element w[lr].
    const double piv = w[lr];
    double* prow = &binv_[lr * m()];
    for (std::size_t j2 = 0; j2 < m(); ++j2) prow[j2] /= piv;
    for (std::size_t i = 0; i < m(); ++i) {
      if (i == lr) continue;
      double f = w[i];
      if (f == 0.0) continue;
      double* irow = &binv_[i * m()];
      for (std::size_t j2 = 0; j2 < m(); ++j2) irow[j2] -= f * prow[j2];
    }

    // Big-M leaves the cost basis the moment an artificial exits.
    if (artificial_[static_cast<std::size_t>(leaving_col)] &&
        cost_[static_cast<std::size_t>(leaving_col)] > 0.0 && !leaving_to_upper)
      lock_artificial(leaving_col);

    if (theta <= 1e-12) {
      if (++degenerate_streak > 120) {
        bland = true;
        degenerate_streak = 0;
      }
    } else {
      degenerate_streak = 0;
      bland = false;
    }

    if (++since_refactor >= kRefactorInterval) {
      refactorize();
      since_refactor = 0;
    }
  }
}

double BoundedSimplex::objective() const {
  double total = 0.0;
  for (int j = 0; j < cols(); ++j) {
    double v = primal(j);
    if (v != 0.0) total += cost_[static_cast<std::size_t>(j)] * v;
  }
  return total;
}

double BoundedSimplex::primal(int col) const {
  std::size_t js = static_cast<std::size_t>(col);
  if (status_[js] == VarStatus::Basic) return xb_[static_cast<std::size_t>(basic_row_[js])];
  return nonbasic_value(col);
}

double BoundedSimplex::dual(int row) const { return y_[static_cast<std::size_t>(row)]; }

double BoundedSimplex::reduced(int col) const {
  double d = cost_[static_cast<std::size_t>(col)];
  for (const auto& [row, v] : entries_[static_cast<std::size_t>(col)])
    d -= y_[static_cast<std::size_t>(row)] * v;
  return d;
}

double BoundedSimplex::artificial_residual() const {
  double total = 0.0;
  for (int j = 0; j < cols(); ++j)
    if (artificial_[static_cast<std::size_t>(j)]) total += primal(j);
  return total;
}

std::vector<int> BoundedSimplex::violated_equality_rows(double tol) const {
  std::vector<int> out;
  for (int i = 0; i < rows(); ++i) {
    if (!row_is_equality(i)) continue;
    int logical = logical_[static_cast<std::size_t>(i)];
    if (std::fabs(primal(logical)) > tol) out.push_back(i);
  }
  return out;
}

}  // namespace rts
