#pragma once

#include <utility>
#include <vector>

namespace rts {

enum class RowType { Equal, LessEqual };
enum class LpStatus { Optimal, EqInfeasible, IterationLimit };

/// Revised primal simplex over sparse columns with bounds [0, u], u possibly
/// infinite. Every row carries one logical column: a zero-cost slack for <=
/// rows, a big-M artificial for == rows, so the all-logical basis is always
/// primal feasible (right-hand sides must be non-negative).
///
/// The basis inverse is kept dense and updated per pivot with periodic
/// refactorization. Columns and rows may be appended between solves; a row
/// appended later must not be touched by any column added earlier, which
/// keeps the current basis feasible (the deferred-capacity-row pattern).
///
/// An artificial is locked to zero (cost 0, upper 0) the moment it leaves the
/// basis, and at optimality when basic at value zero, so extracted duals are
/// free of big-M noise. An artificial stuck at a positive value at optimality
/// means the == rows cannot be met: EqInfeasible.
class BoundedSimplex {
 public:
  static constexpr double kInfinity = 1e300;

  int add_row(RowType type, double rhs, double artificial_cost = 0.0);
  int add_column(double cost, double upper,
                 const std::vector<std::pair<int, double>>& entries);

  void set_cost(int col, double cost);
  void set_upper(int col, double upper);
  double upper_bound(int col) const { return upper_[static_cast<std::size_t>(col)]; }
  double cost(int col) const { return cost_[static_cast<std::size_t>(col)]; }

  int logical_of_row(int row) const { return logical_[static_cast<std::size_t>(row)]; }
  bool row_is_equality(int row) const { return row_type_[static_cast<std::size_t>(row)] == RowType::Equal; }
  int rows() const { return static_cast<int>(rhs_.size()); }
  int cols() const { return static_cast<int>(cost_.size()); }

  void reset_basis();
  LpStatus solve(long long max_pivots = -1);

  double objective() const;
  double primal(int col) const;
  double dual(int row) const;      // valid after solve()
  double reduced(int col) const;   // valid after solve()
  double artificial_residual() const;
  long long pivots() const { return pivots_; }

  // Row activity of the structural+logical solution, for diagnostics.
  std::vector<int> violated_equality_rows(double tol = 1e-7) const;

 private:
  enum class VarStatus : unsigned char { AtLower, AtUpper, Basic };

  // columns
  std::vector<double> cost_;
  std::vector<double> upper_;
  std::vector<std::vector<std::pair<int, double>>> entries_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_row_;  // row index when basic, -1 otherwise
  std::vector<bool> artificial_;

  // rows
  std::vector<double> rhs_;
  std::vector<RowType> row_type_;
  std::vector<int> logical_;

  std::vector<int> basis_;    // column per row
  std::vector<double> binv_;  // row-major rows() x rows()
  std::vector<double> xb_;    // basic values, aligned with basis_
  std::vector<double> y_;     // duals from the last solve
  bool basis_ready_ = false;
  long long pivots_ = 0;

  std::size_t m() const { return rhs_.size(); }
  double nonbasic_value(int col) const;
  void compute_duals();
  void refactorize();
  void recompute_xb();
  std::vector<double> ftran(int col) const;  // B^{-1} A_col
  void lock_artificial(int col);
  bool lock_zero_artificials();  // returns true when anything changed
  double dual_tolerance() const;
};

}  // namespace rts
