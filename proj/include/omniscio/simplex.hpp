#ifndef OMNISCIO_SIMPLEX_HPP
#define OMNISCIO_SIMPLEX_HPP

// Dense two-phase primal simplex over exact rationals for LPs in equational
// form:  minimize cost·z  subject to  M z = r,  z >= 0.
//
// Pivoting follows Bland's least-index rule, so the method terminates on
// degenerate problems and the result is a deterministic function of the input.

#include "omniscio/error.hpp"
#include "omniscio/rational.hpp"

#include <cstddef>
#include <vector>

namespace omniscio {

struct StandardFormLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> matrix;  // row-major, rows x cols
  RationalVector rhs;
  RationalVector cost;

  StandardFormLp(std::size_t r, std::size_t c)
      : rows(r), cols(c), matrix(r * c), rhs(r), cost(c) {}

  Rational& at(std::size_t i, std::size_t j) { return matrix[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return matrix[i * cols + j]; }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct StandardFormResult {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector z;          // primal solution (optimal only)
  Rational objective = 0;    // cost·z
  RationalVector duals;      // u = cost_B B^{-1}; u·M <= cost at optimality
  std::vector<long> basis;   // column basic in each row, -1 for a redundant row
  std::size_t pivots = 0;
};

namespace detail {

class Tableau {
 public:
  explicit Tableau(const StandardFormLp& lp)
      : rows_(lp.rows), structural_(lp.cols), width_(lp.cols + lp.rows + 1),
        cells_(rows_ * width_), objective_(width_), basis_(rows_), sign_(rows_, 1) {
    for (std::size_t i = 0; i < rows_; ++i) {
      sign_[i] = lp.rhs[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < structural_; ++j)
        if (!lp.at(i, j).is_zero()) cell(i, j) = sign_[i] < 0 ? Rational(-lp.at(i, j)) : lp.at(i, j);
      cell(i, structural_ + i) = 1;
      cell(i, rhs_col()) = sign_[i] < 0 ? Rational(-lp.rhs[i]) : lp.rhs[i];
      basis_[i] = static_cast<long>(structural_ + i);
    }
  }

  StandardFormResult run(const StandardFormLp& lp) {
    StandardFormResult result;

    // Phase 1: minimize the sum of artificials.
    for (auto& v : objective_) v = 0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < structural_; ++j) objective_[j] -= cell(i, j);
    for (std::size_t i = 0; i < rows_; ++i) objective_[rhs_col()] -= cell(i, rhs_col());
    if (iterate(result.pivots) != LpStatus::kOptimal)
      throw ContractError("simplex phase 1 reported unbounded");
    if (!objective_[rhs_col()].is_zero()) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    drive_out_artificials(result.pivots);

    // Phase 2 with the true costs; artificials left on redundant rows cost 0.
    for (auto& v : objective_) v = 0;
    for (std::size_t j = 0; j < structural_; ++j) objective_[j] = lp.cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational cb = basic_cost(lp, i);
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (!cell(i, j).is_zero()) objective_[j] -= cb * cell(i, j);
    }
    if (iterate(result.pivots) == LpStatus::kUnbounded) {
      result.status = LpStatus::kUnbounded;
      return result;
    }

    result.status = LpStatus::kOptimal;
    result.z.assign(structural_, Rational(0));
    result.basis.assign(rows_, -1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (static_cast<std::size_t>(basis_[i]) < structural_) {
        result.z[basis_[i]] = cell(i, rhs_col());
        result.basis[i] = basis_[i];
      }
    }
    result.objective = dot(lp.cost, result.z);
    // B^{-1} sits in the artificial columns (up to the row sign flips).
    result.duals.assign(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational cb = basic_cost(lp, r);
      if (cb.is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& binv = cell(r, structural_ + i);
        if (!binv.is_zero()) result.duals[i] += cb * binv;
      }
    }
    for (std::size_t i = 0; i < rows_; ++i)
      if (sign_[i] < 0) result.duals[i] = -result.duals[i];
    return result;
  }

 private:
  std::size_t rhs_col() const { return width_ - 1; }
  Rational& cell(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }

  Rational basic_cost(const StandardFormLp& lp, std::size_t row) const {
    const auto b = static_cast<std::size_t>(basis_[row]);
    return b < structural_ ? lp.cost[b] : Rational(0);
  }

  LpStatus iterate(std::size_t& pivots) {
    for (;;) {
      // Entering: least structural index with negative reduced cost.
      std::size_t enter = structural_;
      for (std::size_t j = 0; j < structural_; ++j)
        if (objective_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == structural_) return LpStatus::kOptimal;

      // Leaving: minimum ratio, ties to the least basic index.
      long leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& a = cell(i, enter);
        if (a <= 0) continue;
        Rational ratio = cell(i, rhs_col()) / a;
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<long>(i);
          best = std::move(ratio);
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(static_cast<std::size_t>(leave), enter);
      ++pivots;
    }
  }

  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (static_cast<std::size_t>(basis_[i]) < structural_) continue;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (!cell(i, j).is_zero()) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    const Rational inv = 1 / cell(p, q);
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < width_; ++j) {
      if (cell(p, j).is_zero()) continue;
      cell(p, j) *= inv;
      nonzero.push_back(j);
    }
    auto eliminate = [&](Rational* row) {
      if (row[q].is_zero()) return;
      const Rational factor = row[q];
      for (std::size_t j : nonzero) row[j] -= factor * cell(p, j);
    };
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != p) eliminate(&cells_[i * width_]);
    eliminate(objective_.data());
    basis_[p] = static_cast<long>(q);
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t width_;
  std::vector<Rational> cells_;
  std::vector<Rational> objective_;  // reduced costs; last entry is -objective
  std::vector<long> basis_;
  std::vector<int> sign_;
};

}  // namespace detail

inline StandardFormResult solve_standard_form(const StandardFormLp& lp) {
  if (lp.matrix.size() != lp.rows * lp.cols || lp.rhs.size() != lp.rows || lp.cost.size() != lp.cols)
    throw ContractError("standard-form LP has inconsistent dimensions");
  detail::Tableau tableau(lp);
  return tableau.run(lp);
}

}  // namespace omniscio

#endif  // OMNISCIO_SIMPLEX_HPP
