#ifndef OMNISCIO_LP_EXACT_HPP
#define OMNISCIO_LP_EXACT_HPP

// The primal/dual pair
//
//   minimize   c·x   subject to  A x >= b            (x free)
//   maximize   y·b   subject to  y A = c,  y >= 0
//
// where A is the 0/1 incidence matrix of a list of subsets. The dual is in
// equational form already, so the simplex runs on it (an m-row tableau) and
// the primal vertex is read off the final basis. Every returned solution is
// re-checked for feasibility, strong duality and complementary slackness.

#include "omniscio/error.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/simplex.hpp"
#include "omniscio/subset.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace omniscio {

/// l x m incidence system; row i is the indicator of rows[i].
struct ConstraintSystem {
  int m = 0;
  std::vector<SubsetMask> rows;
  RationalVector b;
  RationalVector c;

  std::size_t l() const { return rows.size(); }
  int entry(std::size_t i, int j) const { return rows[i].has(j + 1) ? 1 : 0; }

  /// A_i·x
  Rational row_value(std::size_t i, const RationalVector& x) const {
    Rational acc = 0;
    for (int j = 0; j < m; ++j)
      if (rows[i].has(j + 1)) acc += x[j];
    return acc;
  }

  void validate() const {
    if (m < 1 || m > kMaxTerminals) throw InputError("constraint system: m outside [1, 20]");
    if (b.size() != rows.size()) throw InputError("constraint system: b has wrong length");
    if (static_cast<int>(c.size()) != m) throw InputError("constraint system: c has wrong length");
    for (const auto& r : rows) {
      if (r.m() != m) throw InputError("constraint system: row over wrong terminal count");
      if (r.is_empty() || r.is_full())
        throw InputError("constraint system: all-zero or all-one row " + r.to_string());
    }
  }
};

struct LpSolution {
  Rational objective = 0;
  RationalVector x;
  RationalVector y;
  std::vector<std::size_t> tight;   // rows with A_i·x = b_i
  std::vector<std::size_t> basis;   // rows whose dual variables are basic

  std::size_t support_size() const {
    std::size_t t = 0;
    for (const auto& v : y)
      if (v > 0) ++t;
    return t;
  }
};

struct TightRow {
  std::size_t index;
  SubsetMask mask;
};

namespace detail {

inline std::vector<std::size_t> tight_indices(const ConstraintSystem& sys, const RationalVector& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sys.l(); ++i)
    if (sys.row_value(i, x) == sys.b[i]) out.push_back(i);
  return out;
}

/// Throws ContractError unless (x, y) satisfy every optimality condition.
inline void verify_optimality(const ConstraintSystem& sys, const RationalVector& x, const RationalVector& y) {
  for (std::size_t i = 0; i < sys.l(); ++i) {
    const Rational ax = sys.row_value(i, x);
    require_contract(ax >= sys.b[i], "primal infeasible at row " + sys.rows[i].to_string());
    require_contract(y[i] >= 0, "negative dual entry at row " + sys.rows[i].to_string());
    require_contract(y[i].is_zero() || ax == sys.b[i],
                     "complementary slackness fails at row " + sys.rows[i].to_string());
  }
  for (int j = 0; j < sys.m; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < sys.l(); ++i)
      if (sys.rows[i].has(j + 1)) col += y[i];
    require_contract(col == sys.c[j], "dual infeasible at column " + std::to_string(j + 1));
  }
  require_contract(dot(sys.c, x) == dot(y, sys.b), "strong duality fails");
}

struct EqualityRows {
  std::vector<SubsetMask> rows;
  RationalVector rhs;
};

/// Runs the simplex on the dual of  min c·x  s.t.  A x >= b,  E x = e.
/// Returns nullopt when the primal is infeasible (dual unbounded).
inline std::optional<std::pair<RationalVector, RationalVector>> solve_dual_tableau(
    const ConstraintSystem& sys, const EqualityRows& eq, std::vector<std::size_t>* basis_rows) {
  const std::size_t l = sys.l();
  const std::size_t k = eq.rows.size();
  StandardFormLp lp(static_cast<std::size_t>(sys.m), l + 2 * k);
  for (int j = 0; j < sys.m; ++j) {
    lp.rhs[j] = sys.c[j];
    for (std::size_t i = 0; i < l; ++i)
      if (sys.rows[i].has(j + 1)) lp.at(j, i) = 1;
    for (std::size_t e = 0; e < k; ++e)
      if (eq.rows[e].has(j + 1)) {
        lp.at(j, l + e) = 1;
        lp.at(j, l + k + e) = -1;
      }
  }
  for (std::size_t i = 0; i < l; ++i) lp.cost[i] = -sys.b[i];
  for (std::size_t e = 0; e < k; ++e) {
    lp.cost[l + e] = -eq.rhs[e];
    lp.cost[l + k + e] = eq.rhs[e];
  }

  StandardFormResult res = solve_standard_form(lp);
  if (res.status == LpStatus::kUnbounded) return std::nullopt;
  require_contract(res.status == LpStatus::kOptimal,
                   "dual infeasible: the primal is unbounded or the system has an uncovered column");

  RationalVector x(sys.m);
  for (int j = 0; j < sys.m; ++j) x[j] = -res.duals[j];
  RationalVector y(res.z.begin(), res.z.begin() + static_cast<long>(l));
  if (basis_rows) {
    basis_rows->clear();
    for (long col : res.basis)
      if (col >= 0 && static_cast<std::size_t>(col) < l) basis_rows->push_back(static_cast<std::size_t>(col));
  }
  return std::make_pair(std::move(x), std::move(y));
}

}  // namespace detail

/// Vertex-optimal primal x and dual y with exact objective.
inline LpSolution solve(const ConstraintSystem& sys) {
  sys.validate();
  LpSolution sol;
  auto res = detail::solve_dual_tableau(sys, {}, &sol.basis);
  require_contract(res.has_value(), "constraint system is infeasible");
  sol.x = std::move(res->first);
  sol.y = std::move(res->second);
  detail::verify_optimality(sys, sol.x, sol.y);
  sol.objective = dot(sys.c, sol.x);
  sol.tight = detail::tight_indices(sys, sol.x);
  return sol;
}

/// Minimizes c·x over {A x >= b, E x = e}; nullopt when that set is empty.
inline std::optional<RationalVector> solve_with_equalities(const ConstraintSystem& sys,
                                                           const std::vector<SubsetMask>& eq_rows,
                                                           const RationalVector& eq_rhs) {
  sys.validate();
  if (eq_rows.size() != eq_rhs.size()) throw InputError("equality rows and right-hand side differ in length");
  auto res = detail::solve_dual_tableau(sys, {eq_rows, eq_rhs}, nullptr);
  if (!res) return std::nullopt;
  const RationalVector& x = res->first;
  for (std::size_t i = 0; i < sys.l(); ++i)
    require_contract(sys.row_value(i, x) >= sys.b[i], "equality-constrained solution violates a row");
  for (std::size_t e = 0; e < eq_rows.size(); ++e) {
    Rational v = 0;
    for (int j = 0; j < sys.m; ++j)
      if (eq_rows[e].has(j + 1)) v += x[j];
    require_contract(v == eq_rhs[e], "equality-constrained solution violates an equality");
  }
  return x;
}

/// Rows with A_i·x = b_i, a superset of the dual support.
inline std::vector<TightRow> tight_rows(const LpSolution& sol, const ConstraintSystem& sys) {
  std::vector<TightRow> out;
  for (std::size_t i : detail::tight_indices(sys, sol.x)) out.push_back({i, sys.rows[i]});
  return out;
}

enum class UniquenessVerdict { kUnique, kNotUnique };

struct UniquenessCertificate {
  UniquenessVerdict verdict = UniquenessVerdict::kUnique;
  Rational auxiliary_objective = 0;               // max d·(x; x_s) over the optimal face
  std::optional<RationalVector> alternative;      // x part of the maximizer when not unique
};

/// Uniqueness test for a vertex optimum. In equational form
/// [A | -I](x; x_s) = b with x, x_s >= 0, let d mark the zero coordinates of
/// (x; x_s). Maximizing d·(x; x_s) over the optimal face gives 0 exactly when
/// no other optimum exists; otherwise the maximizer is a different optimal vertex.
inline UniquenessCertificate uniqueness_test(const ConstraintSystem& sys, const LpSolution& sol) {
  sys.validate();
  if (static_cast<int>(sol.x.size()) != sys.m || sol.y.size() != sys.l())
    throw InputError("uniqueness_test: solution does not match the system");
  try {
    detail::verify_optimality(sys, sol.x, sol.y);
  } catch (const ContractError& e) {
    throw InputError(std::string("uniqueness_test: solution is not optimal: ") + e.what());
  }
  if (sol.objective != dot(sys.c, sol.x)) throw InputError("uniqueness_test: objective mismatch");

  const std::size_t l = sys.l();
  const std::size_t m = static_cast<std::size_t>(sys.m);

  // x >= 0 in the equational form. A negative singleton bound b_{j} < 0
  // (possible only for invalid entropy tables) is handled by shifting x_j.
  RationalVector shift(m, Rational(0));
  for (std::size_t i = 0; i < l; ++i)
    if (sys.rows[i].size() == 1 && sys.b[i] < 0) shift[sys.rows[i].first() - 1] = sys.b[i];
  for (std::size_t j = 0; j < m; ++j)
    if (sol.x[j] < shift[j]) throw InputError("uniqueness_test: x is not bounded below by its singleton row");

  StandardFormLp lp(l + 1, m + l);
  RationalVector point(m + l);
  for (std::size_t j = 0; j < m; ++j) point[j] = sol.x[j] - shift[j];
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (sys.rows[i].has(static_cast<int>(j) + 1)) lp.at(i, j) = 1;
    lp.at(i, m + i) = -1;
    lp.rhs[i] = sys.b[i] - sys.row_value(i, shift);
    point[m + i] = sys.row_value(i, sol.x) - sys.b[i];
  }
  for (std::size_t j = 0; j < m; ++j) lp.at(l, j) = sys.c[j];
  lp.rhs[l] = sol.objective - dot(sys.c, shift);
  for (std::size_t j = 0; j < m + l; ++j) lp.cost[j] = point[j].is_zero() ? -1 : 0;

  StandardFormResult res = solve_standard_form(lp);
  require_contract(res.status == LpStatus::kOptimal, "uniqueness LP did not reach an optimum");

  UniquenessCertificate cert;
  cert.auxiliary_objective = -res.objective;
  if (cert.auxiliary_objective.is_zero()) {
    cert.verdict = UniquenessVerdict::kUnique;
  } else {
    cert.verdict = UniquenessVerdict::kNotUnique;
    RationalVector alt(m);
    for (std::size_t j = 0; j < m; ++j) alt[j] = res.z[j] + shift[j];
    cert.alternative = std::move(alt);
  }
  return cert;
}

inline const char* verdict_name(UniquenessVerdict v) {
  return v == UniquenessVerdict::kUnique ? "Unique" : "NotUnique";
}

}  // namespace omniscio

#endif  // OMNISCIO_LP_EXACT_HPP
