#include "convexstate/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convexstate/errors.hpp"

namespace convexstate {

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

template <class Scalar>
struct Arith;

template <>
struct Arith<Rational> {
  static bool zero(const Rational& v) { return v == 0; }
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
};

template <>
struct Arith<double> {
  static constexpr double kEps = 1e-11;
  static bool zero(double v) { return std::abs(v) <= kEps; }
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
};

// Original variable j = offset + sum(sign * column).
template <class Scalar>
struct VariableMap {
  Scalar offset{};
  std::vector<std::pair<std::size_t, int>> columns;
};

template <class Scalar>
class Tableau {
 public:
  using A = Arith<Scalar>;

  Tableau(std::vector<std::vector<Scalar>> rows, std::vector<std::size_t> basis, std::size_t num_columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), num_columns_(num_columns) {}

  // Loads reduced costs for min c.x given the current basis.
  void set_objective(const std::vector<Scalar>& cost) {
    cost_.assign(num_columns_ + 1, Scalar(0));
    for (std::size_t j = 0; j < num_columns_; ++j) cost_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& cb = cost[basis_[i]];
      if (A::zero(cb)) continue;
      for (std::size_t j = 0; j <= num_columns_; ++j) cost_[j] -= cb * rows_[i][j];
    }
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t entering = num_columns_;
      for (std::size_t j = 0; j < num_columns_; ++j) {
        if (allowed[j] && A::negative(cost_[j])) {
          entering = j;
          break;
        }
      }
      if (entering == num_columns_) return true;

      std::size_t leaving = rows_.size();
      Scalar best_ratio{};
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Scalar& a = rows_[i][entering];
        if (!A::positive(a)) continue;
        Scalar ratio = rows_[i][num_columns_] / a;
        if (leaving == rows_.size() || ratio < best_ratio ||
            (!(best_ratio < ratio) && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Scalar inv = Scalar(1) / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    rows_[r][c] = Scalar(1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const Scalar f = rows_[i][c];
      if (A::zero(f)) {
        rows_[i][c] = Scalar(0);
        continue;
      }
      for (std::size_t j = 0; j <= num_columns_; ++j) rows_[i][j] -= f * rows_[r][j];
      rows_[i][c] = Scalar(0);
    }
    const Scalar f = cost_[c];
    if (!A::zero(f)) {
      for (std::size_t j = 0; j <= num_columns_; ++j) cost_[j] -= f * rows_[r][j];
    }
    cost_[c] = Scalar(0);
    basis_[r] = c;
  }

  Scalar objective_value() const { return -cost_[num_columns_]; }

  // Pivots artificial columns (index >= first_artificial) out of the basis and
  // drops rows that turn out to be redundant.
  void expel_artificials(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (!A::zero(rows_[i][j])) {
          col = j;
          break;
        }
      }
      if (col == first_artificial) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
  }

  std::vector<Scalar> column_values() const {
    std::vector<Scalar> x(num_columns_, Scalar(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][num_columns_];
    return x;
  }

 private:
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t num_columns_;
  std::vector<Scalar> cost_;
};

}  // namespace

template <class Scalar>
LPSolution<Scalar> lp_solve(const LPProblem<Scalar>& problem) {
  using A = Arith<Scalar>;
  const std::size_t n = problem.num_variables();
  if (!problem.bounds.empty() && problem.bounds.size() != n) {
    throw DomainError("lp_solve: " + std::to_string(problem.bounds.size()) + " bounds for " + std::to_string(n) +
                      " variables");
  }
  for (const auto& c : problem.constraints) {
    if (c.coefficients.size() != n) throw DomainError("lp_solve: constraint width does not match variable count");
  }

  // Shift/split variables so that every working column is >= 0.
  std::vector<VariableMap<Scalar>> vars(n);
  std::size_t structural = 0;
  struct UpperRow {
    std::size_t column;
    Scalar bound;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds<Scalar> b = problem.bounds.empty() ? VariableBounds<Scalar>{} : problem.bounds[j];
    if (b.lower && b.upper && *b.upper < *b.lower) {
      return {LPStatus::Infeasible, Scalar(0), {}};
    }
    if (b.lower) {
      vars[j].offset = *b.lower;
      vars[j].columns.push_back({structural, 1});
      if (b.upper) upper_rows.push_back({structural, *b.upper - *b.lower});
      ++structural;
    } else if (b.upper) {
      vars[j].offset = *b.upper;
      vars[j].columns.push_back({structural++, -1});
    } else {
      vars[j].columns.push_back({structural++, 1});
      vars[j].columns.push_back({structural++, -1});
    }
  }

  struct Row {
    std::vector<Scalar> coefficients;
    Sense sense;
    Scalar rhs;
  };
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size() + upper_rows.size());
  for (const auto& c : problem.constraints) {
    Row row{std::vector<Scalar>(structural, Scalar(0)), c.sense, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      if (A::zero(c.coefficients[j])) continue;
      row.rhs -= c.coefficients[j] * vars[j].offset;
      for (const auto& [col, sign] : vars[j].columns) {
        row.coefficients[col] += sign > 0 ? c.coefficients[j] : Scalar(-c.coefficients[j]);
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& u : upper_rows) {
    Row row{std::vector<Scalar>(structural, Scalar(0)), Sense::LessEqual, u.bound};
    row.coefficients[u.column] = Scalar(1);
    rows.push_back(std::move(row));
  }

  std::size_t slack_count = 0;
  for (const auto& r : rows) slack_count += r.sense == Sense::Equal ? 0 : 1;
  const std::size_t m = rows.size();
  const std::size_t first_artificial = structural + slack_count;
  const std::size_t num_columns = first_artificial + m;

  std::vector<std::vector<Scalar>> table(m, std::vector<Scalar>(num_columns + 1, Scalar(0)));
  std::vector<std::size_t> basis(m);
  std::size_t slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    auto& t = table[i];
    for (std::size_t j = 0; j < structural; ++j) t[j] = rows[i].coefficients[j];
    if (rows[i].sense == Sense::LessEqual) t[slack++] = Scalar(1);
    if (rows[i].sense == Sense::GreaterEqual) t[slack++] = Scalar(-1);
    t[num_columns] = rows[i].rhs;
    if (A::negative(t[num_columns])) {
      for (auto& x : t) x = -x;
    }
    t[first_artificial + i] = Scalar(1);
    basis[i] = first_artificial + i;
  }

  Tableau<Scalar> tableau(std::move(table), std::move(basis), num_columns);
  {
    std::vector<Scalar> phase1(num_columns, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) phase1[first_artificial + i] = Scalar(1);
    tableau.set_objective(phase1);
    std::vector<bool> allowed(num_columns, true);
    tableau.optimize(allowed);
    if (A::positive(tableau.objective_value())) return {LPStatus::Infeasible, Scalar(0), {}};
  }
  tableau.expel_artificials(first_artificial);

  const bool maximize = problem.direction == Direction::Maximize;
  std::vector<Scalar> cost(num_columns, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar cj = maximize ? Scalar(-problem.objective[j]) : problem.objective[j];
    for (const auto& [col, sign] : vars[j].columns) cost[col] += sign > 0 ? cj : Scalar(-cj);
  }
  tableau.set_objective(cost);
  std::vector<bool> allowed(num_columns, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(first_artificial), true);
  if (!tableau.optimize(allowed)) return {LPStatus::Unbounded, Scalar(0), {}};

  const auto columns = tableau.column_values();
  LPSolution<Scalar> solution;
  solution.status = LPStatus::Optimal;
  solution.point.assign(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    Scalar v = vars[j].offset;
    for (const auto& [col, sign] : vars[j].columns) v += sign > 0 ? columns[col] : Scalar(-columns[col]);
    solution.point[j] = std::move(v);
  }
  Scalar value(0);
  for (std::size_t j = 0; j < n; ++j) value += problem.objective[j] * solution.point[j];
  solution.value = std::move(value);
  return solution;
}

template LPSolution<Rational> lp_solve(const LPProblem<Rational>&);
template LPSolution<double> lp_solve(const LPProblem<double>&);

namespace {

template <class Scalar>
Scalar violation_impl(const LPProblem<Scalar>& problem, const std::vector<Scalar>& point) {
  if (point.size() != problem.num_variables()) throw DomainError("max_violation: point has wrong dimension");
  Scalar worst(0);
  auto note = [&worst](const Scalar& v) {
    if (v > worst) worst = v;
  };
  for (const auto& c : problem.constraints) {
    Scalar lhs(0);
    for (std::size_t j = 0; j < point.size(); ++j) lhs += c.coefficients[j] * point[j];
    switch (c.sense) {
      case Sense::LessEqual: note(lhs - c.rhs); break;
      case Sense::GreaterEqual: note(c.rhs - lhs); break;
      case Sense::Equal: note(lhs > c.rhs ? Scalar(lhs - c.rhs) : Scalar(c.rhs - lhs)); break;
    }
  }
  for (std::size_t j = 0; j < point.size(); ++j) {
    const VariableBounds<Scalar> b = problem.bounds.empty() ? VariableBounds<Scalar>{} : problem.bounds[j];
    if (b.lower) note(*b.lower - point[j]);
    if (b.upper) note(point[j] - *b.upper);
  }
  return worst;
}

}  // namespace

Rational max_violation(const LPProblem<Rational>& problem, const RationalVector& point) {
  return violation_impl(problem, point);
}

double max_violation(const LPProblem<double>& problem, const std::vector<double>& point) {
  return violation_impl(problem, point);
}

LPProblem<double> to_float(const LPProblem<Rational>& problem) {
  LPProblem<double> out;
  out.direction = problem.direction;
  out.objective = to_double(problem.objective);
  for (const auto& c : problem.constraints) out.add(to_double(c.coefficients), c.sense, to_double(c.rhs));
  for (const auto& b : problem.bounds) {
    VariableBounds<double> fb{std::nullopt, std::nullopt};
    if (b.lower) fb.lower = to_double(*b.lower);
    if (b.upper) fb.upper = to_double(*b.upper);
    out.bounds.push_back(fb);
  }
  return out;
}

}  // namespace convexstate
