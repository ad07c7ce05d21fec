#pragma once

#include <optional>
#include <vector>

#include "convexstate/rational.hpp"

namespace convexstate {

/// Rational mode is exact; float mode works in doubles with 1e-9 feasibility slack.
enum class LPMode { Rational, Float };

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Direction { Minimize, Maximize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

template <class Scalar>
struct LPConstraint {
  std::vector<Scalar> coefficients;
  Sense sense = Sense::LessEqual;
  Scalar rhs{};
};

/// Missing lower bound means -inf, missing upper bound +inf.
template <class Scalar>
struct VariableBounds {
  std::optional<Scalar> lower = Scalar(0);
  std::optional<Scalar> upper;

  static VariableBounds free() { return {std::nullopt, std::nullopt}; }
  static VariableBounds box(Scalar lo, Scalar hi) { return {std::move(lo), std::move(hi)}; }
};

template <class Scalar>
struct LPProblem {
  Direction direction = Direction::Minimize;
  std::vector<Scalar> objective;
  std::vector<LPConstraint<Scalar>> constraints;
  /// One entry per variable; an empty list means every variable is >= 0.
  std::vector<VariableBounds<Scalar>> bounds;

  std::size_t num_variables() const { return objective.size(); }
  void add(std::vector<Scalar> coefficients, Sense sense, Scalar rhs) {
    constraints.push_back({std::move(coefficients), sense, std::move(rhs)});
  }
};

template <class Scalar>
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Scalar value{};
  std::vector<Scalar> point;

  bool optimal() const { return status == LPStatus::Optimal; }
};

/// Two-phase dense tableau simplex with Bland's anti-cycling rule.
template <class Scalar>
LPSolution<Scalar> lp_solve(const LPProblem<Scalar>& problem);

extern template LPSolution<Rational> lp_solve(const LPProblem<Rational>&);
extern template LPSolution<double> lp_solve(const LPProblem<double>&);

/// Worst constraint/bound violation of `point` (0 means feasible; exact in rational mode).
Rational max_violation(const LPProblem<Rational>& problem, const RationalVector& point);
double max_violation(const LPProblem<double>& problem, const std::vector<double>& point);

LPProblem<double> to_float(const LPProblem<Rational>& problem);

}  // namespace convexstate
