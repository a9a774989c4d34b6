#pragma once

#include <vector>

#include "qnet/rational.hpp"

namespace qnet::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Term {
  int var = 0;
  Rational coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  Rational rhs;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct Problem {
  RationalVector objective;
  std::vector<Constraint> constraints;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int add_variable(Rational cost = 0) {
    objective.push_back(std::move(cost));
    return num_vars() - 1;
  }
  void add_constraint(std::vector<Term> terms, Sense sense, Rational rhs) {
    constraints.push_back({std::move(terms), sense, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational objective;
  RationalVector values;

  bool optimal() const { return status == Status::Optimal; }
};

/// Exact two-phase primal simplex over the rationals. Entering and leaving
/// variables follow Bland's smallest-index rule, so results are deterministic
/// and the method cannot cycle.
Solution maximize(const Problem& problem);

}  // namespace qnet::lp
