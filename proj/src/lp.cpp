#include "qnet/lp.hpp"

#include <optional>

namespace qnet::lp {

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_(rows, RationalVector(cols + 1)), basis_(rows, -1) {}

  Rational& at(int r, int c) { return a_[r][c]; }
  Rational& rhs(int r) { return a_[r][cols_]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int& basic(int r) { return basis_[r]; }
  const std::vector<int>& basis() const { return basis_; }

  void pivot(int r, int c) {
    Rational inv = 1 / a_[r][c];
    for (int j = 0; j <= cols_; ++j) {
      if (!is_zero(a_[r][j])) a_[r][j] *= inv;
    }
    for (int i = 0; i < rows_; ++i) {
      if (i == r || is_zero(a_[i][c])) continue;
      Rational factor = a_[i][c];
      for (int j = 0; j <= cols_; ++j) {
        if (!is_zero(a_[r][j])) a_[i][j] -= factor * a_[r][j];
      }
    }
    basis_[r] = c;
  }

  void remove_row(int r) {
    a_.erase(a_.begin() + r);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

 private:
  static bool is_zero(const Rational& x) { return x.is_zero(); }

  int rows_;
  int cols_;
  std::vector<RationalVector> a_;
  std::vector<int> basis_;
};

enum class Outcome { Optimal, Unbounded };

/// Maximizes cost . x over the current basic feasible tableau, restricted to
/// columns with allowed[j] set.
Outcome run_simplex(Tableau& t, const RationalVector& cost, const std::vector<char>& allowed) {
  const int n = t.cols();
  for (;;) {
    // Reduced costs d_j = c_B B^-1 A_j - c_j; enter the first j with d_j < 0.
    int entering = -1;
    for (int j = 0; j < n && entering < 0; ++j) {
      if (!allowed[j]) continue;
      Rational d = -cost[j];
      for (int i = 0; i < t.rows(); ++i) {
        const Rational& cb = cost[t.basic(i)];
        if (!cb.is_zero() && !t.at(i, j).is_zero()) d += cb * t.at(i, j);
      }
      if (d < 0) entering = j;
    }
    if (entering < 0) return Outcome::Optimal;

    int leaving = -1;
    Rational best_ratio;
    for (int i = 0; i < t.rows(); ++i) {
      const Rational& coef = t.at(i, entering);
      if (coef <= 0) continue;
      Rational ratio = t.rhs(i) / coef;
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basic(i) < t.basic(leaving))) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return Outcome::Unbounded;
    t.pivot(leaving, entering);
  }
}

}  // namespace

Solution maximize(const Problem& problem) {
  const int n = problem.num_vars();
  const int m = static_cast<int>(problem.constraints.size());

  // Normalize rows to nonnegative right-hand sides.
  struct Row {
    RationalVector coeffs;
    Sense sense;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(m);
  for (const auto& c : problem.constraints) {
    Row r{RationalVector(n), c.sense, c.rhs};
    for (const auto& term : c.terms) {
      if (term.var < 0 || term.var >= n) throw Error("lp: variable index out of range");
      r.coeffs[term.var] += term.coeff;
    }
    if (r.rhs < 0) {
      for (auto& x : r.coeffs) x = -x;
      r.rhs = -r.rhs;
      if (r.sense == Sense::LessEqual) {
        r.sense = Sense::GreaterEqual;
      } else if (r.sense == Sense::GreaterEqual) {
        r.sense = Sense::LessEqual;
      }
    }
    rows.push_back(std::move(r));
  }

  int num_slack = 0, num_art = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::Equal) ++num_slack;
    if (r.sense != Sense::LessEqual) ++num_art;
  }
  const int cols = n + num_slack + num_art;
  const int first_art = n + num_slack;
  Tableau t(m, cols);
  int slack = n, art = first_art;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.at(i, j) = rows[i].coeffs[j];
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].sense) {
      case Sense::LessEqual:
        t.at(i, slack) = 1;
        t.basic(i) = slack++;
        break;
      case Sense::GreaterEqual:
        t.at(i, slack++) = -1;
        t.at(i, art) = 1;
        t.basic(i) = art++;
        break;
      case Sense::Equal:
        t.at(i, art) = 1;
        t.basic(i) = art++;
        break;
    }
  }

  std::vector<char> allowed(cols, 1);
  if (num_art > 0) {
    RationalVector phase1(cols, Rational(0));
    for (int j = first_art; j < cols; ++j) phase1[j] = -1;
    run_simplex(t, phase1, allowed);
    Rational infeasibility = 0;
    for (int i = 0; i < t.rows(); ++i) {
      if (t.basic(i) >= first_art) infeasibility += t.rhs(i);
    }
    if (infeasibility > 0) return {Status::Infeasible, 0, {}};
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (int i = t.rows() - 1; i >= 0; --i) {
      if (t.basic(i) < first_art) continue;
      std::optional<int> col;
      for (int j = 0; j < first_art && !col; ++j) {
        if (!t.at(i, j).is_zero()) col = j;
      }
      if (col) {
        t.pivot(i, *col);
      } else {
        t.remove_row(i);
      }
    }
    for (int j = first_art; j < cols; ++j) allowed[j] = 0;
  }

  RationalVector cost(cols, Rational(0));
  for (int j = 0; j < n; ++j) cost[j] = problem.objective[j];
  if (run_simplex(t, cost, allowed) == Outcome::Unbounded) return {Status::Unbounded, 0, {}};

  Solution sol{Status::Optimal, 0, RationalVector(n, Rational(0))};
  for (int i = 0; i < t.rows(); ++i) {
    if (t.basic(i) < n) sol.values[t.basic(i)] = t.rhs(i);
  }
  for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.values[j];
  return sol;
}

}  // namespace qnet::lp
