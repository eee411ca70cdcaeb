#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hardball::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(Status s);

/// Dense LP:  minimize c.x  subject to  rows,  x >= 0.
class Problem {
 public:
  explicit Problem(std::size_t num_vars);

  std::size_t num_vars() const noexcept { return objective_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  void set_objective(std::vector<double> c);
  void set_objective_coeff(std::size_t var, double c) { objective_.at(var) = c; }
  void add_row(std::vector<double> coeffs, Relation rel, double rhs);

  struct Row {
    std::vector<double> coeffs;
    Relation rel;
    double rhs;
  };
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const std::vector<double>& objective() const noexcept { return objective_; }

 private:
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

struct Options {
  double pivot_tol = 1e-11;
  double feasibility_tol = 1e-9;
  // Per phase, the cap is factor * (rows + columns) of the tableau.
  std::size_t iteration_factor = 10;
};

/// Two-phase tableau simplex with Bland's rule.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace hardball::lp
