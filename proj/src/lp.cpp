#include "hardball/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardball/errors.hpp"

namespace hardball::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

Problem::Problem(std::size_t num_vars) : objective_(num_vars, 0.0) {}

void Problem::set_objective(std::vector<double> c) {
  if (c.size() != objective_.size()) throw ParameterError("objective size mismatch");
  objective_ = std::move(c);
}

void Problem::add_row(std::vector<double> coeffs, Relation rel, double rhs) {
  if (coeffs.size() != objective_.size()) throw ParameterError("row size mismatch");
  rows_.push_back({std::move(coeffs), rel, rhs});
}

namespace {

class Tableau {
 public:
  Tableau(const Problem& p, const Options& opts) : opts_(opts) {
    m_ = p.num_rows();
    n_orig_ = p.num_vars();

    // Normalize to nonnegative right-hand sides and count extra columns.
    std::vector<Problem::Row> rows = p.rows();
    for (auto& r : rows) {
      if (r.rhs < 0.0) {
        for (double& a : r.coeffs) a = -a;
        r.rhs = -r.rhs;
        if (r.rel == Relation::LessEqual) r.rel = Relation::GreaterEqual;
        else if (r.rel == Relation::GreaterEqual) r.rel = Relation::LessEqual;
      }
    }
    std::size_t slacks = 0, artificials = 0;
    for (const auto& r : rows) {
      if (r.rel != Relation::Equal) ++slacks;
      if (r.rel != Relation::LessEqual) ++artificials;
    }
    first_artificial_ = n_orig_ + slacks;
    cols_ = first_artificial_ + artificials;
    width_ = cols_ + 1;
    t_.assign(m_ * width_, 0.0);
    basis_.assign(m_, 0);

    std::size_t s = n_orig_, a = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& r = rows[i];
      std::copy(r.coeffs.begin(), r.coeffs.end(), &at(i, 0));
      at(i, cols_) = r.rhs;
      if (r.rel == Relation::LessEqual) {
        at(i, s) = 1.0;
        basis_[i] = s++;
      } else {
        if (r.rel == Relation::GreaterEqual) at(i, s++) = -1.0;
        at(i, a) = 1.0;
        basis_[i] = a++;
      }
    }
    cost_.assign(width_, 0.0);
    objective_ = p.objective();
  }

  Solution run() {
    Solution sol;
    const std::size_t cap = opts_.iteration_factor * (m_ + cols_);

    // Phase 1: minimize the sum of artificials.
    if (first_artificial_ < cols_) {
      std::vector<double> c(cols_, 0.0);
      for (std::size_t j = first_artificial_; j < cols_; ++j) c[j] = 1.0;
      price(c);
      const Status st = iterate(cols_, cap, sol.iterations);
      if (st == Status::IterationLimit) {
        sol.status = st;
        return sol;
      }
      double rhs_scale = 1.0;
      for (std::size_t i = 0; i < m_; ++i) rhs_scale = std::max(rhs_scale, std::abs(at(i, cols_)));
      if (-cost_[cols_] > opts_.feasibility_tol * rhs_scale) {
        sol.status = Status::Infeasible;
        return sol;
      }
      drive_out_artificials();
    }

    // Phase 2 on the original objective; artificials may not re-enter.
    std::vector<double> c(cols_, 0.0);
    std::copy(objective_.begin(), objective_.end(), c.begin());
    price(c);
    std::size_t it2 = 0;
    sol.status = iterate(first_artificial_, cap, it2);
    sol.iterations += it2;
    if (sol.status != Status::Optimal) return sol;

    sol.x.assign(n_orig_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_orig_) sol.x[basis_[i]] = std::max(0.0, at(i, cols_));
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n_orig_; ++j) sol.objective += objective_[j] * sol.x[j];
    return sol;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }

  // Reduced costs for cost vector c under the current basis.
  void price(const std::vector<double>& c) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(c.begin(), c.end(), cost_.begin());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    at(r, s) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, s);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, s) = 0.0;
    }
    const double f = cost_[s];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= f * at(r, j);
      cost_[s] = 0.0;
    }
    basis_[r] = s;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving variable.
  Status iterate(std::size_t allowed_cols, std::size_t cap, std::size_t& iterations) {
    for (;;) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost_[j] < -opts_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return Status::Optimal;
      if (iterations >= cap) return Status::IterationLimit;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= opts_.pivot_tol) continue;
        const double ratio = at(i, cols_) / a;
        const double eps = 1e-14 * std::max(1.0, std::abs(best));
        if (leave == m_ || ratio < best - eps) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + eps && basis_[i] < basis_[leave]) {
          leave = i;
          best = std::min(best, ratio);
        }
      }
      if (leave == m_) return Status::Unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t best = first_artificial_;
      double mag = opts_.pivot_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > mag) {
          mag = std::abs(at(i, j));
          best = j;
        }
      }
      // Rows with no such column are redundant and keep a zero artificial.
      if (best < first_artificial_) pivot(i, best);
    }
  }

  Options opts_;
  std::size_t m_ = 0, n_orig_ = 0, cols_ = 0, width_ = 0, first_artificial_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  std::vector<double> objective_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  Tableau t(problem, options);
  return t.run();
}

}  // namespace hardball::lp
