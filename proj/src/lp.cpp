#include "capcodes/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>

#include "capcodes/errors.hpp"

namespace capcodes::lp {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-8;
constexpr int kRefactorEvery = 48;

struct Tableau {
  Eigen::MatrixXd t;       // (m+1) x (cols+1), last column is the rhs,
                           // last row holds reduced costs and -objective
  Eigen::MatrixXd orig;    // sign-fixed [A | I], the ground truth
  Eigen::VectorXd orig_rhs;
  Eigen::VectorXd cost;    // current phase costs over all columns
  std::vector<int> basis;  // basic column per row
  int rows = 0;
  int cols = 0;
  int pivots_since_refactor = 0;

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i <= rows; ++i) {
      if (i == row) continue;
      const double factor = t(i, col);
      if (factor != 0.0) t.row(i) -= factor * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Rebuilds the whole tableau from the original data for the current
  // basis.  Long chains of rank-one pivot updates drift; recomputing from
  // the ground truth sheds the accumulated error.
  void refactorize() {
    Eigen::MatrixXd bmat(rows, rows);
    for (int i = 0; i < rows; ++i) {
      bmat.col(i) = orig.col(basis[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bmat);
    if (!lu.isInvertible()) {
      throw numerical_failure("solve_equality_lp: singular basis");
    }
    t.block(0, 0, rows, cols) = lu.solve(orig);
    t.block(0, cols, rows, 1) = lu.solve(orig_rhs);

    // A feasible basis has a nonnegative rhs; tolerate degeneracy-sized
    // noise, treat anything larger as a genuinely broken basis.
    const double scale = 1.0 + orig_rhs.lpNorm<Eigen::Infinity>();
    for (int i = 0; i < rows; ++i) {
      if (t(i, cols) < 0.0) {
        if (t(i, cols) < -1e-6 * scale) {
          throw numerical_failure("solve_equality_lp: basis lost feasibility");
        }
        t(i, cols) = 0.0;
      }
    }

    for (int j = 0; j <= cols; ++j) {
      t(rows, j) = j < cols ? cost(j) : 0.0;
    }
    for (int i = 0; i < rows; ++i) {
      const double cb = cost(basis[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t.row(rows) -= cb * t.row(i);
    }
    pivots_since_refactor = 0;
  }

  // One simplex phase over the allowed column range [0, allowed_cols).
  // Dantzig's rule, switching to Bland's once the iteration budget is half
  // spent so that degenerate cycling cannot run forever.
  void run(int allowed_cols, int& iterations, int max_iters) {
    bool bland = false;
    while (true) {
      int enter = -1;
      if (!bland) {
        double best = -kReducedCostTol;
        for (int j = 0; j < allowed_cols; ++j) {
          if (t(rows, j) < best) {
            best = t(rows, j);
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < allowed_cols; ++j) {
          if (t(rows, j) < -kReducedCostTol) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        const double piv = t(i, enter);
        if (piv <= kPivotTol) continue;
        const double ratio = t(i, cols) / piv;
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
          continue;
        }
        if (ratio < best_ratio + 1e-12) {
          // Ratio ties: Bland's rule keeps the smallest basis index for the
          // cycling guarantee; otherwise prefer the numerically strongest
          // pivot so ill-conditioned updates stay rare.
          const bool better =
              bland ? basis[static_cast<std::size_t>(i)] <
                          basis[static_cast<std::size_t>(leave)]
                    : piv > t(leave, enter);
          if (better) {
            best_ratio = std::min(best_ratio, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) {
        // The column may only look unbounded through accumulated drift;
        // retry once from freshly refactorized data before giving up.
        if (pivots_since_refactor > 0) {
          refactorize();
          continue;
        }
        throw numerical_failure(
            "solve_equality_lp: unbounded pivot in a bounded problem");
      }
      pivot(leave, enter);
      if (++pivots_since_refactor >= kRefactorEvery) refactorize();
      if (++iterations > max_iters) {
        throw numerical_failure("solve_equality_lp: iteration cap exceeded");
      }
      if (!bland && iterations > max_iters / 2) bland = true;
    }
  }
};

}  // namespace

LpSolution solve_equality_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c, int max_iters) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("solve_equality_lp: dimension mismatch");
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m;  // structural columns then one artificial per row
  tab.orig.setZero(m, tab.cols);
  tab.orig_rhs.resize(m);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    tab.orig.block(i, 0, 1, n) = sign * a.row(i);
    tab.orig(i, n + i) = 1.0;
    tab.orig_rhs(i) = sign * b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }

  // Phase 1: minimize the artificial total to find a feasible basis.
  tab.cost = Eigen::VectorXd::Zero(tab.cols);
  tab.cost.segment(n, m).setOnes();
  tab.t.setZero(m + 1, tab.cols + 1);
  tab.refactorize();

  int iterations = 0;
  tab.run(tab.cols, iterations, max_iters);

  LpSolution out;
  if (-tab.t(m, tab.cols) > kFeasTol) {
    return out;  // phase-1 optimum positive: no feasible point
  }

  // Drive leftover artificials out of the basis where possible; rows that
  // offer no structural pivot are redundant constraints and stay harmless
  // at level zero.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over the structural columns; artificials may not re-enter
  // (entering scans stop at column n) and carry a positive cost so the
  // refactorized reduced-cost row never tempts the ratio test with them.
  tab.cost.segment(0, n) = c;
  tab.refactorize();
  tab.run(n, iterations, max_iters);
  tab.refactorize();

  out.feasible = true;
  out.z = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) out.z(bj) = tab.t(i, tab.cols);
  }
  const double residual = (a * out.z - b).lpNorm<Eigen::Infinity>();
  const double scale = 1.0 + b.lpNorm<Eigen::Infinity>();
  if (residual > 1e-8 * scale) {
    throw numerical_failure("solve_equality_lp: solution fails the residual check");
  }
  out.objective = c.dot(out.z);
  return out;
}

}  // namespace capcodes::lp
