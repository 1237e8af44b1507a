#include "capcodes/polytope.hpp"

#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "capcodes/lp.hpp"

namespace capcodes::jsr {

SymPolytope cross_polytope(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("cross_polytope: dimension must be positive");
  }
  SymPolytope p;
  p.vertices = Eigen::MatrixXd::Identity(dim, dim);
  return p;
}

double gauge(const Eigen::VectorXd& x, const SymPolytope& p) {
  if (x.size() != p.dim()) {
    throw std::invalid_argument("gauge: dimension mismatch");
  }
  if (p.count() == 0) {
    return x.isZero(0.0) ? 0.0
                         : std::numeric_limits<double>::infinity();
  }
  // min sum(c+ + c-) with V(c+ - c-) = x splits the signed coefficients
  // into a standard-form program.
  const int k = p.count();
  Eigen::MatrixXd a(p.dim(), 2 * k);
  a.leftCols(k) = p.vertices;
  a.rightCols(k) = -p.vertices;
  const lp::LpSolution sol =
      lp::solve_equality_lp(a, x, Eigen::VectorXd::Ones(2 * k));
  if (!sol.feasible) return std::numeric_limits<double>::infinity();
  return sol.objective;
}

bool point_in_hull(const Eigen::VectorXd& x, const SymPolytope& p,
                   double slack) {
  return gauge(x, p) <= 1.0 + slack;
}

std::vector<double> gauge_batch(const Eigen::MatrixXd& points,
                                const SymPolytope& p, int threads) {
  const int n = static_cast<int>(points.cols());
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = gauge(points.col(j), p);
    return out;
  }
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  std::mutex failure_lock;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int j = w; j < n; j += workers) {
          out[static_cast<std::size_t>(j)] = gauge(points.col(j), p);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> hold(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

SymPolytope pruned(const SymPolytope& p, double tol) {
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(p.count()));
  for (int j = 0; j < p.count(); ++j) keep.push_back(j);

  for (std::size_t pos = 0; pos < keep.size();) {
    SymPolytope rest;
    rest.vertices.resize(p.dim(), static_cast<Eigen::Index>(keep.size()) - 1);
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (i == pos) continue;
      rest.vertices.col(col++) = p.vertices.col(keep[i]);
    }
    if (keep.size() > 1 &&
        gauge(p.vertices.col(keep[pos]), rest) <= 1.0 + tol) {
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }

  SymPolytope out;
  out.vertices.resize(p.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.vertices.col(static_cast<Eigen::Index>(i)) = p.vertices.col(keep[i]);
  }
  return out;
}

bool spans_fully(const SymPolytope& p) {
  for (int j = 0; j < p.dim(); ++j) {
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(p.dim());
    basis(j) = 1.0;
    if (!std::isfinite(gauge(basis, p))) return false;
  }
  return true;
}

bool span_contains(const SymPolytope& p, const Eigen::MatrixXd& points,
                   double tol) {
  if (points.rows() != p.dim()) {
    throw std::invalid_argument("span_contains: dimension mismatch");
  }
  if (points.cols() == 0) return true;
  if (p.count() == 0) return points.isZero(0.0);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      p.vertices);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const Eigen::VectorXd x = points.col(j);
    const Eigen::VectorXd back = p.vertices * cod.solve(x);
    const double scale = 1.0 + x.lpNorm<Eigen::Infinity>();
    if ((back - x).lpNorm<Eigen::Infinity>() > tol * scale) return false;
  }
  return true;
}

}  // namespace capcodes::jsr
