#pragma once

#include <vector>

#include <Eigen/Dense>

namespace capcodes::jsr {

// An origin-symmetric polytope given by its vertices, one representative
// stored per +/- pair (the mirror images are implicit).
struct SymPolytope {
  Eigen::MatrixXd vertices;  // one column per stored representative

  int dim() const noexcept { return static_cast<int>(vertices.rows()); }
  int count() const noexcept { return static_cast<int>(vertices.cols()); }
};

// Unit ball of the sum-of-absolute-values norm: the basis vectors.
SymPolytope cross_polytope(int dim);

// Minkowski gauge of x with respect to p: the least t >= 0 with x inside
// t*p, computed as min sum|c_j| subject to V c = x.  Infinity when x lies
// outside the linear span of the vertices.
double gauge(const Eigen::VectorXd& x, const SymPolytope& p);

// gauge(x) <= 1 + slack, decided by the same linear program.  Solver
// breakdowns surface as numerical_failure, never as a silent false.
bool point_in_hull(const Eigen::VectorXd& x, const SymPolytope& p,
                   double slack);

// Gauges of many points; points are independent, so the batch may be split
// across threads.  Results do not depend on the thread count.
std::vector<double> gauge_batch(const Eigen::MatrixXd& points,
                                const SymPolytope& p, int threads = 1);

// Drops every vertex lying in the hull of the remaining ones (gauge at most
// 1 + tol against the others).  Removing such a vertex leaves the hull
// unchanged, so checks run against the already-pruned set as it shrinks.
SymPolytope pruned(const SymPolytope& p, double tol = 1e-12);

// True when the vertices span the whole space, i.e. the gauge of every
// basis vector is finite and the polytope's gauge is a genuine norm.
bool spans_fully(const SymPolytope& p);

// True when every column of `points` lies in the linear span of the
// vertices, up to a relative residual of tol per column.
bool span_contains(const SymPolytope& p, const Eigen::MatrixXd& points,
                   double tol = 1e-9);

}  // namespace capcodes::jsr
