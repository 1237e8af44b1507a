#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "capcodes/polytope.hpp"

using namespace capcodes;
using jsr::SymPolytope;

TEST_CASE("the cross polytope's gauge is the sum of absolute values") {
  SymPolytope p = jsr::cross_polytope(3);
  Eigen::VectorXd x(3);
  x << 1.0, -2.0, 0.5;
  CHECK(jsr::gauge(x, p) == doctest::Approx(3.5).epsilon(1e-9));
  CHECK(jsr::gauge(Eigen::VectorXd::Zero(3), p) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(jsr::cross_polytope(0), std::invalid_argument);
}

TEST_CASE("the gauge respects mirrored vertices and scaling") {
  SymPolytope p;
  p.vertices.resize(2, 1);
  p.vertices << 1.0, 0.0;
  // The stored vertex and its implicit mirror span the segment [-e1, e1].
  CHECK(jsr::gauge((Eigen::VectorXd(2) << 2.0, 0.0).finished(), p) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(jsr::gauge((Eigen::VectorXd(2) << -3.0, 0.0).finished(), p) ==
        doctest::Approx(3.0).epsilon(1e-9));
  // Off-span points have infinite gauge.
  CHECK(std::isinf(jsr::gauge((Eigen::VectorXd(2) << 0.0, 1.0).finished(), p)));
}

TEST_CASE("hull membership matches the gauge") {
  SymPolytope p = jsr::cross_polytope(2);
  CHECK(jsr::point_in_hull((Eigen::VectorXd(2) << 0.5, 0.5).finished(), p,
                           1e-9));
  CHECK(jsr::point_in_hull((Eigen::VectorXd(2) << 1.0, 0.0).finished(), p,
                           1e-9));
  CHECK_FALSE(jsr::point_in_hull(
      (Eigen::VectorXd(2) << 0.6, 0.6).finished(), p, 1e-9));
}

TEST_CASE("gauge batches are independent of the thread count") {
  SymPolytope p = jsr::cross_polytope(4);
  Eigen::MatrixXd pts(4, 9);
  for (int j = 0; j < 9; ++j) {
    for (int i = 0; i < 4; ++i) {
      pts(i, j) = std::sin(1.0 + i + 3 * j);
    }
  }
  auto g1 = jsr::gauge_batch(pts, p, 1);
  auto g3 = jsr::gauge_batch(pts, p, 3);
  REQUIRE(g1.size() == g3.size());
  for (std::size_t i = 0; i < g1.size(); ++i) {
    CHECK(g1[i] == doctest::Approx(g3[i]).epsilon(1e-12));
  }
}

TEST_CASE("pruning removes interior vertices and keeps the hull") {
  SymPolytope p;
  p.vertices.resize(2, 3);
  p.vertices << 1.0, 0.0, 0.4,
                0.0, 1.0, 0.4;
  SymPolytope q = jsr::pruned(p);
  CHECK(q.count() == 2);
  // The hull is unchanged: gauges of probe points agree.
  for (double x : {0.3, 0.9, -0.5}) {
    Eigen::VectorXd probe(2);
    probe << x, 0.25;
    CHECK(jsr::gauge(probe, p) == doctest::Approx(jsr::gauge(probe, q)).epsilon(1e-9));
  }
  // A vertex on the boundary of the others' hull is redundant too.
  SymPolytope r;
  r.vertices.resize(2, 3);
  r.vertices << 1.0, 0.0, 0.5,
                0.0, 1.0, 0.5;
  CHECK(jsr::pruned(r).count() == 2);
}

TEST_CASE("span tests distinguish full rank from deficiency") {
  CHECK(jsr::spans_fully(jsr::cross_polytope(3)));
  SymPolytope flat;
  flat.vertices.resize(3, 2);
  flat.vertices << 1.0, 0.0,
                   0.0, 1.0,
                   0.0, 0.0;
  CHECK_FALSE(jsr::spans_fully(flat));

  Eigen::MatrixXd inside(3, 2);
  inside << 1.0, -2.0,
            2.0, 0.5,
            0.0, 0.0;
  CHECK(jsr::span_contains(flat, inside));
  Eigen::MatrixXd outside(3, 1);
  outside << 1.0, 1.0, 1e-3;
  CHECK_FALSE(jsr::span_contains(flat, outside));
  CHECK(jsr::span_contains(flat, Eigen::MatrixXd(3, 0)));
  CHECK_THROWS_AS(jsr::span_contains(flat, Eigen::MatrixXd::Ones(2, 1)),
                  std::invalid_argument);
}
