#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "capcodes/jsr.hpp"
#include "capcodes/patterns.hpp"
#include "capcodes/transfer.hpp"

using namespace capcodes;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

// Hand-made two-matrix family whose joint growth rate is the golden ratio:
// the Fibonacci matrix dominates, and the swap matrix (norm one) never
// builds faster products.  Small enough to certify in a handful of rounds.
transfer::TransferFamily fibonacci_family() {
  transfer::TransferFamily fam;
  fam.m = 2;
  fam.states = 2;
  transfer::BinMatrix f(2, 2);
  f << 1, 1,
       1, 0;
  transfer::BinMatrix s(2, 2);
  s << 0, 1,
       1, 0;
  fam.matrices.push_back(f);
  fam.matrices.push_back(s);
  fam.edge_sets.push_back({});
  fam.edge_sets.push_back({});
  return fam;
}

}  // namespace

TEST_CASE("spectral radius and dominance classification") {
  Eigen::MatrixXd d = Eigen::Vector2d(3.0, -5.0).asDiagonal();
  CHECK(jsr::spectral_radius(d) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK_FALSE(jsr::has_real_simple_dominant(d));  // dominant is negative

  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, -1.0,
         1.0, 0.0;
  CHECK(jsr::spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(jsr::has_real_simple_dominant(rot));  // complex pair

  Eigen::MatrixXd good(2, 2);
  good << 2.0, 1.0,
          0.0, 1.0;
  CHECK(jsr::has_real_simple_dominant(good));

  Eigen::MatrixXd tie = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  CHECK_FALSE(jsr::has_real_simple_dominant(tie));  // modulus tie
}

TEST_CASE("leading eigenvectors are normalized and sign-fixed") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0,
       0.0, 1.0;
  Eigen::VectorXd v = jsr::leading_eigenvector(a);
  CHECK(v(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v(1) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd fib(2, 2);
  fib << 1.0, 1.0,
         1.0, 0.0;
  Eigen::VectorXd w = jsr::leading_eigenvector(fib);
  CHECK(w(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w(1) == doctest::Approx(1.0 / kGolden).epsilon(1e-10));
}

TEST_CASE("the Fibonacci pair certifies the golden growth rate") {
  transfer::TransferFamily fam = fibonacci_family();
  auto cert = jsr::certify_candidate(fam, {0}, 60);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == doctest::Approx(kGolden).epsilon(1e-12));
  CHECK(cert->margin >= 0.0);
  CHECK(jsr::verify_certificate(fam, *cert));

  jsr::JsrBracket b = jsr::product_bracket(fam, 6);
  CHECK(b.certified);
  CHECK(b.lower == doctest::Approx(kGolden).epsilon(1e-12));
  CHECK(b.upper <= kGolden * (1.0 + 1e-8));
}

TEST_CASE("a full-rank single-matrix family cannot close a thin polytope") {
  // The lone Fibonacci matrix maps its eigenvector line to itself, so the
  // grown polytope spans one dimension while the matrix range is the whole
  // plane; certification must decline rather than claim an unsound bound.
  transfer::TransferFamily fam = fibonacci_family();
  fam.matrices.pop_back();
  fam.edge_sets.pop_back();
  CHECK_FALSE(jsr::certify_candidate(fam, {0}, 60).has_value());
}

TEST_CASE("tampered certificates fail verification") {
  transfer::TransferFamily fam = fibonacci_family();
  auto cert = jsr::certify_candidate(fam, {0}, 60);
  REQUIRE(cert.has_value());

  jsr::Certificate low = *cert;
  low.lambda *= 0.999;  // images now exceed the allowed gauge
  CHECK_FALSE(jsr::verify_certificate(fam, low));

  jsr::Certificate flat = *cert;
  flat.polytope.vertices = flat.polytope.vertices.leftCols(1);
  CHECK_FALSE(jsr::verify_certificate(fam, flat));

  jsr::Certificate empty = *cert;
  empty.lambda = 0.0;
  CHECK_FALSE(jsr::verify_certificate(fam, empty));
}

TEST_CASE("certification pins the golden-ratio capacity") {
  PatternSet d = PatternSet::parse("0++\n");
  jsr::CapacityReport rep = jsr::capacity(d, jsr::CapacityMode::certify);
  CHECK(rep.positive);
  CHECK(rep.certified);
  CHECK_FALSE(rep.partial);
  REQUIRE(rep.exact.has_value());
  CHECK(*rep.exact == doctest::Approx(std::log2(kGolden)).epsilon(1e-10));
  REQUIRE(rep.certificate.has_value());
  transfer::TransferFamily fam = transfer::build_sigma(d);
  CHECK(jsr::verify_certificate(fam, *rep.certificate));
  CHECK(rep.lower <= *rep.exact);
  CHECK(rep.upper >= *rep.exact);
  CHECK(rep.confirmation_n > 0);
}

TEST_CASE("certification succeeds on a family whose orbit spans a subspace") {
  // For this set the leading-eigenvector orbit closes inside a proper
  // subspace that still contains both matrix ranges, so the certificate is
  // valid without a full-dimensional polytope.
  PatternSet d = PatternSet::parse("+++-\n");
  jsr::CapacityReport rep = jsr::capacity(d, jsr::CapacityMode::certify);
  REQUIRE(rep.exact.has_value());
  CHECK(rep.certified);
  CHECK(*rep.exact == doctest::Approx(0.900536767892802).epsilon(1e-10));
  REQUIRE(rep.certificate.has_value());
  CHECK_FALSE(jsr::spans_fully(rep.certificate->polytope));
  transfer::TransferFamily fam = transfer::build_sigma(d);
  CHECK(jsr::verify_certificate(fam, *rep.certificate));
}

TEST_CASE("bracket mode pins the all-difference sets") {
  PatternSet d2 = PatternSet::parse("xx\n").expanded();
  jsr::CapacityOptions opt;
  opt.eps = 0.01;
  jsr::CapacityReport rep = jsr::capacity(d2, jsr::CapacityMode::bracket, opt);
  CHECK(rep.positive);
  CHECK(rep.lower <= 0.5 + 1e-9);
  CHECK(rep.upper >= 0.5 - 1e-9);
  CHECK(rep.upper - rep.lower <= 0.01);
}

TEST_CASE("zero-capacity sets short-circuit through the decider") {
  jsr::CapacityReport rep =
      jsr::capacity(PatternSet::parse("00+\n"), jsr::CapacityMode::certify);
  CHECK_FALSE(rep.positive);
  CHECK(rep.certified);
  REQUIRE(rep.exact.has_value());
  CHECK(*rep.exact == 0.0);
  CHECK(rep.growth.lower == 1.0);
  CHECK(rep.growth.upper == 1.0);
}

TEST_CASE("product scans bound the two-matrix sign family tightly") {
  PatternSet d = PatternSet::parse("++-\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  jsr::JsrBracket b = jsr::product_bracket(fam, 12);
  CHECK(b.lower >= std::pow(2.0, 0.811));
  CHECK(b.upper < 1.755);
}

TEST_CASE("iterative brackets respect the requested width") {
  PatternSet d = PatternSet::parse("0++\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  jsr::JsrBracket b = jsr::polytope_iterate(fam, 0.02, 200);
  CHECK_FALSE(b.partial);
  CHECK(b.upper - b.lower <= 0.02);
  CHECK(b.lower <= kGolden + 1e-9);
  CHECK(b.upper >= kGolden - 1e-9);
  CHECK_THROWS_AS(jsr::polytope_iterate(fam, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(jsr::polytope_iterate(fam, 0.1, 0), std::invalid_argument);
}

TEST_CASE("capacity rejects wildcard sets") {
  CHECK_THROWS_AS(
      jsr::capacity(PatternSet::parse("0x+\n"), jsr::CapacityMode::bracket),
      std::invalid_argument);
}

TEST_CASE("reports stay consistent with the exhaustive confirmation") {
  for (const char* text : {"0++\n", "++-\n", "+-\n-+\n"}) {
    PatternSet d = PatternSet::parse(text);
    jsr::CapacityReport rep = jsr::capacity(d, jsr::CapacityMode::certify);
    CAPTURE(text);
    REQUIRE(rep.confirmation.has_value());
    CHECK(rep.lower <= rep.confirmation->upper + 1e-9);
    CHECK(rep.upper >= rep.confirmation->lower - 1e-9);
  }
}
