#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "capcodes/bounds.hpp"
#include "capcodes/patterns.hpp"
#include "capcodes/polytope.hpp"
#include "capcodes/transfer.hpp"

namespace capcodes::jsr {

// Dominant eigenvalue modulus of a square matrix (dimension <= 64).
double spectral_radius(const Eigen::MatrixXd& a);

// True when the eigenvalue of largest modulus is real and strictly simple
// in modulus (no other eigenvalue within rel_gap of it).
bool has_real_simple_dominant(const Eigen::MatrixXd& a, double rel_gap = 1e-9);

// Eigenvector for the dominant eigenvalue, scaled to unit max norm with the
// first nonzero component positive.  Throws numerical_failure when the
// dominant eigenvalue is complex or repeated in modulus.
Eigen::VectorXd leading_eigenvector(const Eigen::MatrixXd& a);

// Two-sided bound on the joint growth rate of a matrix family.
struct JsrBracket {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<int> best_product;  // factor indices attaining lower
  bool partial = false;           // a budget or step cap cut the work short
  bool certified = false;         // upper comes from an invariant polytope
};

// Proof object for an exact joint growth rate: every family matrix, scaled
// by 1/lambda, maps the polytope into (1+slack) times itself, so the joint
// growth rate lies in [lambda, lambda*(1+slack)].
struct Certificate {
  double lambda = 0.0;
  std::vector<int> product;  // the product whose spectral radius gives lambda
  SymPolytope polytope;
  double slack = 1e-9;
  double margin = 0.0;  // (1+slack) minus the largest verified image gauge
};

struct JsrOptions {
  std::uint64_t product_budget = 1u << 22;  // products formed during scans
  int certify_rounds = 60;                  // polytope growth rounds per attempt
  int vertex_cap = 6000;
  // Deterministic cost cap per polytope growth attempt, measured in hull
  // vertices touched by feasibility solves; an attempt that would exceed it
  // stops and reports no polytope.  Keeps high-dimensional attempts from
  // running unboundedly long while leaving small problems unaffected.
  std::uint64_t growth_work_budget = 30'000'000;
  double slack = 1e-9;
  double prune_tol = 1e-12;
  int threads = 1;
  bool refine_with_polytope = true;  // let product_bracket attempt invariant
                                     // polytopes to tighten its upper bound
  int ladder_attempts = 3;           // stabilization scales tried above lower
  int ladder_rounds = 120;           // growth rounds per stabilization scale
};

// Bounds from products of length <= n_max: lower is the best spectral
// radius of a product taken to the 1/length power; the upper bound is the
// best of the per-length norm estimates and, when enabled, of invariant
// polytopes grown around the best product.  Entrywise-dominated partial
// products are pruned, which changes neither bound.
JsrBracket product_bracket(const transfer::TransferFamily& fam, int n_max,
                           const JsrOptions& opt = {});

// Attempts to prove that the joint growth rate equals
// rho(product)^(1/length) by growing the orbit of the product's leading
// eigenvector under the scaled family into an invariant polytope.  The
// polytope's span must either be the full space or contain the range of
// every family matrix; in the latter case all products of length >= 2 act
// inside the span, so the gauge bound still covers the whole family.
// Returns nothing when the dominant eigenvalue is complex or repeated, the
// polytope fails to close within k_max rounds or the vertex cap, neither
// span condition holds, or the final independent re-verification fails;
// none of these refute the candidate value.
std::optional<Certificate> certify_candidate(const transfer::TransferFamily& fam,
                                             const std::vector<int>& product,
                                             int k_max,
                                             const JsrOptions& opt = {});

// Independent re-check of a certificate with fresh feasibility solves:
// every scaled image of every vertex must lie within (1+slack) times the
// polytope, and the polytope's span must cover the full space or at least
// the range of every family matrix.
bool verify_certificate(const transfer::TransferFamily& fam,
                        const Certificate& cert, int threads = 1);

// Iterative bracket: scan products for a lower bound and norm uppers, then
// tighten the upper bound by growing invariant polytopes at scales slightly
// above the lower bound (starting from the cross-polytope, whose hull always
// spans).  eps is the target width in growth-rate units; step_cap bounds the
// total growth rounds.  A bracket wider than eps is flagged partial.
JsrBracket polytope_iterate(const transfer::TransferFamily& fam, double eps,
                            int step_cap, const JsrOptions& opt = {});

enum class CapacityMode { bracket, certify };

struct CapacityOptions {
  double eps = 1e-2;    // bracket mode: target capacity width in bits
  int scan_n_max = 10;  // product scan depth
  int step_cap = 400;
  int m_cap = 6;
  std::uint64_t confirm_node_budget = 1'000'000;
  int confirm_n_cap = 8;  // longest word length tried for confirmation
  JsrOptions jsr;
};

struct CapacityReport {
  bool positive = false;
  bool certified = false;
  bool partial = false;
  double lower = 0.0;  // capacity in bits per symbol
  double upper = 1.0;
  std::optional<double> exact;  // log2(lambda), present when certified
  JsrBracket growth;            // bracket on the growth rate itself
  std::optional<Certificate> certificate;
  int confirmation_n = 0;  // 0 when no exhaustive length was affordable
  std::optional<bounds::CapacityBracket> confirmation;
  int family_size = 0;
  int states = 0;
};

// Full pipeline: positivity decision, transfer family, product scan, then
// either certification of an exact value or an eps-wide bracket; finally an
// independent sandwich from exhaustive code sizes at the largest affordable
// length.  Throws invariant_violation when the computed capacity falls
// outside that sandwich.  Requires a non-extended set; sets with an
// all-zero pattern are answered through the positivity decision alone.
CapacityReport capacity(const PatternSet& d, CapacityMode mode,
                        const CapacityOptions& opt = {});

}  // namespace capcodes::jsr
