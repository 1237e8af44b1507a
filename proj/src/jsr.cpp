#include "capcodes/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

#include "capcodes/brute.hpp"
#include "capcodes/errors.hpp"
#include "capcodes/positivity.hpp"

namespace capcodes::jsr {

namespace {

void check_square(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1 || a.rows() > 64) {
    throw std::invalid_argument("spectral_radius: need a square matrix of dimension 1..64");
  }
}

Eigen::VectorXcd eigenvalues_of(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw numerical_failure("eigenvalue iteration failed to converge");
  }
  return es.eigenvalues();
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& a) {
  check_square(a);
  return eigenvalues_of(a).cwiseAbs().maxCoeff();
}

bool has_real_simple_dominant(const Eigen::MatrixXd& a, double rel_gap) {
  check_square(a);
  Eigen::VectorXcd ev = eigenvalues_of(a);
  int top = 0;
  for (int i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(top))) top = i;
  }
  double rho = std::abs(ev(top));
  if (rho <= 0.0) return false;
  if (std::abs(ev(top).imag()) > rel_gap * rho) return false;
  if (ev(top).real() <= 0.0) return false;
  for (int i = 0; i < ev.size(); ++i) {
    if (i == top) continue;
    if (std::abs(ev(i)) > rho * (1.0 - rel_gap)) return false;
  }
  return true;
}

Eigen::VectorXd leading_eigenvector(const Eigen::MatrixXd& a) {
  check_square(a);
  if (!has_real_simple_dominant(a)) {
    throw numerical_failure("dominant eigenvalue is complex or repeated in modulus");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    throw numerical_failure("eigenvalue iteration failed to converge");
  }
  Eigen::VectorXcd ev = es.eigenvalues();
  int top = 0;
  for (int i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(top))) top = i;
  }
  Eigen::VectorXcd vc = es.eigenvectors().col(top);
  // A real simple eigenvalue admits a real eigenvector; divide out whatever
  // complex phase the solver attached before dropping the imaginary part.
  int big = 0;
  for (int i = 1; i < vc.size(); ++i) {
    if (std::abs(vc(i)) > std::abs(vc(big))) big = i;
  }
  std::complex<double> phase = vc(big) / std::abs(vc(big));
  Eigen::VectorXd v = (vc / phase).real();
  double scale = v.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw numerical_failure("degenerate leading eigenvector");
  v /= scale;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

namespace {

struct ScanItem {
  transfer::BinMatrix mat;
  std::vector<int> word;
  std::int64_t sum = 0;  // cached entry sum, a cheap dominance prefilter

  ScanItem(transfer::BinMatrix m, std::vector<int> w)
      : mat(std::move(m)), word(std::move(w)), sum(transfer::entry_sum(mat)) {}
};

// a entrywise <= b; requires sum(a) <= sum(b), so callers prefilter on the
// cached sums and the entry loop exits at the first violation.
bool dominated(const ScanItem& a, const ScanItem& b) {
  if (a.sum > b.sum) return false;
  const std::int64_t* pa = a.mat.data();
  const std::int64_t* pb = b.mat.data();
  const Eigen::Index n = a.mat.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pa[i] > pb[i]) return false;
  }
  return true;
}

// Keeps the frontier an antichain under entrywise dominance.  Dropping a
// dominated product loses nothing: its extensions are dominated entry by
// entry, so neither the maximal norm nor the maximal spectral radius of any
// longer product lives only below a dominated branch.
void insert_maximal(std::vector<ScanItem>& frontier, ScanItem cand) {
  for (const ScanItem& kept : frontier) {
    if (dominated(cand, kept)) return;
  }
  std::erase_if(frontier,
                [&](const ScanItem& kept) { return dominated(kept, cand); });
  frontier.push_back(std::move(cand));
}

struct ScanResult {
  double lower = 0.0;
  std::vector<int> best_product;
  bool partial = false;
  // max entry sum over products of each length 1..n (true maxima: the
  // dominance pruning never removes the entrywise-maximal elements)
  std::vector<std::int64_t> level_norms;
  // best averaged spectral radius per scanned length, for certification
  std::vector<std::pair<double, std::vector<int>>> candidates;
};

ScanResult scan_products(const transfer::TransferFamily& fam, int n_max,
                         std::uint64_t budget) {
  if (n_max < 1 || n_max > 40) {
    throw std::invalid_argument("scan_products: n_max out of range 1..40");
  }
  // Antichain sizes are kept below a hard cap: the insertion pass compares
  // every new product against the whole frontier, so an uncapped frontier
  // turns the scan quadratic.  A capped level is discarded and the scan
  // reports partial results from the completed levels only.
  constexpr std::size_t kFrontierCap = 20000;
  ScanResult res;
  std::vector<ScanItem> frontier;
  for (int i = 0; i < fam.size(); ++i) {
    insert_maximal(frontier, ScanItem(fam.matrices[i], {i}));
  }
  std::uint64_t formed = static_cast<std::uint64_t>(fam.size());
  for (int len = 1; len <= n_max; ++len) {
    std::int64_t level = 0;
    double level_rate = 0.0;
    std::vector<int> level_word;
    for (const ScanItem& item : frontier) {
      level = std::max(level, item.sum);
      double rho = spectral_radius(item.mat.cast<double>());
      if (rho > 0.0) {
        double cand = std::pow(rho, 1.0 / len);
        if (cand > level_rate) {
          level_rate = cand;
          level_word = item.word;
        }
        if (cand > res.lower) {
          res.lower = cand;
          res.best_product = item.word;
        }
      }
    }
    res.level_norms.push_back(level);
    if (level_rate > 0.0) res.candidates.emplace_back(level_rate, level_word);
    if (len == n_max) break;
    formed += static_cast<std::uint64_t>(frontier.size()) *
              static_cast<std::uint64_t>(fam.size());
    if (formed > budget) {
      res.partial = true;
      break;
    }
    std::vector<ScanItem> next;
    bool capped = false;
    for (const ScanItem& item : frontier) {
      for (int i = 0; i < fam.size(); ++i) {
        std::vector<int> word = item.word;
        word.push_back(i);
        insert_maximal(next, ScanItem(item.mat * fam.matrices[i], std::move(word)));
        if (next.size() > kFrontierCap) {
          capped = true;
          break;
        }
      }
      if (capped) break;
    }
    if (capped) {
      res.partial = true;
      break;
    }
    frontier = std::move(next);
  }
  return res;
}

// Norm-based upper bound for the family's joint growth rate.  The entry sum
// is submultiplicative on nonnegative matrices, so each per-length maximum
// raised to 1/length bounds the rate.  For a transfer family there is a
// sharper exponent: the length-n maximal entry sum counts codewords of
// length m-1+n, which grow at least like rate^(m-1+n), so 1/(n+m-1) also
// works.  The second form is specific to transfer families and would be
// unsound for arbitrary nonnegative families.
double norm_upper(const ScanResult& scan, int m) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.level_norms.size(); ++i) {
    double len = static_cast<double>(i + 1);
    double norm = static_cast<double>(scan.level_norms[i]);
    if (norm <= 0.0) return 0.0;
    best = std::min(best, std::pow(norm, 1.0 / len));
    best = std::min(best, std::pow(norm, 1.0 / (len + m - 1)));
  }
  return best;
}

// Largest gauge of any scaled image of any polytope vertex; the certificate
// holds when this stays at or below 1 + slack.
double max_image_gauge(const transfer::TransferFamily& fam, double lambda,
                       const SymPolytope& p, int threads) {
  int dim = p.dim();
  int nv = p.count();
  Eigen::MatrixXd images(dim, nv * fam.size());
  for (int i = 0; i < fam.size(); ++i) {
    images.middleCols(i * nv, nv) =
        (fam.matrices[i].cast<double>() / lambda) * p.vertices;
  }
  std::vector<double> g = gauge_batch(images, p, threads);
  double worst = 0.0;
  for (double v : g) worst = std::max(worst, v);
  return worst;
}

// A gauge bound certifies growth only on the span of the polytope's
// vertices.  That is enough for the whole family in exactly two cases:
// the span is everything, or every matrix maps the whole space into the
// span (all columns inside it).  In the latter case any product of length
// at least two factors through the span after its first step, and the
// leading constant from that step cannot move the per-step growth limit.
bool span_usable(const transfer::TransferFamily& fam, const SymPolytope& p) {
  if (spans_fully(p)) return true;
  Eigen::MatrixXd columns(fam.states, fam.states * fam.size());
  for (int i = 0; i < fam.size(); ++i) {
    columns.middleCols(i * fam.states, fam.states) =
        fam.matrices[i].cast<double>();
  }
  return span_contains(p, columns);
}

// Grows the symmetric hull of the seed's orbit under the family scaled by
// 1/scale.  Each round gauges the images of the latest vertices against the
// current hull; images beyond 1 + slack become new vertices.  A round that
// absorbs everything proves invariance: every vertex ever added had all its
// images checked against some intermediate hull, and pruning never shrinks
// the hull, so all images of the final vertex set lie in (1+slack) times
// the final polytope.  Returns nothing when rounds or the vertex cap run
// out first.
std::optional<SymPolytope> grow_invariant(const transfer::TransferFamily& fam,
                                          double scale,
                                          const Eigen::MatrixXd& seed,
                                          int round_cap, const JsrOptions& opt) {
  if (!(scale > 0.0)) return std::nullopt;
  int dim = fam.states;
  std::vector<Eigen::MatrixXd> scaled;
  scaled.reserve(fam.size());
  for (const transfer::BinMatrix& a : fam.matrices) {
    scaled.push_back(a.cast<double>() / scale);
  }
  SymPolytope p{seed};
  Eigen::MatrixXd frontier = seed;
  std::uint64_t work = 0;
  for (int round = 0; round < round_cap; ++round) {
    int nf = frontier.cols();
    Eigen::MatrixXd images(dim, nf * fam.size());
    for (int i = 0; i < fam.size(); ++i) {
      images.middleCols(i * nf, nf) = scaled[i] * frontier;
    }
    // Gauge solves cost roughly one unit per hull vertex each; the pruning
    // pass gauges every vertex against the rest.  Skipping a round that
    // would exceed the allowance keeps the attempt's total work bounded.
    work += static_cast<std::uint64_t>(images.cols() + p.count()) *
            static_cast<std::uint64_t>(std::max(1, p.count()));
    if (work > opt.growth_work_budget) return std::nullopt;
    std::vector<double> g = gauge_batch(images, p, opt.threads);
    std::vector<int> fresh;
    for (int j = 0; j < images.cols(); ++j) {
      if (g[j] > 1.0 + opt.slack) fresh.push_back(j);
    }
    if (fresh.empty()) return pruned(p, opt.prune_tol);
    Eigen::MatrixXd added(dim, static_cast<int>(fresh.size()));
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      added.col(static_cast<int>(j)) = images.col(fresh[j]);
    }
    Eigen::MatrixXd grown(dim, p.count() + added.cols());
    grown << p.vertices, added;
    p.vertices = std::move(grown);
    if (p.count() > opt.vertex_cap) return std::nullopt;
    p = pruned(p, opt.prune_tol);
    frontier = std::move(added);
  }
  return std::nullopt;
}

JsrBracket bracket_from_scan(const ScanResult& scan, int m) {
  JsrBracket b;
  b.lower = scan.lower;
  b.upper = norm_upper(scan, m);
  b.best_product = scan.best_product;
  b.partial = scan.partial;
  return b;
}

// Tries the strongest scanned candidates in order of decreasing averaged
// spectral radius.  Only near-ties of the best lower bound are worth
// attempting: a strictly weaker product certifying its own rate would bound
// the family below an established lower bound, which cannot happen.
std::optional<Certificate> certify_best(const transfer::TransferFamily& fam,
                                        const ScanResult& scan, int k_max,
                                        const JsrOptions& opt) {
  std::vector<std::pair<double, std::vector<int>>> cands = scan.candidates;
  std::stable_sort(cands.begin(), cands.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  int attempts = 0;
  for (const auto& [rate, word] : cands) {
    if (word.empty()) continue;
    if (rate < scan.lower * (1.0 - 1e-12)) break;
    if (++attempts > 6) break;
    std::optional<Certificate> cert = certify_candidate(fam, word, k_max, opt);
    if (cert) return cert;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Certificate> certify_candidate(const transfer::TransferFamily& fam,
                                             const std::vector<int>& product,
                                             int k_max, const JsrOptions& opt) {
  if (product.empty()) {
    throw std::invalid_argument("certify_candidate: empty product");
  }
  for (int i : product) {
    if (i < 0 || i >= fam.size()) {
      throw std::invalid_argument("certify_candidate: factor index out of range");
    }
  }
  Eigen::MatrixXd pi =
      Eigen::MatrixXd::Identity(fam.states, fam.states);
  for (int i : product) pi = pi * fam.matrices[i].cast<double>();
  if (!has_real_simple_dominant(pi)) return std::nullopt;
  double rho = spectral_radius(pi);
  if (!(rho > 0.0)) return std::nullopt;
  double lambda = std::pow(rho, 1.0 / static_cast<double>(product.size()));
  Eigen::VectorXd v = leading_eigenvector(pi);
  // A feasibility-solver breakdown during this speculative construction
  // refutes nothing, so it degrades to "no certificate" rather than
  // aborting the caller; successful certificates are re-verified with
  // fresh solves here and again by verify_certificate.
  try {
    std::optional<SymPolytope> p = grow_invariant(fam, lambda, v, k_max, opt);
    if (!p) return std::nullopt;
    if (!span_usable(fam, *p)) return std::nullopt;
    Certificate cert{lambda, product, std::move(*p), opt.slack, 0.0};
    double worst = max_image_gauge(fam, cert.lambda, cert.polytope, opt.threads);
    cert.margin = (1.0 + cert.slack) - worst;
    if (cert.margin < 0.0) return std::nullopt;
    return cert;
  } catch (const numerical_failure&) {
    return std::nullopt;
  }
}

bool verify_certificate(const transfer::TransferFamily& fam,
                        const Certificate& cert, int threads) {
  if (!(cert.lambda > 0.0)) return false;
  if (cert.polytope.dim() != fam.states || cert.polytope.count() < 1) return false;
  if (!span_usable(fam, cert.polytope)) return false;
  double worst = max_image_gauge(fam, cert.lambda, cert.polytope, threads);
  return worst <= 1.0 + cert.slack;
}

JsrBracket product_bracket(const transfer::TransferFamily& fam, int n_max,
                           const JsrOptions& opt) {
  ScanResult scan = scan_products(fam, n_max, opt.product_budget);
  JsrBracket b = bracket_from_scan(scan, fam.m);
  if (!opt.refine_with_polytope || b.lower <= 0.0) return b;
  if (b.upper <= b.lower * (1.0 + 4.0 * opt.slack)) return b;
  std::optional<Certificate> cert = certify_best(fam, scan, opt.certify_rounds, opt);
  if (cert) {
    b.lower = std::max(b.lower, cert->lambda);
    b.upper = std::min(b.upper, cert->lambda * (1.0 + cert->slack));
    b.certified = true;
    b.partial = false;
    return b;
  }
  // The best product did not certify; try to stabilize the whole-space
  // cross-polytope at scales just above the lower bound.  Stabilization at
  // scale s proves the joint growth rate is at most s*(1+slack).
  static constexpr double kLadder[] = {1e-6, 1e-4, 3e-3};
  int attempts = std::min<int>(opt.ladder_attempts, 3);
  for (int k = 0; k < attempts; ++k) {
    double s = b.lower * (1.0 + kLadder[k]);
    if (s >= b.upper) break;
    std::optional<SymPolytope> p;
    try {
      p = grow_invariant(fam, s, cross_polytope(fam.states).vertices,
                         opt.ladder_rounds, opt);
    } catch (const numerical_failure&) {
      continue;  // a broken speculative solve only forfeits this scale
    }
    if (p) {
      b.upper = std::min(b.upper, s * (1.0 + opt.slack));
      b.certified = true;
      break;
    }
  }
  return b;
}

JsrBracket polytope_iterate(const transfer::TransferFamily& fam, double eps,
                            int step_cap, const JsrOptions& opt) {
  if (!(eps > 0.0)) throw std::invalid_argument("polytope_iterate: eps must be positive");
  if (step_cap < 1) throw std::invalid_argument("polytope_iterate: step_cap must be positive");
  int scan_depth = std::min(10, std::max(4, step_cap / 4));
  ScanResult scan = scan_products(fam, scan_depth, opt.product_budget);
  JsrBracket b = bracket_from_scan(scan, fam.m);
  if (b.upper - b.lower <= eps) {
    b.partial = false;  // a truncated scan still reached the requested width
    return b;
  }
  int rounds_left = step_cap;
  if (!b.best_product.empty()) {
    int k = std::min(opt.certify_rounds, rounds_left);
    std::optional<Certificate> cert = certify_best(fam, scan, k, opt);
    rounds_left -= k;
    if (cert) {
      b.lower = std::max(b.lower, cert->lambda);
      b.upper = std::min(b.upper, cert->lambda * (1.0 + cert->slack));
      b.certified = true;
      b.partial = false;
      return b;
    }
  }
  // Scales above the lower bound, growing geometrically toward the norm
  // upper bound; the first stabilization narrows the bracket to ~0.45*eps.
  for (int k = 0; k < 8 && rounds_left > 0; ++k) {
    double s = b.lower + eps * 0.45 * std::pow(2.0, k);
    if (s >= b.upper) break;
    int rounds = std::min(opt.ladder_rounds, rounds_left);
    std::optional<SymPolytope> p;
    try {
      p = grow_invariant(fam, s, cross_polytope(fam.states).vertices, rounds,
                         opt);
    } catch (const numerical_failure&) {
      rounds_left -= rounds;
      continue;  // a broken speculative solve only forfeits this scale
    }
    rounds_left -= rounds;
    if (p) {
      b.upper = std::min(b.upper, s * (1.0 + opt.slack));
      b.certified = true;
      if (b.upper - b.lower <= eps) return b;
    }
  }
  b.partial = b.upper - b.lower > eps;
  return b;
}

namespace {

double clamp_bits(double x) { return std::clamp(x, 0.0, 1.0); }

// Sandwich from exhaustive code sizes at the largest length the node budget
// affords; nothing affordable leaves the report's confirmation empty.
void confirm_by_code_sizes(CapacityReport& rep, const PatternSet& d,
                           const CapacityOptions& opt) {
  ZeroRunParams zp = d.zero_runs();
  int n_min = std::max(1, zp.r1 + zp.r2);
  int best_n = 0;
  std::int64_t best_delta = 0;
  for (int n = n_min; n <= opt.confirm_n_cap && n <= BinWord::max_len; ++n) {
    try {
      brute::MaxCodeResult r = brute::max_code(n, d, opt.confirm_node_budget);
      best_n = n;
      best_delta = r.size;
    } catch (const budget_exhausted&) {
      break;
    }
  }
  if (best_n == 0) return;
  rep.confirmation_n = best_n;
  rep.confirmation = bounds::capacity_bracket(best_n, best_delta, d);
  constexpr double kTol = 1e-9;
  if (rep.lower > rep.confirmation->upper + kTol ||
      rep.upper < rep.confirmation->lower - kTol) {
    throw invariant_violation(
        "capacity estimate and exhaustive-count sandwich do not intersect");
  }
}

}  // namespace

CapacityReport capacity(const PatternSet& d, CapacityMode mode,
                        const CapacityOptions& opt) {
  if (d.extended()) {
    throw std::invalid_argument("capacity: expand extended sets first");
  }
  CapacityReport rep;
  rep.positive = positivity::decide_positive(d);
  if (!rep.positive) {
    rep.certified = true;
    rep.exact = 0.0;
    rep.lower = 0.0;
    rep.upper = 0.0;
    rep.growth.lower = 1.0;
    rep.growth.upper = 1.0;
    rep.growth.certified = true;
    confirm_by_code_sizes(rep, d, opt);
    return rep;
  }
  transfer::TransferFamily fam = transfer::build_sigma(d, opt.m_cap);
  rep.family_size = fam.size();
  rep.states = fam.states;
  if (mode == CapacityMode::certify) {
    ScanResult scan = scan_products(fam, opt.scan_n_max, opt.jsr.product_budget);
    JsrBracket b = bracket_from_scan(scan, fam.m);
    std::optional<Certificate> cert =
        certify_best(fam, scan, opt.jsr.certify_rounds, opt.jsr);
    if (cert) {
      b.lower = std::max(b.lower, cert->lambda);
      b.upper = std::min(b.upper, cert->lambda * (1.0 + cert->slack));
      b.certified = true;
      b.partial = false;
      rep.certified = true;
      rep.exact = std::log2(cert->lambda);
      rep.certificate = std::move(cert);
      rep.growth = std::move(b);
    } else {
      // Certification failed; fall back to an honest iterative bracket.
      double eps_rho = std::pow(2.0, opt.eps) - 1.0;
      JsrBracket it = polytope_iterate(fam, eps_rho, opt.step_cap, opt.jsr);
      it.lower = std::max(it.lower, b.lower);
      it.upper = std::min(it.upper, b.upper);
      rep.partial = true;
      rep.growth = std::move(it);
    }
  } else {
    // Growth rates are at least 1 for a positive-capacity set, so a growth
    // bracket of width 2^eps - 1 pins the capacity to within eps bits.
    double eps_rho = std::pow(2.0, opt.eps) - 1.0;
    JsrBracket it = polytope_iterate(fam, eps_rho, opt.step_cap, opt.jsr);
    rep.partial = it.partial;
    rep.growth = std::move(it);
  }
  rep.lower = clamp_bits(std::log2(std::max(rep.growth.lower, 1.0)));
  rep.upper = clamp_bits(std::log2(std::max(rep.growth.upper, 1.0)) + 1e-15);
  confirm_by_code_sizes(rep, d, opt);
  return rep;
}

}  // namespace capcodes::jsr
