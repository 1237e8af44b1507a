// Command-line front end: analyze, delta, bounds, positivity, shortest-word,
// sigma, jsr, certify, reduce-nae3sat.  Exit codes: 0 success, 1 usage error,
// 2 computation budget exceeded, 3 internal invariant violation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "capcodes/bounds.hpp"
#include "capcodes/brute.hpp"
#include "capcodes/errors.hpp"
#include "capcodes/jsr.hpp"
#include "capcodes/patterns.hpp"
#include "capcodes/positivity.hpp"
#include "capcodes/transfer.hpp"

namespace {

using nlohmann::json;
namespace cc = capcodes;

constexpr const char* kVersion = "0.1.0";

std::string fmt15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Rounds to 15 significant digits so that JSON numbers serialize the same
// way the text reports print them.
double real15(double x) { return std::strtod(fmt15(x).c_str(), nullptr); }

struct Options {
  std::string patterns_path;
  std::string cnf_path;
  std::string out_path;
  int n = 0;
  int n_max = 0;
  double eps = 0.0;
  std::uint64_t budget = 0;
  bool as_json = false;
  int threads = 0;

  int resolved_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw std::invalid_argument("cannot open output file: " + opt.out_path);
  f << text;
}

struct LoadedSet {
  cc::PatternSet original;
  cc::PatternSet expanded;  // equal to original when no wildcards
  bool was_extended = false;
};

LoadedSet load_patterns(const Options& opt) {
  if (opt.patterns_path.empty()) {
    throw std::invalid_argument("missing --patterns FILE");
  }
  cc::PatternSet d = cc::PatternSet::load(opt.patterns_path);
  bool ext = d.extended();
  cc::PatternSet e = ext ? d.expanded() : d;
  return LoadedSet{std::move(d), std::move(e), ext};
}

json config_json(const std::string& command, const Options& opt) {
  json cfg;
  cfg["command"] = command;
  cfg["version"] = kVersion;
  if (!opt.patterns_path.empty()) cfg["patterns_file"] = opt.patterns_path;
  if (!opt.cnf_path.empty()) cfg["cnf_file"] = opt.cnf_path;
  if (!opt.out_path.empty()) cfg["out_file"] = opt.out_path;
  if (opt.n > 0) cfg["n"] = opt.n;
  if (opt.n_max > 0) cfg["n_max"] = opt.n_max;
  if (opt.eps > 0.0) cfg["eps"] = real15(opt.eps);
  if (opt.budget > 0) cfg["budget"] = opt.budget;
  cfg["threads"] = opt.resolved_threads();
  return cfg;
}

json set_json(const LoadedSet& s) {
  json j;
  std::vector<std::string> pats;
  for (const cc::Pattern& p : s.original.patterns()) pats.push_back(p.str());
  j["patterns"] = pats;
  j["extended"] = s.was_extended;
  if (s.was_extended) j["expanded_size"] = s.expanded.size();
  const cc::ZeroRunParams& z = s.expanded.zero_runs();
  j["m"] = s.expanded.m();
  j["total_length"] = s.expanded.total_length();
  j["r"] = z.r;
  j["r1"] = z.r1;
  j["r2"] = z.r2;
  return j;
}

std::string header_text(const LoadedSet& s) {
  std::ostringstream o;
  o << "patterns (" << s.original.size() << "): " << s.original.display_str() << "\n";
  if (s.was_extended) {
    o << "expanded (" << s.expanded.size() << "): " << s.expanded.display_str()
      << "\n";
  }
  const cc::ZeroRunParams& z = s.expanded.zero_runs();
  o << "window m = " << s.expanded.m() << ", total length M = "
    << s.expanded.total_length() << ", zero runs r = " << z.r << ", r1 = "
    << z.r1 << ", r2 = " << z.r2 << "\n";
  return o.str();
}

void finish(const Options& opt, const std::string& command, const LoadedSet* s,
            json result, const std::string& text, double seconds) {
  if (opt.as_json) {
    json rep;
    rep["config"] = config_json(command, opt);
    if (s != nullptr) rep["input"] = set_json(*s);
    rep["result"] = std::move(result);
    rep["wall_seconds"] = real15(seconds);
    emit(opt, rep.dump(2) + "\n");
  } else {
    emit(opt, text);
  }
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------- analyze

int run_analyze(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  bool positive = cc::positivity::decide_positive_extended(s.original);
  json result;
  std::ostringstream text;
  text << header_text(s);
  result["positive"] = positive;
  if (positive) {
    double floor = cc::bounds::positive_floor(s.expanded);
    result["capacity_floor"] = real15(floor);
    text << "capacity: positive, at least " << fmt15(floor)
         << " (= 1/(2M+m))\n";
  } else {
    std::int64_t bound = cc::bounds::zero_capacity_code_bound(s.expanded);
    result["max_code_size"] = bound;
    text << "capacity: zero, code sizes bounded by 2^(r1+r2) = " << bound
         << "\n";
  }
  if (opt.eps > 0.0) {
    int n = cc::bounds::n_for_accuracy(s.expanded, opt.eps);
    result["n_for_accuracy"] = n;
    text << "bracket width <= " << fmt15(opt.eps)
         << " needs exhaustive counts at n = " << n << "\n";
  }
  finish(opt, "analyze", &s, result, text.str(), timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ delta

int run_delta(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  if (opt.n < 1) throw std::invalid_argument("delta needs --n >= 1");
  std::uint64_t budget = opt.budget > 0 ? opt.budget : 100'000'000;
  cc::brute::MaxCodeResult r = cc::brute::max_code(opt.n, s.expanded, budget);
  json result;
  result["n"] = opt.n;
  result["delta_n"] = r.size;
  result["nodes"] = r.nodes;
  std::vector<std::string> words;
  for (const cc::BinWord& w : r.witness.words) words.push_back(w.str());
  result["witness"] = words;
  std::ostringstream text;
  text << header_text(s);
  text << "delta_" << opt.n << " = " << r.size << " (search nodes: " << r.nodes
       << ")\nwitness:";
  for (const std::string& w : words) text << " " << w;
  text << "\n";
  finish(opt, "delta", &s, result, text.str(), timer.seconds());
  return 0;
}

// ----------------------------------------------------------------- bounds

json bracket_json(const cc::bounds::CapacityBracket& b) {
  json j;
  j["n"] = b.n;
  j["delta_n"] = b.delta_n;
  j["lower"] = real15(b.lower);
  j["upper"] = real15(b.upper);
  j["raw_lower"] = real15(b.raw_lower);
  j["raw_upper"] = real15(b.raw_upper);
  return j;
}

int run_bounds(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  std::uint64_t budget = opt.budget > 0 ? opt.budget : 100'000'000;
  const cc::ZeroRunParams& z = s.expanded.zero_runs();
  int n_min = std::max(1, z.r1 + z.r2);

  if (opt.n > 0) {
    cc::brute::MaxCodeResult r = cc::brute::max_code(opt.n, s.expanded, budget);
    cc::bounds::CapacityBracket b =
        cc::bounds::capacity_bracket(opt.n, r.size, s.expanded);
    json result = bracket_json(b);
    std::ostringstream text;
    text << header_text(s);
    text << "n = " << b.n << ", delta_n = " << b.delta_n << "\ncapacity in ["
         << fmt15(b.lower) << ", " << fmt15(b.upper) << "]\n";
    finish(opt, "bounds", &s, result, text.str(), timer.seconds());
    return 0;
  }

  // Sweep mode emits CSV rows n, delta_n, lower, upper.
  int n_max = opt.n_max > 0 ? opt.n_max : 8;
  if (n_max < n_min) {
    throw std::invalid_argument("bounds: --n-max below r1+r2, nothing to sweep");
  }
  std::vector<cc::bounds::CapacityBracket> rows;
  for (int n = n_min; n <= n_max; ++n) {
    cc::brute::MaxCodeResult r = cc::brute::max_code(n, s.expanded, budget);
    rows.push_back(cc::bounds::capacity_bracket(n, r.size, s.expanded));
  }
  if (opt.as_json) {
    json result = json::array();
    for (const auto& b : rows) result.push_back(bracket_json(b));
    finish(opt, "bounds", &s, result, "", timer.seconds());
  } else {
    std::ostringstream csv;
    csv << "n,delta_n,lower,upper\n";
    for (const auto& b : rows) {
      csv << b.n << "," << b.delta_n << "," << fmt15(b.lower) << ","
          << fmt15(b.upper) << "\n";
    }
    emit(opt, csv.str());
  }
  return 0;
}

// ------------------------------------------------------------- positivity

int run_positivity(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  bool positive = cc::positivity::decide_positive(s.expanded);
  json result;
  result["positive"] = positive;
  std::ostringstream text;
  text << header_text(s);
  if (positive) {
    std::optional<cc::DiffWord> w = cc::positivity::shortest_admissible(s.expanded);
    if (!w) throw cc::invariant_violation("positive capacity but no witness word");
    result["shortest_word"] = cc::to_string(*w);
    result["length"] = static_cast<int>(w->size());
    text << "capacity: positive\nshortest admissible word: " << cc::to_string(*w)
         << " (length " << w->size() << ")\n";
  } else {
    std::int64_t bound = cc::bounds::zero_capacity_code_bound(s.expanded);
    result["max_code_size"] = bound;
    text << "capacity: zero\nno admissible word; code sizes bounded by 2^(r1+r2) = "
         << bound << "\n";
  }
  finish(opt, "positivity", &s, result, text.str(), timer.seconds());
  return 0;
}

// ----------------------------------------------------------- shortest-word

int run_shortest_word(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  // Default search horizon: the automaton argument guarantees any witness
  // fits in twice the total pattern length plus twice the window.
  int horizon = opt.n_max > 0
                    ? opt.n_max
                    : 2 * s.expanded.total_length() + 2 * s.expanded.m();
  std::optional<cc::DiffWord> w =
      cc::brute::admissible_word_search(s.expanded, horizon);
  json result;
  result["max_length_searched"] = horizon;
  std::ostringstream text;
  text << header_text(s);
  if (w) {
    result["word"] = cc::to_string(*w);
    result["length"] = static_cast<int>(w->size());
    text << "shortest admissible word: " << cc::to_string(*w) << " (length "
         << w->size() << ")\n";
  } else {
    result["word"] = nullptr;
    text << "no admissible word of length <= " << horizon << "\n";
  }
  finish(opt, "shortest-word", &s, result, text.str(), timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ sigma

int run_sigma(const Options& opt) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  cc::transfer::TransferFamily fam = cc::transfer::build_sigma(s.expanded);
  // Never emit a family that disagrees with the exhaustive code counts.
  if (!cc::transfer::validate_family(fam, s.expanded, 3)) {
    throw cc::invariant_violation(
        "transfer family failed the exhaustive self-check at n <= 3");
  }
  json result;
  result["m"] = fam.m;
  result["states"] = fam.states;
  result["family_size"] = fam.size();
  result["self_check_n"] = 3;
  json mats = json::array();
  for (int i = 0; i < fam.size(); ++i) {
    json entry;
    std::vector<std::string> edges;
    for (const cc::BinWord& e : fam.edge_sets[static_cast<std::size_t>(i)]) {
      edges.push_back(e.str());
    }
    entry["edges"] = edges;
    std::vector<std::vector<std::int64_t>> rows;
    for (int r = 0; r < fam.states; ++r) {
      std::vector<std::int64_t> row;
      for (int c = 0; c < fam.states; ++c) {
        row.push_back(fam.matrices[static_cast<std::size_t>(i)](r, c));
      }
      rows.push_back(std::move(row));
    }
    entry["matrix"] = rows;
    mats.push_back(std::move(entry));
  }
  result["matrices"] = std::move(mats);
  std::ostringstream text;
  text << header_text(s);
  text << "states = " << fam.states << ", family size = " << fam.size()
       << ", self-check at n <= 3: ok\n";
  for (int i = 0; i < fam.size(); ++i) {
    text << "matrix " << i << ", edges {";
    const auto& es = fam.edge_sets[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < es.size(); ++k) {
      text << (k ? ", " : "") << es[k].str();
    }
    text << "}\n";
    for (int r = 0; r < fam.states; ++r) {
      text << " ";
      for (int c = 0; c < fam.states; ++c) {
        text << " " << fam.matrices[static_cast<std::size_t>(i)](r, c);
      }
      text << "\n";
    }
  }
  finish(opt, "sigma", &s, result, text.str(), timer.seconds());
  return 0;
}

// ------------------------------------------------------------ jsr/certify

json growth_json(const cc::jsr::JsrBracket& g) {
  json j;
  j["lower"] = real15(g.lower);
  j["upper"] = real15(g.upper);
  j["best_product"] = g.best_product;
  j["certified"] = g.certified;
  j["partial"] = g.partial;
  return j;
}

int run_capacity(const Options& opt, cc::jsr::CapacityMode mode) {
  Timer timer;
  LoadedSet s = load_patterns(opt);
  cc::jsr::CapacityOptions copt;
  if (opt.eps > 0.0) copt.eps = opt.eps;
  if (opt.n_max > 0) copt.scan_n_max = opt.n_max;
  if (opt.budget > 0) copt.jsr.product_budget = opt.budget;
  copt.jsr.threads = opt.resolved_threads();
  cc::jsr::CapacityReport rep = cc::jsr::capacity(s.expanded, mode, copt);

  json result;
  result["positive"] = rep.positive;
  result["certified"] = rep.certified;
  result["partial"] = rep.partial;
  result["capacity_lower"] = real15(rep.lower);
  result["capacity_upper"] = real15(rep.upper);
  if (rep.exact) result["capacity_exact"] = real15(*rep.exact);
  result["growth"] = growth_json(rep.growth);
  result["family_size"] = rep.family_size;
  result["states"] = rep.states;
  if (rep.certificate) {
    json c;
    c["lambda"] = real15(rep.certificate->lambda);
    c["product"] = rep.certificate->product;
    c["vertices"] = rep.certificate->polytope.count();
    c["slack"] = real15(rep.certificate->slack);
    c["margin"] = real15(rep.certificate->margin);
    result["certificate"] = std::move(c);
  }
  if (rep.confirmation) {
    result["confirmation"] = bracket_json(*rep.confirmation);
  }

  std::ostringstream text;
  text << header_text(s);
  if (!rep.positive) {
    text << "capacity: zero (certified by the positivity decision)\n";
  } else {
    text << "growth rate in [" << fmt15(rep.growth.lower) << ", "
         << fmt15(rep.growth.upper) << "]"
         << (rep.growth.certified ? " (certified upper bound)" : "") << "\n";
    text << "capacity in [" << fmt15(rep.lower) << ", " << fmt15(rep.upper)
         << "]\n";
    if (rep.exact) {
      text << "certified capacity = " << fmt15(*rep.exact) << " = log2("
           << fmt15(rep.certificate ? rep.certificate->lambda
                                    : std::exp2(*rep.exact))
           << ")\n";
    }
    if (rep.certificate) {
      text << "certificate: product [";
      for (std::size_t k = 0; k < rep.certificate->product.size(); ++k) {
        text << (k ? " " : "") << rep.certificate->product[k];
      }
      text << "], " << rep.certificate->polytope.count()
           << " polytope vertices, margin " << fmt15(rep.certificate->margin)
           << "\n";
    }
    if (rep.partial) {
      text << "partial: the requested accuracy was not reached\n";
    }
    text << "sigma: " << rep.family_size << " matrices on " << rep.states
         << " states\n";
  }
  if (rep.confirmation) {
    text << "confirmation at n = " << rep.confirmation_n << ": delta = "
         << rep.confirmation->delta_n << ", capacity in ["
         << fmt15(rep.confirmation->lower) << ", "
         << fmt15(rep.confirmation->upper) << "]\n";
  }
  text << "wall time: " << fmt15(timer.seconds()) << " s\n";
  finish(opt, mode == cc::jsr::CapacityMode::certify ? "certify" : "jsr", &s,
         result, text.str(), timer.seconds());
  return 0;
}

// --------------------------------------------------------- reduce-nae3sat

int run_reduce(const Options& opt) {
  Timer timer;
  if (opt.cnf_path.empty()) {
    throw std::invalid_argument("reduce-nae3sat needs --cnf FILE");
  }
  std::ifstream f(opt.cnf_path);
  if (!f) throw std::invalid_argument("cannot open CNF file: " + opt.cnf_path);
  std::stringstream buf;
  buf << f.rdbuf();
  cc::positivity::Nae3SatInstance inst = cc::positivity::parse_dimacs(buf.str());
  cc::PatternSet gadget = cc::positivity::reduce_nae3sat(inst);

  bool brute_sat = cc::positivity::nae3sat_brute(inst);
  bool reduced_positive = cc::positivity::decide_positive_extended(gadget);
  if (brute_sat != reduced_positive) {
    throw cc::invariant_violation(
        "reduction disagrees with the exhaustive NAE-3SAT answer");
  }

  json result;
  result["num_vars"] = inst.num_vars;
  result["num_clauses"] = static_cast<int>(inst.clauses.size());
  std::vector<std::string> pats;
  for (const cc::Pattern& p : gadget.patterns()) pats.push_back(p.str());
  result["patterns"] = pats;
  result["nae_satisfiable"] = brute_sat;
  result["positivity"] = reduced_positive;

  std::ostringstream text;
  text << "instance: " << inst.num_vars << " variables, " << inst.clauses.size()
       << " clauses\npatterns (" << gadget.size() << "):\n" << gadget.str();
  text << "oracle check: NAE " << (brute_sat ? "satisfiable" : "unsatisfiable")
       << ", reduced set " << (reduced_positive ? "positive" : "zero")
       << " capacity -> agree\n";

  if (!opt.out_path.empty()) {
    // --out receives the pattern file; the report goes to stdout.
    std::ofstream pf(opt.out_path);
    if (!pf) throw std::invalid_argument("cannot open output file: " + opt.out_path);
    pf << gadget.str();
    text << "wrote " << opt.out_path << "\n";
  }
  if (opt.as_json) {
    json rep;
    rep["config"] = config_json("reduce-nae3sat", opt);
    rep["result"] = std::move(result);
    rep["wall_seconds"] = real15(timer.seconds());
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity toolkit for difference-pattern-avoiding binary codes"};
  app.require_subcommand(1);
  Options opt;

  auto add_patterns = [&](CLI::App* sub) {
    sub->add_option("--patterns", opt.patterns_path, "pattern set file");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.as_json, "machine-readable JSON report");
    sub->add_option("--out", opt.out_path, "write the report to a file");
    sub->add_option("--threads", opt.threads, "worker threads (default: all cores)");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "set parameters, positivity, capacity floor");
  add_patterns(analyze);
  add_common(analyze);
  analyze->add_option("--eps", opt.eps, "also report the n needed for this bracket width");

  CLI::App* delta = app.add_subcommand(
      "delta", "exhaustive maximum code size at one length");
  add_patterns(delta);
  add_common(delta);
  delta->add_option("--n", opt.n, "word length")->required();
  delta->add_option("--budget", opt.budget, "branch-and-bound node budget");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "capacity bracket from exhaustive code sizes (CSV sweep)");
  add_patterns(bounds);
  add_common(bounds);
  bounds->add_option("--n", opt.n, "single length (report instead of sweep)");
  bounds->add_option("--n-max", opt.n_max, "sweep up to this length (default 8)");
  bounds->add_option("--budget", opt.budget, "branch-and-bound node budget");

  CLI::App* positivity = app.add_subcommand(
      "positivity", "decide positive capacity, print the shortest witness");
  add_patterns(positivity);
  add_common(positivity);

  CLI::App* shortest = app.add_subcommand(
      "shortest-word", "exhaustive shortest admissible word");
  add_patterns(shortest);
  add_common(shortest);
  shortest->add_option("--n-max", opt.n_max, "search horizon (default 2M+2m)");

  CLI::App* sigma = app.add_subcommand(
      "sigma", "transfer matrix family with exhaustive self-check");
  add_patterns(sigma);
  add_common(sigma);

  CLI::App* jsr = app.add_subcommand(
      "jsr", "two-sided capacity bracket via the matrix family");
  add_patterns(jsr);
  add_common(jsr);
  jsr->add_option("--eps", opt.eps, "target bracket width in bits (default 0.01)");
  jsr->add_option("--n-max", opt.n_max, "product scan depth (default 10)");
  jsr->add_option("--budget", opt.budget, "product scan budget");

  CLI::App* certify = app.add_subcommand(
      "certify", "exact capacity with an invariant-polytope certificate");
  add_patterns(certify);
  add_common(certify);
  certify->add_option("--n-max", opt.n_max, "product scan depth (default 10)");
  certify->add_option("--budget", opt.budget, "product scan budget");

  CLI::App* reduce = app.add_subcommand(
      "reduce-nae3sat", "pattern-set gadget for a NAE-3SAT instance");
  reduce->add_option("--cnf", opt.cnf_path, "DIMACS CNF file")->required();
  reduce->add_option("--out", opt.out_path, "write the pattern file here");
  reduce->add_flag("--json", opt.as_json, "machine-readable JSON report");
  reduce->add_option("--threads", opt.threads, "worker threads (unused)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return run_analyze(opt);
    if (delta->parsed()) return run_delta(opt);
    if (bounds->parsed()) return run_bounds(opt);
    if (positivity->parsed()) return run_positivity(opt);
    if (shortest->parsed()) return run_shortest_word(opt);
    if (sigma->parsed()) return run_sigma(opt);
    if (jsr->parsed()) return run_capacity(opt, cc::jsr::CapacityMode::bracket);
    if (certify->parsed()) return run_capacity(opt, cc::jsr::CapacityMode::certify);
    if (reduce->parsed()) return run_reduce(opt);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const cc::budget_exhausted& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const cc::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const cc::numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
