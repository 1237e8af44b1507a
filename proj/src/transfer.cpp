#include "capcodes/transfer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "capcodes/brute.hpp"
#include "capcodes/errors.hpp"

namespace capcodes::transfer {

BinWord edge_word(const DeBruijnEdge& e) {
  return BinWord{(e.source.bits << 1) | static_cast<std::uint32_t>(e.bit & 1),
                 e.source.len + 1};
}

BinWord edge_target(const DeBruijnEdge& e) {
  const int m = e.source.len + 1;
  const std::uint32_t mask = (m >= 2) ? ((1u << (m - 1)) - 1) : 0u;
  return BinWord{edge_word(e).bits & mask, m - 1};
}

bool edges_compatible(const BinWord& e1, const BinWord& e2,
                      const PatternSet& d) {
  if (d.extended()) {
    throw std::invalid_argument("edges_compatible: expand wildcard set first");
  }
  if (d.has_all_zero_pattern()) {
    throw std::invalid_argument(
        "edges_compatible: all-zero patterns make edges self-incompatible");
  }
  return avoids(difference(e1, e2), d.symmetrized());
}

namespace {

// Fixed-capacity bitset for the clique enumeration on up to 2^10 edges.
struct EdgeBits {
  std::vector<std::uint64_t> w;

  explicit EdgeBits(int bits) : w(static_cast<std::size_t>((bits + 63) / 64), 0) {}
  bool test(int i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u; }
  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63); }
  void reset(int i) { w[static_cast<std::size_t>(i >> 6)] &= ~(1ull << (i & 63)); }
  bool empty() const {
    for (std::uint64_t x : w) {
      if (x) return false;
    }
    return true;
  }
  int count() const {
    int total = 0;
    for (std::uint64_t x : w) total += std::popcount(x);
    return total;
  }
};

EdgeBits intersect(const EdgeBits& a, const EdgeBits& b) {
  EdgeBits out = a;
  for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] &= b.w[i];
  return out;
}

int intersect_count(const EdgeBits& a, const EdgeBits& b) {
  int total = 0;
  for (std::size_t i = 0; i < a.w.size(); ++i) {
    total += std::popcount(a.w[i] & b.w[i]);
  }
  return total;
}

// Enumerates all maximal cliques of the compatibility graph (pivoting
// Bron-Kerbosch).  The clique count is capped to keep degenerate inputs from
// running away.
class CliqueEnumerator {
 public:
  CliqueEnumerator(const std::vector<EdgeBits>& adj, std::uint64_t clique_cap)
      : adj_(adj), cap_(clique_cap) {}

  std::vector<std::vector<int>> run() {
    const int v_count = static_cast<int>(adj_.size());
    EdgeBits p(v_count), x(v_count);
    for (int v = 0; v < v_count; ++v) p.set(v);
    std::vector<int> r;
    extend(r, p, x);
    return std::move(cliques_);
  }

 private:
  void extend(std::vector<int>& r, EdgeBits p, EdgeBits x) {
    if (p.empty() && x.empty()) {
      if (cliques_.size() >= cap_) {
        throw budget_exhausted("build_sigma: too many maximal cliques");
      }
      cliques_.push_back(r);
      return;
    }
    const int v_count = static_cast<int>(adj_.size());
    int pivot = -1, pivot_score = -1;
    for (int u = 0; u < v_count; ++u) {
      if (!p.test(u) && !x.test(u)) continue;
      const int score = intersect_count(p, adj_[static_cast<std::size_t>(u)]);
      if (score > pivot_score) {
        pivot_score = score;
        pivot = u;
      }
    }
    for (int v = 0; v < v_count; ++v) {
      if (!p.test(v) || adj_[static_cast<std::size_t>(pivot)].test(v)) continue;
      r.push_back(v);
      extend(r, intersect(p, adj_[static_cast<std::size_t>(v)]),
             intersect(x, adj_[static_cast<std::size_t>(v)]));
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  const std::vector<EdgeBits>& adj_;
  std::uint64_t cap_;
  std::vector<std::vector<int>> cliques_;
};

}  // namespace

TransferFamily build_sigma(const PatternSet& d, int m_cap) {
  if (d.extended()) {
    throw std::invalid_argument("build_sigma: expand wildcard set first");
  }
  if (d.has_all_zero_pattern()) {
    throw std::invalid_argument(
        "build_sigma: all-zero patterns are not representable (use the "
        "exhaustive oracle for their code sizes)");
  }
  if (m_cap < 1 || m_cap > 10) {
    throw std::invalid_argument("build_sigma: m_cap out of range");
  }
  const int m = d.m();
  if (m > m_cap) {
    throw std::invalid_argument("build_sigma: window length exceeds cap");
  }

  const PatternSet ds = d.symmetrized();
  const int edge_count = 1 << m;
  std::vector<EdgeBits> adj(static_cast<std::size_t>(edge_count),
                            EdgeBits(edge_count));
  for (int a = 0; a < edge_count; ++a) {
    for (int b = a + 1; b < edge_count; ++b) {
      if (avoids(difference(BinWord{static_cast<std::uint32_t>(a), m},
                            BinWord{static_cast<std::uint32_t>(b), m}),
                 ds)) {
        adj[static_cast<std::size_t>(a)].set(b);
        adj[static_cast<std::size_t>(b)].set(a);
      }
    }
  }

  std::vector<std::vector<int>> cliques =
      CliqueEnumerator(adj, 1u << 20).run();
  for (std::vector<int>& c : cliques) std::sort(c.begin(), c.end());
  std::sort(cliques.begin(), cliques.end());

  TransferFamily fam;
  fam.m = m;
  fam.states = 1 << (m - 1);
  const std::uint32_t target_mask =
      (m >= 2) ? ((1u << (m - 1)) - 1) : 0u;
  for (const std::vector<int>& clique : cliques) {
    BinMatrix a = BinMatrix::Zero(fam.states, fam.states);
    std::vector<BinWord> words;
    for (int w : clique) {
      const auto source = static_cast<Eigen::Index>(w >> 1);
      const auto target = static_cast<Eigen::Index>(
          static_cast<std::uint32_t>(w) & target_mask);
      if (a(source, target) != 0) {
        throw invariant_violation(
            "build_sigma: two edges of one clique share a matrix entry");
      }
      a(source, target) = 1;
      words.push_back(BinWord{static_cast<std::uint32_t>(w), m});
    }
    bool duplicate = false;
    for (const BinMatrix& seen : fam.matrices) {
      if (seen == a) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      fam.matrices.push_back(std::move(a));
      fam.edge_sets.push_back(std::move(words));
    }
  }
  if (fam.matrices.empty()) {
    throw invariant_violation("build_sigma: empty clique enumeration");
  }
  return fam;
}

std::int64_t entry_sum(const BinMatrix& a) { return a.sum(); }

namespace {

bool dominated(const BinMatrix& a, const BinMatrix& b) {  // a <= b entrywise
  return (a.array() <= b.array()).all();
}

// Keeps only entrywise-maximal products.  Dropping a dominated product never
// changes any later maximum entry sum: multiplication by nonnegative
// matrices preserves entrywise order on both sides.
void insert_maximal(std::vector<BinMatrix>& frontier, BinMatrix&& candidate) {
  for (const BinMatrix& kept : frontier) {
    if (dominated(candidate, kept)) return;
  }
  std::erase_if(frontier,
                [&](const BinMatrix& kept) { return dominated(kept, candidate); });
  frontier.push_back(std::move(candidate));
}

}  // namespace

std::vector<std::int64_t> product_norm_delta_sweep(const TransferFamily& fam,
                                                   int n_max,
                                                   std::uint64_t product_budget) {
  if (n_max < 1 || n_max > 50) {
    throw std::invalid_argument("product_norm_delta_sweep: n_max out of range");
  }
  std::vector<std::int64_t> deltas;
  std::vector<BinMatrix> frontier;
  for (const BinMatrix& a : fam.matrices) {
    BinMatrix copy = a;
    insert_maximal(frontier, std::move(copy));
  }
  std::uint64_t formed = fam.matrices.size();
  for (int n = 1; n <= n_max; ++n) {
    std::int64_t best = 0;
    for (const BinMatrix& p : frontier) best = std::max(best, entry_sum(p));
    deltas.push_back(best);
    if (n == n_max) break;
    formed += frontier.size() * fam.matrices.size();
    if (formed > product_budget) {
      throw budget_exhausted("product_norm_delta_sweep: product budget exceeded");
    }
    std::vector<BinMatrix> next;
    for (const BinMatrix& p : frontier) {
      for (const BinMatrix& a : fam.matrices) {
        insert_maximal(next, p * a);
      }
    }
    frontier = std::move(next);
  }
  return deltas;
}

std::int64_t product_norm_delta(const TransferFamily& fam, int n,
                                std::uint64_t product_budget) {
  return product_norm_delta_sweep(fam, n, product_budget).back();
}

bool validate_family(const TransferFamily& fam, const PatternSet& d, int n_max,
                     std::uint64_t node_budget) {
  const std::vector<std::int64_t> deltas =
      product_norm_delta_sweep(fam, n_max);
  for (int n = 1; n <= n_max; ++n) {
    const brute::MaxCodeResult oracle =
        brute::max_code(fam.m - 1 + n, d, node_budget);
    if (oracle.size != deltas[static_cast<std::size_t>(n - 1)]) return false;
  }
  return true;
}

}  // namespace capcodes::transfer
