#include "capcodes/brute.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <deque>
#include <stdexcept>

#include "capcodes/errors.hpp"

namespace capcodes::brute {

bool verify_code(const Code& c, const PatternSet& d) {
  for (const BinWord& u : c.words) {
    if (u.len != c.length) return false;
    for (const BinWord& v : c.words) {
      if (u == v) continue;
      if (!avoids(difference(u, v), d)) return false;
    }
  }
  return true;
}

namespace {

// Dense symmetric adjacency over vertices 0..n-1, one bit row per vertex.
struct AdjacencyMatrix {
  int n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> rows;

  explicit AdjacencyMatrix(int vertices)
      : n(vertices),
        words((static_cast<std::size_t>(vertices) + 63) / 64),
        rows(static_cast<std::size_t>(vertices) * words, 0) {}

  bool at(int u, int v) const {
    return (rows[static_cast<std::size_t>(u) * words + (v >> 6)] >>
            (v & 63)) & 1u;
  }
  void set_pair(int u, int v) {
    rows[static_cast<std::size_t>(u) * words + (v >> 6)] |= 1ull << (v & 63);
    rows[static_cast<std::size_t>(v) * words + (u >> 6)] |= 1ull << (u & 63);
  }
  std::uint64_t edge_count() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : rows) total += static_cast<std::uint64_t>(std::popcount(w));
    return total / 2;
  }
};

// Compatibility graph on all words of length n: u ~ v when difference(u, v)
// avoids the symmetrized set.  Patterns longer than n cannot occur and are
// dropped.  Every occurrence of a remaining pattern lies inside some window
// of w = min(m, n) consecutive positions, so pair checks reduce to a
// precomputed window-pair table when w is small.
AdjacencyMatrix build_compatibility(int n, const PatternSet& ds) {
  const int N = 1 << n;
  AdjacencyMatrix g(N);

  std::vector<Pattern> fitting;
  for (const Pattern& p : ds.patterns()) {
    if (p.size() <= n) fitting.push_back(p);
  }
  if (fitting.empty()) {  // nothing can occur: complete graph
    for (int u = 0; u < N; ++u) {
      for (int v = u + 1; v < N; ++v) g.set_pair(u, v);
    }
    return g;
  }
  const PatternSet active(std::move(fitting));
  const int w = std::min(active.m(), n);

  if (w <= 8) {
    const int WN = 1 << w;
    std::vector<std::uint8_t> ok(static_cast<std::size_t>(WN) * WN);
    for (int a = 0; a < WN; ++a) {
      for (int b = 0; b < WN; ++b) {
        ok[static_cast<std::size_t>(a) * WN + b] =
            avoids(difference(BinWord{static_cast<std::uint32_t>(a), w},
                              BinWord{static_cast<std::uint32_t>(b), w}),
                   active);
      }
    }
    const std::uint32_t mask = static_cast<std::uint32_t>(WN - 1);
    for (int u = 0; u < N; ++u) {
      for (int v = u + 1; v < N; ++v) {
        bool compatible = true;
        for (int pos = 0; pos + w <= n; ++pos) {
          const int shift = n - w - pos;
          const std::uint32_t a = (static_cast<std::uint32_t>(u) >> shift) & mask;
          const std::uint32_t b = (static_cast<std::uint32_t>(v) >> shift) & mask;
          if (!ok[static_cast<std::size_t>(a) * WN + b]) {
            compatible = false;
            break;
          }
        }
        if (compatible) g.set_pair(u, v);
      }
    }
  } else {
    for (int u = 0; u < N; ++u) {
      for (int v = u + 1; v < N; ++v) {
        if (avoids(difference(BinWord{static_cast<std::uint32_t>(u), n},
                              BinWord{static_cast<std::uint32_t>(v), n}),
                   active)) {
          g.set_pair(u, v);
        }
      }
    }
  }
  return g;
}

std::vector<int> degeneracy_order(const AdjacencyMatrix& g) {
  const int n = g.n;
  std::vector<int> deg(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v != u && g.at(u, v)) ++deg[u];
    }
  }
  std::vector<char> removed(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int u = 0; u < n; ++u) {
      if (!removed[u] && (best < 0 || deg[u] < deg[best])) best = u;
    }
    removed[best] = 1;
    order.push_back(best);
    for (int v = 0; v < n; ++v) {
      if (!removed[v] && g.at(best, v)) --deg[v];
    }
  }
  return order;
}

// Exact maximum clique, branch and bound with greedy coloring bounds
// (candidates in one color class are pairwise non-adjacent, so a clique
// takes at most one of them).
class CliqueSearch {
 public:
  CliqueSearch(const AdjacencyMatrix& g, std::uint64_t budget)
      : g_(g), budget_(budget) {}

  std::vector<int> run(std::uint64_t& nodes) {
    std::vector<int> order = degeneracy_order(g_);
    std::reverse(order.begin(), order.end());  // densest core first
    expand(order);
    nodes = nodes_;
    return best_;
  }

 private:
  void expand(const std::vector<int>& candidates) {
    if (++nodes_ > budget_) {
      throw budget_exhausted("max_code: node budget exceeded");
    }
    if (candidates.empty()) {
      if (cur_.size() > best_.size()) best_ = cur_;
      return;
    }
    std::vector<std::vector<int>> classes;
    for (int v : candidates) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool conflict = false;
        for (int u : classes[c]) {
          if (g_.at(u, v)) {
            conflict = true;
            break;
          }
        }
        if (!conflict) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    std::vector<int> colored, color;
    colored.reserve(candidates.size());
    color.reserve(candidates.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (int v : classes[c]) {
        colored.push_back(v);
        color.push_back(static_cast<int>(c) + 1);
      }
    }
    for (int i = static_cast<int>(colored.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(cur_.size()) + color[static_cast<std::size_t>(i)] <=
          static_cast<int>(best_.size())) {
        return;
      }
      const int v = colored[static_cast<std::size_t>(i)];
      std::vector<int> next;
      for (int j = 0; j < i; ++j) {
        if (g_.at(colored[static_cast<std::size_t>(j)], v)) {
          next.push_back(colored[static_cast<std::size_t>(j)]);
        }
      }
      cur_.push_back(v);
      if (next.empty()) {
        if (cur_.size() > best_.size()) best_ = cur_;
      } else {
        expand(next);
      }
      cur_.pop_back();
    }
  }

  const AdjacencyMatrix& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> cur_, best_;
};

// Exact maximum independent set on the complement, used when the
// compatibility graph is dense.  Vertices of degree <= 1 are always taken,
// degree-2 residues are disjoint cycles and solved directly, otherwise the
// search branches on a maximum-degree vertex with the matching bound
// alpha <= |alive| - |matching|.
class IndependentSetSearch {
 public:
  IndependentSetSearch(const AdjacencyMatrix& compat, std::uint64_t budget)
      : n_(compat.n), budget_(budget), adj_(static_cast<std::size_t>(n_)) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (v != u && !compat.at(u, v)) adj_[static_cast<std::size_t>(u)].push_back(v);
      }
    }
  }

  std::vector<int> run(std::uint64_t& nodes) {
    seed_greedy();
    std::vector<char> alive(static_cast<std::size_t>(n_), 1);
    solve(alive, n_);
    nodes = nodes_;
    return best_;
  }

 private:
  void seed_greedy() {
    std::vector<int> order(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return adj_[static_cast<std::size_t>(a)].size() <
             adj_[static_cast<std::size_t>(b)].size();
    });
    std::vector<char> blocked(static_cast<std::size_t>(n_), 0);
    for (int v : order) {
      if (blocked[static_cast<std::size_t>(v)]) continue;
      best_.push_back(v);
      for (int u : adj_[static_cast<std::size_t>(v)]) {
        blocked[static_cast<std::size_t>(u)] = 1;
      }
    }
  }

  void take(std::vector<char>& alive, std::vector<int>& deg, int v,
            int& alive_count, std::vector<int>& pending) {
    cur_.push_back(v);
    alive[static_cast<std::size_t>(v)] = 0;
    --alive_count;
    for (int u : adj_[static_cast<std::size_t>(v)]) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      alive[static_cast<std::size_t>(u)] = 0;
      --alive_count;
      for (int w : adj_[static_cast<std::size_t>(u)]) {
        if (alive[static_cast<std::size_t>(w)]) {
          if (--deg[static_cast<std::size_t>(w)] <= 1) pending.push_back(w);
        }
      }
    }
  }

  void solve(std::vector<char> alive, int alive_count) {
    if (++nodes_ > budget_) {
      throw budget_exhausted("max_code: node budget exceeded");
    }
    const std::size_t cur_mark = cur_.size();
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    std::vector<int> pending;
    for (int v = 0; v < n_; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      int d = 0;
      for (int u : adj_[static_cast<std::size_t>(v)]) {
        d += alive[static_cast<std::size_t>(u)];
      }
      deg[static_cast<std::size_t>(v)] = d;
      if (d <= 1) pending.push_back(v);
    }
    while (!pending.empty()) {
      const int v = pending.back();
      pending.pop_back();
      if (!alive[static_cast<std::size_t>(v)] ||
          deg[static_cast<std::size_t>(v)] > 1) {
        continue;
      }
      take(alive, deg, v, alive_count, pending);
    }
    if (alive_count == 0) {
      if (cur_.size() > best_.size()) best_ = cur_;
      cur_.resize(cur_mark);
      return;
    }

    int branch = -1;
    for (int v = 0; v < n_; ++v) {
      if (alive[static_cast<std::size_t>(v)] &&
          (branch < 0 || deg[static_cast<std::size_t>(v)] >
                             deg[static_cast<std::size_t>(branch)])) {
        branch = v;
      }
    }

    if (deg[static_cast<std::size_t>(branch)] <= 2) {
      // Every remaining vertex has degree exactly 2: disjoint cycles, take
      // alternate vertices around each one.
      std::vector<char> seen(static_cast<std::size_t>(n_), 0);
      for (int v = 0; v < n_; ++v) {
        if (!alive[static_cast<std::size_t>(v)] ||
            seen[static_cast<std::size_t>(v)]) {
          continue;
        }
        std::vector<int> cycle;
        int prev = -1, cursor = v;
        while (true) {
          seen[static_cast<std::size_t>(cursor)] = 1;
          cycle.push_back(cursor);
          int next = -1;
          for (int u : adj_[static_cast<std::size_t>(cursor)]) {
            if (alive[static_cast<std::size_t>(u)] && u != prev &&
                !seen[static_cast<std::size_t>(u)]) {
              next = u;
              break;
            }
          }
          if (next < 0) break;
          prev = cursor;
          cursor = next;
        }
        const std::size_t picks = cycle.size() / 2;
        for (std::size_t i = 0; i < picks; ++i) cur_.push_back(cycle[2 * i]);
      }
      if (cur_.size() > best_.size()) best_ = cur_;
      cur_.resize(cur_mark);
      return;
    }

    // Matching bound: each matched edge loses at least one endpoint.
    {
      std::vector<char> matched(static_cast<std::size_t>(n_), 0);
      int matching = 0;
      for (int v = 0; v < n_; ++v) {
        if (!alive[static_cast<std::size_t>(v)] ||
            matched[static_cast<std::size_t>(v)]) {
          continue;
        }
        for (int u : adj_[static_cast<std::size_t>(v)]) {
          if (alive[static_cast<std::size_t>(u)] &&
              !matched[static_cast<std::size_t>(u)]) {
            matched[static_cast<std::size_t>(v)] = 1;
            matched[static_cast<std::size_t>(u)] = 1;
            ++matching;
            break;
          }
        }
      }
      if (cur_.size() + static_cast<std::size_t>(alive_count - matching) <=
          best_.size()) {
        cur_.resize(cur_mark);
        return;
      }
    }

    {  // include branch
      std::vector<char> sub = alive;
      int count = alive_count - 1;
      sub[static_cast<std::size_t>(branch)] = 0;
      for (int u : adj_[static_cast<std::size_t>(branch)]) {
        if (sub[static_cast<std::size_t>(u)]) {
          sub[static_cast<std::size_t>(u)] = 0;
          --count;
        }
      }
      cur_.push_back(branch);
      solve(std::move(sub), count);
      cur_.pop_back();
    }
    {  // exclude branch
      std::vector<char> sub = std::move(alive);
      sub[static_cast<std::size_t>(branch)] = 0;
      solve(std::move(sub), alive_count - 1);
    }
    cur_.resize(cur_mark);
  }

  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> cur_, best_;
};

}  // namespace

MaxCodeResult max_code(int n, const PatternSet& d, std::uint64_t node_budget) {
  if (d.extended()) {
    throw std::invalid_argument("max_code: expand wildcard set first");
  }
  if (n < 1 || n > 14) {
    throw std::invalid_argument("max_code: n out of range for exhaustive search");
  }
  const AdjacencyMatrix g = build_compatibility(n, d.symmetrized());
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(g.n) * (static_cast<std::uint64_t>(g.n) - 1) / 2;

  MaxCodeResult result;
  std::vector<int> solution;
  if (2 * g.edge_count() >= pairs) {
    IndependentSetSearch search(g, node_budget);
    solution = search.run(result.nodes);
  } else {
    CliqueSearch search(g, node_budget);
    solution = search.run(result.nodes);
  }

  std::sort(solution.begin(), solution.end());
  result.size = static_cast<std::int64_t>(solution.size());
  result.witness.length = n;
  for (int v : solution) {
    result.witness.words.push_back(
        BinWord{static_cast<std::uint32_t>(v), n});
  }
  if (!verify_code(result.witness, d)) {
    throw invariant_violation("max_code: witness failed independent re-check");
  }
  return result;
}

Code block_code(int m, int k) {
  if (m < 2 || k < 1) {
    throw std::invalid_argument("block_code: need m >= 2 and k >= 1");
  }
  const int free_bits = (m - 1) * k;
  const int length = m * k;
  if (free_bits > 20 || length > BinWord::max_len) {
    throw std::invalid_argument("block_code: code too large to enumerate");
  }
  Code c;
  c.length = length;
  for (std::uint32_t t = 0; t < (1u << free_bits); ++t) {
    std::uint32_t bits = 0;
    int consumed = 0;
    for (int block = 0; block < k; ++block) {
      const std::uint32_t z =
          (t >> (free_bits - consumed - (m - 1))) & ((1u << (m - 1)) - 1);
      bits = (bits << (m - 1)) | z;  // m-1 free bits
      bits <<= 1;                    // fixed zero separator
      consumed += m - 1;
    }
    c.words.push_back(BinWord{bits, length});
  }
  return c;
}

std::optional<DiffWord> admissible_word_search(const PatternSet& d, int max_len) {
  if (d.extended()) {
    throw std::invalid_argument("admissible_word_search: expand wildcard set first");
  }
  const int m = d.m();
  if (m > 10 || max_len > 400) {
    throw std::invalid_argument("admissible_word_search: search space too large");
  }
  if (max_len < 2 * m) return std::nullopt;

  const PatternSet ds = d.symmetrized();
  // Any all-zero pattern occurs inside the mandatory 0^m prefix.
  if (ds.has_all_zero_pattern()) return std::nullopt;

  int window_count = 1;
  for (int i = 0; i < m; ++i) window_count *= 3;
  const int window_tail = window_count / 3;  // 3^(m-1)

  // bad[w]: some pattern of ds is a suffix of the m-symbol window w, i.e.
  // appending the last symbol of w completed a forbidden occurrence.
  std::vector<char> bad(static_cast<std::size_t>(window_count), 0);
  std::vector<Symbol> decoded(static_cast<std::size_t>(m));
  for (int w = 0; w < window_count; ++w) {
    int value = w;
    for (int i = m - 1; i >= 0; --i) {
      decoded[static_cast<std::size_t>(i)] = static_cast<Symbol>(value % 3);
      value /= 3;
    }
    for (const Pattern& p : ds.patterns()) {
      const int lp = p.size();
      bool hit = true;
      for (int i = 0; i < lp; ++i) {
        if (p.at(i) != decoded[static_cast<std::size_t>(m - lp + i)]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        bad[static_cast<std::size_t>(w)] = 1;
        break;
      }
    }
  }

  const auto encode = [&](const std::vector<Symbol>& syms) {
    int w = 0;
    for (Symbol s : syms) w = w * 3 + static_cast<int>(s);
    return w;
  };
  const int start = encode(std::vector<Symbol>(static_cast<std::size_t>(m),
                                               Symbol::zero));
  std::vector<Symbol> target_syms(static_cast<std::size_t>(m), Symbol::zero);
  target_syms[0] = Symbol::plus;
  const int target = encode(target_syms);

  // reach[k][w]: appending exactly k admissible symbols from window w can
  // end in the target window.
  const int max_extra = max_len - m;
  std::vector<std::vector<char>> reach(
      static_cast<std::size_t>(max_extra) + 1,
      std::vector<char>(static_cast<std::size_t>(window_count), 0));
  reach[0][static_cast<std::size_t>(target)] = 1;
  for (int k = 1; k <= max_extra; ++k) {
    for (int w = 0; w < window_count; ++w) {
      const int base = (w % window_tail) * 3;
      for (int s = 0; s < 3; ++s) {
        const int next = base + s;
        if (!bad[static_cast<std::size_t>(next)] &&
            reach[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(next)]) {
          reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] = 1;
          break;
        }
      }
    }
  }

  for (int extra = 1; extra <= max_extra; ++extra) {
    if (!reach[static_cast<std::size_t>(extra)][static_cast<std::size_t>(start)]) {
      continue;
    }
    DiffWord word(static_cast<std::size_t>(m), Symbol::zero);
    int w = start;
    for (int k = extra; k >= 1; --k) {
      const int base = (w % window_tail) * 3;
      for (int s = 0; s < 3; ++s) {
        const int next = base + s;
        if (!bad[static_cast<std::size_t>(next)] &&
            reach[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(next)]) {
          word.push_back(static_cast<Symbol>(s));
          w = next;
          break;
        }
      }
    }
    return word;
  }
  return std::nullopt;
}

}  // namespace capcodes::brute
