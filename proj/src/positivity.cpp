#include "capcodes/positivity.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "capcodes/errors.hpp"

namespace capcodes::positivity {

PatternAutomaton build_automaton(const PatternSet& p) {
  if (p.extended()) {
    throw std::invalid_argument("build_automaton: expand wildcard set first");
  }
  PatternAutomaton a;
  a.next.push_back({-1, -1, -1});
  a.fail.push_back(0);
  a.accept_id.push_back(-1);
  a.labels.push_back({});

  const std::vector<Pattern>& patterns = p.patterns();
  for (std::size_t id = 0; id < patterns.size(); ++id) {
    int state = 0;
    for (Symbol s : patterns[id].symbols()) {
      const int c = static_cast<int>(s);
      if (a.next[static_cast<std::size_t>(state)][c] < 0) {
        const int fresh = a.state_count();
        a.next[static_cast<std::size_t>(state)][c] = fresh;
        a.next.push_back({-1, -1, -1});
        a.fail.push_back(0);
        a.accept_id.push_back(-1);
        DiffWord label = a.labels[static_cast<std::size_t>(state)];
        label.push_back(s);
        a.labels.push_back(std::move(label));
      }
      state = a.next[static_cast<std::size_t>(state)][c];
    }
    a.accept_id[static_cast<std::size_t>(state)] = static_cast<int>(id);
  }

  // Complete the transition map breadth-first: a missing edge follows the
  // longest-suffix state's edge.
  std::deque<int> queue;
  for (int c = 0; c < 3; ++c) {
    int& t = a.next[0][c];
    if (t < 0) {
      t = 0;
    } else {
      a.fail[static_cast<std::size_t>(t)] = 0;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int c = 0; c < 3; ++c) {
      const int via_fail =
          a.next[static_cast<std::size_t>(a.fail[static_cast<std::size_t>(s)])]
                [c];
      int& t = a.next[static_cast<std::size_t>(s)][c];
      if (t < 0) {
        t = via_fail;
      } else {
        a.fail[static_cast<std::size_t>(t)] = via_fail;
        queue.push_back(t);
      }
    }
  }

  // A pattern is a suffix of a state's label exactly when the fail chain
  // passes through an accepting state; fail states are strictly shorter, so
  // the breadth-first order above is also a valid evaluation order.
  a.match_in_suffix.assign(static_cast<std::size_t>(a.state_count()), 0);
  std::vector<int> order;
  order.push_back(0);
  {
    std::deque<int> bfs;
    std::vector<char> seen(static_cast<std::size_t>(a.state_count()), 0);
    seen[0] = 1;
    bfs.push_back(0);
    while (!bfs.empty()) {
      const int s = bfs.front();
      bfs.pop_front();
      for (int c = 0; c < 3; ++c) {
        const int t = a.next[static_cast<std::size_t>(s)][c];
        if (!seen[static_cast<std::size_t>(t)] &&
            a.labels[static_cast<std::size_t>(t)].size() ==
                a.labels[static_cast<std::size_t>(s)].size() + 1) {
          seen[static_cast<std::size_t>(t)] = 1;
          order.push_back(t);
          bfs.push_back(t);
        }
      }
    }
  }
  for (int s : order) {
    a.match_in_suffix[static_cast<std::size_t>(s)] = static_cast<char>(
        a.accept_id[static_cast<std::size_t>(s)] >= 0 ||
        (s != 0 &&
         a.match_in_suffix[static_cast<std::size_t>(
             a.fail[static_cast<std::size_t>(s)])]));
  }
  a.removed.assign(static_cast<std::size_t>(a.state_count()), 0);
  return a;
}

bool contains_pattern(const PatternAutomaton& a, const DiffWord& text) {
  int state = 0;
  for (Symbol s : text) {
    if (s == Symbol::pm) {
      throw std::invalid_argument("contains_pattern: text must not use wildcards");
    }
    state = a.next[static_cast<std::size_t>(state)][static_cast<int>(s)];
    if (a.match_in_suffix[static_cast<std::size_t>(state)]) return true;
  }
  return false;
}

namespace {

struct DecisionMachine {
  PatternAutomaton automaton;
  int start = 0;   // state after reading 0^m
  int target = 0;  // state labeled +0^(m-1)
};

// Shared setup for decide_positive and shortest_admissible.  Returns nothing
// when a pre-check already settles the answer as "capacity zero": an
// all-zero pattern blocks the mandatory 0^m prefix, and any pattern
// occurring inside +0^(m-1) blocks the mandatory suffix.
std::optional<DecisionMachine> build_decision_machine(const PatternSet& d) {
  if (d.extended()) {
    throw std::invalid_argument("decide_positive: expand wildcard set first");
  }
  const int m = d.m();
  const PatternSet sym = d.symmetrized();
  if (sym.has_all_zero_pattern()) return std::nullopt;

  DiffWord suffix(static_cast<std::size_t>(m), Symbol::zero);
  suffix[0] = Symbol::plus;
  if (!avoids(suffix, sym)) return std::nullopt;

  std::vector<Pattern> all = sym.patterns();
  all.emplace_back(suffix);
  const PatternSet full(std::move(all));
  // The set constructor sorts, so look the suffix pattern's index up rather
  // than assuming it stayed last.
  const std::size_t suffix_id = static_cast<std::size_t>(
      std::find(full.patterns().begin(), full.patterns().end(), Pattern(suffix)) -
      full.patterns().begin());
  DecisionMachine machine;
  machine.automaton = build_automaton(full);
  PatternAutomaton& a = machine.automaton;

  // Prune every state whose label ends with a forbidden pattern; the state
  // labeled by the suffix word itself is exempt (its label contains no
  // forbidden pattern by the pre-check, and it is where the walk must end).
  // The closure runs over the fail links, which point to strictly shorter
  // labels, so visiting states in trie breadth-first order sees each fail
  // target before the states that link to it.
  std::vector<int> order;
  {
    std::deque<int> bfs;
    std::vector<char> seen(static_cast<std::size_t>(a.state_count()), 0);
    seen[0] = 1;
    bfs.push_back(0);
    while (!bfs.empty()) {
      const int s = bfs.front();
      bfs.pop_front();
      order.push_back(s);
      for (int c = 0; c < 3; ++c) {
        const int t = a.next[static_cast<std::size_t>(s)][c];
        if (!seen[static_cast<std::size_t>(t)] &&
            a.labels[static_cast<std::size_t>(t)].size() ==
                a.labels[static_cast<std::size_t>(s)].size() + 1) {
          seen[static_cast<std::size_t>(t)] = 1;
          bfs.push_back(t);
        }
      }
    }
  }
  for (int s : order) {
    const int id = a.accept_id[static_cast<std::size_t>(s)];
    const bool own_hit = id >= 0 && static_cast<std::size_t>(id) != suffix_id;
    const bool inherited =
        s != 0 && a.removed[static_cast<std::size_t>(
                      a.fail[static_cast<std::size_t>(s)])] != 0;
    a.removed[static_cast<std::size_t>(s)] =
        static_cast<char>(own_hit || inherited);
  }

  int state = 0;
  for (int i = 0; i < m; ++i) {
    state = a.next[static_cast<std::size_t>(state)][static_cast<int>(Symbol::zero)];
    if (a.removed[static_cast<std::size_t>(state)]) {
      throw invariant_violation(
          "decide_positive: zero prefix hit a pruned state despite pre-check");
    }
  }
  machine.start = state;

  int target = 0;
  for (Symbol s : suffix) {
    target = a.next[static_cast<std::size_t>(target)][static_cast<int>(s)];
  }
  if (a.labels[static_cast<std::size_t>(target)] != suffix ||
      a.removed[static_cast<std::size_t>(target)]) {
    throw invariant_violation("decide_positive: suffix state mis-built");
  }
  machine.target = target;
  return machine;
}

}  // namespace

bool decide_positive(const PatternSet& d) {
  const std::optional<DecisionMachine> machine = build_decision_machine(d);
  if (!machine) return false;
  const PatternAutomaton& a = machine->automaton;

  std::vector<char> visited(static_cast<std::size_t>(a.state_count()), 0);
  std::deque<int> queue;
  visited[static_cast<std::size_t>(machine->start)] = 1;
  queue.push_back(machine->start);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (s == machine->target) return true;
    for (int c = 0; c < 3; ++c) {
      const int t = a.next[static_cast<std::size_t>(s)][c];
      if (!visited[static_cast<std::size_t>(t)] &&
          !a.removed[static_cast<std::size_t>(t)]) {
        visited[static_cast<std::size_t>(t)] = 1;
        queue.push_back(t);
      }
    }
  }
  return false;
}

std::optional<DiffWord> shortest_admissible(const PatternSet& d) {
  const std::optional<DecisionMachine> machine = build_decision_machine(d);
  if (!machine) return std::nullopt;
  const PatternAutomaton& a = machine->automaton;

  std::vector<int> parent(static_cast<std::size_t>(a.state_count()), -1);
  std::vector<Symbol> via(static_cast<std::size_t>(a.state_count()),
                          Symbol::zero);
  std::vector<char> visited(static_cast<std::size_t>(a.state_count()), 0);
  std::deque<int> queue;
  visited[static_cast<std::size_t>(machine->start)] = 1;
  queue.push_back(machine->start);
  bool found = machine->start == machine->target;
  while (!queue.empty() && !found) {
    const int s = queue.front();
    queue.pop_front();
    for (int c = 0; c < 3 && !found; ++c) {  // symbol order -,0,+
      const int t = a.next[static_cast<std::size_t>(s)][c];
      if (visited[static_cast<std::size_t>(t)] ||
          a.removed[static_cast<std::size_t>(t)]) {
        continue;
      }
      visited[static_cast<std::size_t>(t)] = 1;
      parent[static_cast<std::size_t>(t)] = s;
      via[static_cast<std::size_t>(t)] = static_cast<Symbol>(c);
      if (t == machine->target) {
        found = true;
        break;
      }
      queue.push_back(t);
    }
  }
  if (!found) return std::nullopt;

  DiffWord tail;
  for (int s = machine->target; s != machine->start;
       s = parent[static_cast<std::size_t>(s)]) {
    tail.push_back(via[static_cast<std::size_t>(s)]);
  }
  std::reverse(tail.begin(), tail.end());
  DiffWord word(static_cast<std::size_t>(d.m()), Symbol::zero);
  word.insert(word.end(), tail.begin(), tail.end());
  if (!avoids(word, d.symmetrized())) {
    throw invariant_violation(
        "shortest_admissible: reconstructed word fails the avoidance re-check");
  }
  return word;
}

bool decide_positive_extended(const PatternSet& d,
                              std::uint64_t expansion_budget) {
  if (!d.extended()) return decide_positive(d);
  return decide_positive(d.expanded(expansion_budget));
}

Nae3SatInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Nae3SatInstance inst;
  int declared_clauses = -1;
  std::vector<int> literals;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first == "c") continue;    // comment
    if (first == "p") {
      std::string kind;
      if (declared_clauses >= 0 || !(ls >> kind >> inst.num_vars >>
                                     declared_clauses) ||
          kind != "cnf" || inst.num_vars < 1 || declared_clauses < 0) {
        throw std::invalid_argument("parse_dimacs: malformed problem line");
      }
      continue;
    }
    if (declared_clauses < 0) {
      throw std::invalid_argument("parse_dimacs: clause before problem line");
    }
    ls.clear();
    ls.str(line);
    int lit = 0;
    while (ls >> lit) literals.push_back(lit);
    if (!ls.eof()) {
      throw std::invalid_argument("parse_dimacs: non-integer clause token");
    }
  }
  if (declared_clauses < 0) {
    throw std::invalid_argument("parse_dimacs: missing problem line");
  }

  std::array<int, 3> clause{};
  int filled = 0;
  for (int lit : literals) {
    if (lit == 0) {
      if (filled != 3) {
        throw std::invalid_argument("parse_dimacs: clause must have 3 literals");
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          if (std::abs(clause[static_cast<std::size_t>(i)]) ==
              std::abs(clause[static_cast<std::size_t>(j)])) {
            throw std::invalid_argument(
                "parse_dimacs: repeated variable in a clause");
          }
        }
      }
      inst.clauses.push_back(clause);
      filled = 0;
      continue;
    }
    if (std::abs(lit) > inst.num_vars) {
      throw std::invalid_argument("parse_dimacs: literal out of range");
    }
    if (filled == 3) {
      throw std::invalid_argument("parse_dimacs: clause must have 3 literals");
    }
    clause[static_cast<std::size_t>(filled++)] = lit;
  }
  if (filled != 0) {
    throw std::invalid_argument("parse_dimacs: clause missing terminating 0");
  }
  if (static_cast<int>(inst.clauses.size()) != declared_clauses) {
    throw std::invalid_argument("parse_dimacs: clause count differs from header");
  }
  return inst;
}

PatternSet reduce_nae3sat(const Nae3SatInstance& inst) {
  const int m = inst.num_vars;
  if (m < 3) {
    throw std::invalid_argument("reduce_nae3sat: need at least 3 variables");
  }
  std::vector<Pattern> patterns;
  for (int j = 1; j <= m - 1; ++j) {
    std::vector<Symbol> ladder(static_cast<std::size_t>(j + 2), Symbol::pm);
    ladder.front() = Symbol::zero;
    ladder.back() = Symbol::zero;
    patterns.emplace_back(std::move(ladder));
  }
  for (const std::array<int, 3>& clause : inst.clauses) {
    std::vector<Symbol> gadget(static_cast<std::size_t>(m), Symbol::pm);
    for (int lit : clause) {
      const int var = std::abs(lit);
      if (var < 1 || var > m) {
        throw std::invalid_argument("reduce_nae3sat: literal out of range");
      }
      if (gadget[static_cast<std::size_t>(var - 1)] != Symbol::pm) {
        throw std::invalid_argument("reduce_nae3sat: repeated variable in clause");
      }
      gadget[static_cast<std::size_t>(var - 1)] =
          lit > 0 ? Symbol::plus : Symbol::minus;
    }
    patterns.emplace_back(gadget);
    patterns.emplace_back(Pattern(gadget).negated());
  }
  return PatternSet(std::move(patterns));
}

bool nae3sat_brute(const Nae3SatInstance& inst) {
  if (inst.num_vars < 1 || inst.num_vars > 24) {
    throw std::invalid_argument("nae3sat_brute: variable count out of range");
  }
  for (std::uint32_t assign = 0; assign < (1u << inst.num_vars); ++assign) {
    bool ok = true;
    for (const std::array<int, 3>& clause : inst.clauses) {
      int truths = 0;
      for (int lit : clause) {
        const bool value = (assign >> (std::abs(lit) - 1)) & 1u;
        truths += (lit > 0) == value;
      }
      if (truths == 0 || truths == 3) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace capcodes::positivity
