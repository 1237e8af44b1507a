#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capcodes/patterns.hpp"

namespace capcodes::positivity {

// Aho-Corasick transition graph over {-,0,+}: the trie of all pattern
// prefixes, transitions completed by the longest-suffix rule.  State 0 is
// the root with the empty label.
struct PatternAutomaton {
  std::vector<std::array<int, 3>> next;  // total map, indexed by Symbol value
  std::vector<int> fail;                 // longest proper suffix state
  std::vector<int> accept_id;            // pattern index when the label is a
                                         // full pattern, else -1
  std::vector<char> match_in_suffix;     // some pattern is a suffix of label
  std::vector<char> removed;             // pruned by the positivity decision;
                                         // all false from build_automaton
  std::vector<DiffWord> labels;

  int state_count() const noexcept { return static_cast<int>(next.size()); }
};

// Builds the automaton for a non-extended pattern set.  The state count is
// bounded by the total pattern length plus one.
PatternAutomaton build_automaton(const PatternSet& p);

// True when the text contains an occurrence of some pattern of the set the
// automaton was built for.
bool contains_pattern(const PatternAutomaton& a, const DiffWord& text);

// Decides whether the capacity is positive, in time polynomial in the total
// pattern length: capacity is positive exactly when some word avoiding
// d and -d has prefix 0^m and suffix +0^(m-1), which reduces to
// reachability in the pruned automaton of d, -d and that suffix word.
// Throws on extended sets (expand first, or use decide_positive_extended).
bool decide_positive(const PatternSet& d);

// The shortest witness word for decide_positive, lexicographically smallest
// in symbol order -,0,+ among shortest; nothing exactly when the capacity is
// zero.  The witness length never exceeds twice the total pattern length
// plus twice the window length.
std::optional<DiffWord> shortest_admissible(const PatternSet& d);

// Expands wildcard patterns (within the given budget), then decides
// positivity.  Exponential in the wildcard count, which is expected: the
// extended decision problem is NP-hard.
bool decide_positive_extended(const PatternSet& d,
                              std::uint64_t expansion_budget = 1u << 20);

// A not-all-equal 3SAT instance: each clause must get at least one true and
// one false literal.
struct Nae3SatInstance {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based variable indexes
};

// Parses DIMACS CNF text ("p cnf <vars> <clauses>" header, integer clauses
// terminated by 0, 'c' comment lines).  Requires exactly three literals of
// distinct variables per clause.
Nae3SatInstance parse_dimacs(const std::string& text);

// The pattern-set gadget whose extended positivity decision matches NAE
// satisfiability: ladder patterns 0 (pm)^j 0 for j = 1..num_vars-1 plus, per
// clause, one length-num_vars pattern carrying +/- at the literal positions
// (+ for a positive literal) and wildcards elsewhere, together with its
// negation.  Requires num_vars >= 3.
PatternSet reduce_nae3sat(const Nae3SatInstance& inst);

// Exhaustive satisfiability check over all 2^num_vars assignments; the
// ground truth the reduction is validated against.  Requires num_vars <= 24.
bool nae3sat_brute(const Nae3SatInstance& inst);

}  // namespace capcodes::positivity
