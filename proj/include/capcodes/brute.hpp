#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "capcodes/patterns.hpp"

namespace capcodes::brute {

// A set of binary words of one common length.
struct Code {
  int length = 0;
  std::vector<BinWord> words;
  int size() const noexcept { return static_cast<int>(words.size()); }
};

// True when every ordered pair of distinct words in c has a difference that
// avoids d.  Self-differences are not considered.
bool verify_code(const Code& c, const PatternSet& d);

struct MaxCodeResult {
  std::int64_t size = 0;
  Code witness;
  std::uint64_t nodes = 0;  // branch-and-bound nodes visited
};

// Exact maximum size of a length-n code whose pairwise differences (in both
// directions) avoid d, found by exhaustive branch and bound over the
// compatibility graph on all 2^n words.  Feasible for n up to about 14.
// Throws budget_exhausted once more than node_budget nodes are visited;
// there is no partial answer.  d must not be extended.
MaxCodeResult max_code(int n, const PatternSet& d,
                       std::uint64_t node_budget = 100'000'000);

// The explicit code of length k*m whose words are k blocks of m-1 free bits,
// each block followed by a fixed zero.  Its 2^((m-1)k) words pairwise avoid
// every pattern of length m that has no zero, hence the set {+,-}^m.
Code block_code(int m, int k);

// Exhaustive search for a word over {-,0,+} that avoids d and its negation,
// starts with m zeros and ends with plus followed by m-1 zeros.  Returns the
// lexicographically smallest such word (symbol order -,0,+) of minimal
// length <= max_len, or nothing.  Absence within max_len is a valid answer.
std::optional<DiffWord> admissible_word_search(const PatternSet& d, int max_len);

}  // namespace capcodes::brute
