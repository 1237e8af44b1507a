#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capcodes {

// Symbol of a difference word or forbidden pattern.  `pm` is the two-valued
// wildcard (either plus or minus, never zero); it may appear in patterns but
// never in a concrete difference word.
enum class Symbol : std::uint8_t { minus = 0, zero = 1, plus = 2, pm = 3 };

constexpr Symbol negated(Symbol s) noexcept {
  switch (s) {
    case Symbol::minus: return Symbol::plus;
    case Symbol::plus: return Symbol::minus;
    default: return s;  // zero and pm are self-negating
  }
}

// ASCII form: '-', '0', '+', 'x'.  The UTF-8 sign "±" is accepted on input
// as an alias for 'x' but never emitted.
char to_char(Symbol s) noexcept;
std::optional<Symbol> symbol_from_char(char c) noexcept;

// A concrete difference word: a sequence over {minus, zero, plus}.
using DiffWord = std::vector<Symbol>;

std::string to_string(const DiffWord& w);
DiffWord parse_diff_word(std::string_view text);  // throws std::invalid_argument
DiffWord negated(const DiffWord& w);

// A single forbidden pattern, length >= 1, possibly containing wildcards.
class Pattern {
 public:
  explicit Pattern(std::vector<Symbol> symbols);   // throws on empty input
  static Pattern parse(std::string_view text);     // throws std::invalid_argument

  const std::vector<Symbol>& symbols() const noexcept { return syms_; }
  int size() const noexcept { return static_cast<int>(syms_.size()); }
  Symbol at(int i) const { return syms_.at(static_cast<std::size_t>(i)); }
  bool has_wildcard() const noexcept;
  bool all_zero() const noexcept;

  Pattern negated() const;
  std::string str() const;

  friend bool operator==(const Pattern& a, const Pattern& b) = default;
  // Orders by length first, then lexicographically; used for the canonical
  // pattern order inside a set.
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b);

 private:
  std::vector<Symbol> syms_;
};

// Zero-run statistics of a pattern set:
//   r  = longest run of consecutive zeros inside any pattern,
//   r1 = longest all-zero prefix of any pattern,
//   r2 = longest all-zero suffix of any pattern.
struct ZeroRunParams {
  int r = 0;
  int r1 = 0;
  int r2 = 0;
  friend bool operator==(const ZeroRunParams&, const ZeroRunParams&) = default;
};

// A finite, non-empty set of forbidden patterns, stored sorted and
// deduplicated.  m is the maximum pattern length, M the total length over
// all patterns.  The set is "extended" when any pattern carries a wildcard.
class PatternSet {
 public:
  explicit PatternSet(std::vector<Pattern> patterns);  // throws on empty input

  // Parses the on-disk format: one pattern per line, '#' starts a comment,
  // blank lines are ignored.  An empty set is rejected.
  static PatternSet parse(std::string_view text);
  static PatternSet load(const std::string& path);

  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
  int size() const noexcept { return static_cast<int>(patterns_.size()); }
  int m() const noexcept { return m_; }
  int total_length() const noexcept { return total_length_; }
  bool extended() const noexcept { return extended_; }
  const ZeroRunParams& zero_runs() const noexcept { return runs_; }
  bool has_all_zero_pattern() const noexcept;

  PatternSet negated() const;

  // Replaces every wildcard by both signs; the result has no wildcards.
  // Throws budget_exhausted if the expansion would exceed `budget` patterns.
  PatternSet expanded(std::size_t budget = (std::size_t{1} << 20)) const;

  // The union of this set with its negation.  A word avoids the union
  // exactly when both the word and its negation avoid the original set.
  PatternSet symmetrized() const;

  std::string str() const;          // one pattern per line (file format)
  std::string display_str() const;  // "{0++, ...}" single-line form

  friend bool operator==(const PatternSet& a, const PatternSet& b) {
    return a.patterns_ == b.patterns_;
  }

 private:
  std::vector<Pattern> patterns_;
  int m_ = 0;
  int total_length_ = 0;
  bool extended_ = false;
  ZeroRunParams runs_;
};

// A binary word of length len <= 28, bit i (0 = leftmost) stored at position
// len-1-i of `bits`.
struct BinWord {
  std::uint32_t bits = 0;
  int len = 0;

  static constexpr int max_len = 28;

  static BinWord make(std::uint32_t value, int len);  // throws on bad length
  static BinWord parse(std::string_view text);

  int bit(int i) const { return static_cast<int>((bits >> (len - 1 - i)) & 1u); }
  std::string str() const;

  friend bool operator==(const BinWord&, const BinWord&) = default;
  friend std::strong_ordering operator<=>(const BinWord& a, const BinWord& b) {
    if (auto c = a.len <=> b.len; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

// Componentwise difference u - v over {-1, 0, +1}, written as symbols.
// Both words must have the same length.
DiffWord difference(const BinWord& u, const BinWord& v);

// True when no pattern of d occurs in w as a contiguous subword.  d must not
// be extended: wildcard sets are a notational device, expand them first.
bool avoids(const DiffWord& w, const PatternSet& d);

}  // namespace capcodes
