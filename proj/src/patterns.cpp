#include "capcodes/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "capcodes/errors.hpp"

namespace capcodes {

char to_char(Symbol s) noexcept {
  switch (s) {
    case Symbol::minus: return '-';
    case Symbol::zero: return '0';
    case Symbol::plus: return '+';
    case Symbol::pm: return 'x';
  }
  return '?';
}

std::optional<Symbol> symbol_from_char(char c) noexcept {
  switch (c) {
    case '-': return Symbol::minus;
    case '0': return Symbol::zero;
    case '+': return Symbol::plus;
    case 'x': case 'X': return Symbol::pm;
    default: return std::nullopt;
  }
}

namespace {

// Decodes one line of symbols, accepting the two-byte UTF-8 "±" as 'x'.
std::vector<Symbol> decode_symbols(std::string_view text, const char* what) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == 0xC2 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0xB1) {
      out.push_back(Symbol::pm);
      ++i;
      continue;
    }
    auto s = symbol_from_char(text[i]);
    if (!s) {
      throw std::invalid_argument(std::string(what) + ": illegal character '" +
                                  std::string(1, text[i]) + "'");
    }
    out.push_back(*s);
  }
  return out;
}

}  // namespace

std::string to_string(const DiffWord& w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol x : w) s.push_back(to_char(x));
  return s;
}

DiffWord parse_diff_word(std::string_view text) {
  DiffWord w = decode_symbols(text, "difference word");
  for (Symbol s : w) {
    if (s == Symbol::pm) {
      throw std::invalid_argument("difference word: wildcard not allowed");
    }
  }
  return w;
}

DiffWord negated(const DiffWord& w) {
  DiffWord out(w.size());
  std::transform(w.begin(), w.end(), out.begin(),
                 [](Symbol s) { return negated(s); });
  return out;
}

Pattern::Pattern(std::vector<Symbol> symbols) : syms_(std::move(symbols)) {
  if (syms_.empty()) throw std::invalid_argument("pattern: empty");
}

Pattern Pattern::parse(std::string_view text) {
  return Pattern(decode_symbols(text, "pattern"));
}

bool Pattern::has_wildcard() const noexcept {
  return std::find(syms_.begin(), syms_.end(), Symbol::pm) != syms_.end();
}

bool Pattern::all_zero() const noexcept {
  return std::all_of(syms_.begin(), syms_.end(),
                     [](Symbol s) { return s == Symbol::zero; });
}

Pattern Pattern::negated() const {
  std::vector<Symbol> out(syms_.size());
  std::transform(syms_.begin(), syms_.end(), out.begin(),
                 [](Symbol s) { return capcodes::negated(s); });
  return Pattern(std::move(out));
}

std::string Pattern::str() const {
  std::string s;
  s.reserve(syms_.size());
  for (Symbol x : syms_) s.push_back(to_char(x));
  return s;
}

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
  if (auto c = a.syms_.size() <=> b.syms_.size(); c != 0) return c;
  return a.syms_ <=> b.syms_;
}

PatternSet::PatternSet(std::vector<Pattern> patterns)
    : patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw std::invalid_argument("pattern set: empty");
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()),
                  patterns_.end());
  for (const Pattern& p : patterns_) {
    m_ = std::max(m_, p.size());
    total_length_ += p.size();
    extended_ = extended_ || p.has_wildcard();
    int run = 0, lead = 0, trail = 0;
    bool leading = true;
    for (int i = 0; i < p.size(); ++i) {
      if (p.at(i) == Symbol::zero) {
        ++run;
        if (leading) ++lead;
        ++trail;
      } else {
        run = 0;
        trail = 0;
        leading = false;
      }
      runs_.r = std::max(runs_.r, run);
    }
    runs_.r1 = std::max(runs_.r1, lead);
    runs_.r2 = std::max(runs_.r2, trail);
  }
}

PatternSet PatternSet::parse(std::string_view text) {
  std::vector<Pattern> patterns;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty()) continue;
    patterns.push_back(Pattern::parse(line));
  }
  if (patterns.empty()) {
    throw std::invalid_argument("pattern set: no patterns in input");
  }
  return PatternSet(std::move(patterns));
}

PatternSet PatternSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("pattern set: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool PatternSet::has_all_zero_pattern() const noexcept {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [](const Pattern& p) { return p.all_zero(); });
}

PatternSet PatternSet::negated() const {
  std::vector<Pattern> out;
  out.reserve(patterns_.size());
  for (const Pattern& p : patterns_) out.push_back(p.negated());
  return PatternSet(std::move(out));
}

PatternSet PatternSet::expanded(std::size_t budget) const {
  std::vector<Pattern> out;
  for (const Pattern& p : patterns_) {
    std::vector<int> wild;
    for (int i = 0; i < p.size(); ++i) {
      if (p.at(i) == Symbol::pm) wild.push_back(i);
    }
    if (wild.size() >= 20) {
      throw budget_exhausted("expansion: too many wildcards in one pattern");
    }
    for (std::uint32_t mask = 0; mask < (1u << wild.size()); ++mask) {
      std::vector<Symbol> syms = p.symbols();
      for (std::size_t j = 0; j < wild.size(); ++j) {
        syms[static_cast<std::size_t>(wild[j])] =
            (mask >> j) & 1u ? Symbol::plus : Symbol::minus;
      }
      out.emplace_back(std::move(syms));
      if (out.size() > budget) {
        throw budget_exhausted("expansion: pattern budget exceeded");
      }
    }
  }
  return PatternSet(std::move(out));
}

PatternSet PatternSet::symmetrized() const {
  std::vector<Pattern> out = patterns_;
  for (const Pattern& p : patterns_) out.push_back(p.negated());
  return PatternSet(std::move(out));
}

std::string PatternSet::str() const {
  std::string s;
  for (const Pattern& p : patterns_) {
    s += p.str();
    s += '\n';
  }
  return s;
}

std::string PatternSet::display_str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (i) s += ", ";
    s += patterns_[i].str();
  }
  s += "}";
  return s;
}

BinWord BinWord::make(std::uint32_t value, int len) {
  if (len < 1 || len > max_len) {
    throw std::invalid_argument("binary word: length out of range");
  }
  if (len < 32 && value >> len) {
    throw std::invalid_argument("binary word: value wider than length");
  }
  return BinWord{value, len};
}

BinWord BinWord::parse(std::string_view text) {
  if (text.empty() || text.size() > max_len) {
    throw std::invalid_argument("binary word: bad length");
  }
  std::uint32_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("binary word: illegal character");
    }
    bits = (bits << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return BinWord{bits, static_cast<int>(text.size())};
}

std::string BinWord::str() const {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

DiffWord difference(const BinWord& u, const BinWord& v) {
  if (u.len != v.len) {
    throw std::invalid_argument("difference: words of unequal length");
  }
  DiffWord w(static_cast<std::size_t>(u.len));
  for (int i = 0; i < u.len; ++i) {
    int d = u.bit(i) - v.bit(i);
    w[static_cast<std::size_t>(i)] =
        d == 0 ? Symbol::zero : (d > 0 ? Symbol::plus : Symbol::minus);
  }
  return w;
}

bool avoids(const DiffWord& w, const PatternSet& d) {
  if (d.extended()) {
    throw std::invalid_argument("avoids: expand wildcard set first");
  }
  for (const Pattern& p : d.patterns()) {
    const int lp = p.size();
    const int lw = static_cast<int>(w.size());
    for (int start = 0; start + lp <= lw; ++start) {
      bool hit = true;
      for (int i = 0; i < lp; ++i) {
        if (p.at(i) != w[static_cast<std::size_t>(start + i)]) {
          hit = false;
          break;
        }
      }
      if (hit) return false;
    }
  }
  return true;
}

}  // namespace capcodes
