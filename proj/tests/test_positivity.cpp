#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "capcodes/brute.hpp"
#include "capcodes/patterns.hpp"
#include "capcodes/positivity.hpp"

using namespace capcodes;

namespace {

bool naive_contains(const DiffWord& text, const PatternSet& d) {
  for (const Pattern& p : d.patterns()) {
    const int lp = p.size();
    for (int pos = 0; pos + lp <= static_cast<int>(text.size()); ++pos) {
      bool hit = true;
      for (int i = 0; i < lp; ++i) {
        if (text[static_cast<std::size_t>(pos + i)] != p.at(i)) {
          hit = false;
          break;
        }
      }
      if (hit) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("automaton detects exactly the true occurrences") {
  PatternSet d = PatternSet::parse("0++\n+-\n");
  positivity::PatternAutomaton a = positivity::build_automaton(d);
  CHECK(a.state_count() <= d.total_length() + 1);
  CHECK(positivity::contains_pattern(a, parse_diff_word("000++")));
  CHECK(positivity::contains_pattern(a, parse_diff_word("+-")));
  CHECK(positivity::contains_pattern(a, parse_diff_word("--0++--")));
  CHECK_FALSE(positivity::contains_pattern(a, parse_diff_word("0+0+0+")));
  CHECK_FALSE(positivity::contains_pattern(a, parse_diff_word("")));
  CHECK_FALSE(positivity::contains_pattern(a, parse_diff_word("++0")));
}

TEST_CASE("automaton agrees with the naive scanner on random texts") {
  std::mt19937 rng(7);
  const char* sets[] = {"0++\n", "+-\n-0+\n", "+++-\n", "0+-+\n00+\n"};
  for (const char* text : sets) {
    PatternSet d = PatternSet::parse(text);
    positivity::PatternAutomaton a = positivity::build_automaton(d);
    for (int trial = 0; trial < 250; ++trial) {
      const int len = static_cast<int>(rng() % 24);
      DiffWord w;
      for (int i = 0; i < len; ++i) {
        w.push_back(static_cast<Symbol>(rng() % 3));
      }
      CAPTURE(text);
      CAPTURE(to_string(w));
      CHECK(positivity::contains_pattern(a, w) == naive_contains(w, d));
    }
  }
}

TEST_CASE("positivity decisions on the reference sets") {
  CHECK(positivity::decide_positive(PatternSet::parse("0++\n")));
  CHECK(positivity::decide_positive(PatternSet::parse("0+-\n")));
  CHECK(positivity::decide_positive(PatternSet::parse("+++\n")));
  CHECK(positivity::decide_positive(PatternSet::parse("+++-\n")));
  CHECK(positivity::decide_positive(PatternSet::parse("+0+0+\n")));
  CHECK_FALSE(positivity::decide_positive(PatternSet::parse("00+\n")));
  CHECK_FALSE(positivity::decide_positive(PatternSet::parse("+00\n")));
  CHECK_FALSE(positivity::decide_positive(PatternSet::parse("000\n")));
  CHECK_FALSE(positivity::decide_positive(PatternSet::parse("0\n")));
  CHECK_FALSE(positivity::decide_positive(PatternSet::parse("+\n")));
  CHECK_THROWS_AS(positivity::decide_positive(PatternSet::parse("0x+\n")),
                  std::invalid_argument);
}

TEST_CASE("decider agrees with the bounded exhaustive word search") {
  const char* sets[] = {"0++\n", "0+-\n",  "+++\n", "++-\n",  "+++-\n",
                        "00+\n", "+00\n",  "0\n",   "+\n",    "000\n",
                        "+-\n",  "-+0\n0--\n", "0+-+\n", "+0+0+\n",
                        "00+\n0++\n", "+-\n-+\n"};
  for (const char* text : sets) {
    PatternSet d = PatternSet::parse(text);
    const int horizon = 2 * d.total_length() + 2 * d.m();
    CAPTURE(text);
    CHECK(positivity::decide_positive(d) ==
          brute::admissible_word_search(d, horizon).has_value());
  }
}

TEST_CASE("shortest witnesses are canonical and within the length bound") {
  auto w = positivity::shortest_admissible(PatternSet::parse("0+-\n"));
  REQUIRE(w.has_value());
  CHECK(to_string(*w) == "000+00");

  CHECK_FALSE(positivity::shortest_admissible(PatternSet::parse("00+\n"))
                  .has_value());

  const char* sets[] = {"0++\n", "+++\n", "+++-\n", "+0+0+\n", "0+-+\n"};
  for (const char* text : sets) {
    PatternSet d = PatternSet::parse(text);
    auto witness = positivity::shortest_admissible(d);
    REQUIRE(witness.has_value());
    CAPTURE(text);
    CHECK(static_cast<int>(witness->size()) <=
          2 * d.total_length() + 2 * d.m());
    // The witness is exactly what the exhaustive search finds.
    auto reference =
        brute::admissible_word_search(d, 2 * d.total_length() + 2 * d.m());
    REQUIRE(reference.has_value());
    CHECK(to_string(*witness) == to_string(*reference));
  }
}

TEST_CASE("extended sets are decided through expansion") {
  CHECK(positivity::decide_positive_extended(PatternSet::parse("0x+x\n")));
  CHECK(positivity::decide_positive_extended(PatternSet::parse("0++\n")));
  CHECK_FALSE(positivity::decide_positive_extended(PatternSet::parse("x\n")));
}

TEST_CASE("DIMACS parsing accepts the standard shape and rejects junk") {
  positivity::Nae3SatInstance inst = positivity::parse_dimacs(
      "c a comment\np cnf 5 2\n1 -3 4 0\n-2 4 5 0\n");
  CHECK(inst.num_vars == 5);
  REQUIRE(inst.clauses.size() == 2);
  CHECK(inst.clauses[0] == std::array<int, 3>{1, -3, 4});
  CHECK(inst.clauses[1] == std::array<int, 3>{-2, 4, 5});

  CHECK_THROWS_AS(positivity::parse_dimacs("1 2 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(positivity::parse_dimacs("p cnf 3 1\n1 2 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(positivity::parse_dimacs("p cnf 3 1\n1 1 2 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(positivity::parse_dimacs("p cnf 3 1\n1 2 4 0\n"),
                  std::invalid_argument);
}

TEST_CASE("the reduction of the reference instance is the frozen set") {
  positivity::Nae3SatInstance inst;
  inst.num_vars = 5;
  inst.clauses = {{1, -3, 4}, {-2, 4, 5}};
  PatternSet reduced = positivity::reduce_nae3sat(inst);
  PatternSet expected = PatternSet::parse(
      "0x0\n0xx0\n0xxx0\n0xxxx0\n+x-+x\n-x+-x\nx-x++\nx+x--\n");
  CHECK(reduced == expected);
}

TEST_CASE("the reduction matches brute-force NAE satisfiability") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    positivity::Nae3SatInstance inst;
    inst.num_vars = 3 + static_cast<int>(rng() % 4);  // 3..6
    const int clauses = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < clauses; ++c) {
      int v1 = 1 + static_cast<int>(rng() % inst.num_vars);
      int v2 = v1, v3 = v1;
      while (v2 == v1) v2 = 1 + static_cast<int>(rng() % inst.num_vars);
      while (v3 == v1 || v3 == v2) {
        v3 = 1 + static_cast<int>(rng() % inst.num_vars);
      }
      auto sign = [&]() { return rng() % 2 == 0 ? 1 : -1; };
      inst.clauses.push_back({sign() * v1, sign() * v2, sign() * v3});
    }
    CAPTURE(trial);
    CHECK(positivity::nae3sat_brute(inst) ==
          positivity::decide_positive_extended(positivity::reduce_nae3sat(inst)));
  }
}

TEST_CASE("tiny NAE instances behave as expected") {
  // x or x or x in both polarities is never NAE-satisfiable.
  positivity::Nae3SatInstance no;
  no.num_vars = 3;
  no.clauses = {{1, 2, 3}, {-1, -2, -3}, {1, -2, 3}, {-1, 2, -3},
                {1, 2, -3}, {-1, -2, 3}, {1, -2, -3}, {-1, 2, 3}};
  CHECK_FALSE(positivity::nae3sat_brute(no));
  CHECK_FALSE(positivity::decide_positive_extended(
      positivity::reduce_nae3sat(no)));

  positivity::Nae3SatInstance yes;
  yes.num_vars = 3;
  yes.clauses = {{1, 2, 3}};
  CHECK(positivity::nae3sat_brute(yes));
  CHECK(positivity::decide_positive_extended(positivity::reduce_nae3sat(yes)));
}
