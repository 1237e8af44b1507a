#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "capcodes/brute.hpp"
#include "capcodes/errors.hpp"
#include "capcodes/patterns.hpp"
#include "capcodes/transfer.hpp"

using namespace capcodes;

TEST_CASE("de Bruijn edge words and targets") {
  transfer::DeBruijnEdge e{BinWord::parse("10"), 1};
  CHECK(transfer::edge_word(e).str() == "101");
  CHECK(transfer::edge_target(e).str() == "01");

  // Window length one: the source state is the empty word.
  transfer::DeBruijnEdge tiny{BinWord{0, 0}, 1};
  CHECK(transfer::edge_word(tiny).str() == "1");
  CHECK(transfer::edge_target(tiny).len == 0);
}

TEST_CASE("edge compatibility matches the definition") {
  PatternSet d = PatternSet::parse("0++\n");
  // 011 - 000 = 0++ forbidden; 001 - 000 = 00+ allowed.
  CHECK_FALSE(transfer::edges_compatible(BinWord::parse("011"),
                                         BinWord::parse("000"), d));
  // The negation is checked as well: 000 - 011 = 0--.
  CHECK_FALSE(transfer::edges_compatible(BinWord::parse("000"),
                                         BinWord::parse("011"), d));
  CHECK(transfer::edges_compatible(BinWord::parse("001"),
                                   BinWord::parse("000"), d));
  CHECK(transfer::edges_compatible(BinWord::parse("101"),
                                   BinWord::parse("101"), d));
}

TEST_CASE("the family for {0++} has four matrices of six edges each") {
  PatternSet d = PatternSet::parse("0++\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  CHECK(fam.m == 3);
  CHECK(fam.states == 4);
  REQUIRE(fam.size() == 4);
  for (int i = 0; i < fam.size(); ++i) {
    CHECK(fam.edge_sets[static_cast<std::size_t>(i)].size() == 6);
    CHECK(transfer::entry_sum(fam.matrices[static_cast<std::size_t>(i)]) == 6);
  }
}

TEST_CASE("every family member is a maximal clique of compatible edges") {
  for (const char* text : {"0++\n", "+++\n", "+++-\n", "0+-+\n"}) {
    PatternSet d = PatternSet::parse(text);
    transfer::TransferFamily fam = transfer::build_sigma(d);
    const int m = fam.m;
    std::vector<BinWord> all_edges;
    for (std::uint32_t w = 0; w < (1u << m); ++w) {
      all_edges.push_back(BinWord{w, m});
    }
    for (const std::vector<BinWord>& clique : fam.edge_sets) {
      CAPTURE(text);
      for (std::size_t i = 0; i < clique.size(); ++i) {
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
          CHECK(transfer::edges_compatible(clique[i], clique[j], d));
        }
      }
      // No outside edge is compatible with the whole clique.
      for (const BinWord& cand : all_edges) {
        if (std::find(clique.begin(), clique.end(), cand) != clique.end()) {
          continue;
        }
        bool joins = true;
        for (const BinWord& e : clique) {
          if (!transfer::edges_compatible(cand, e, d)) {
            joins = false;
            break;
          }
        }
        CHECK_FALSE(joins);
      }
    }
  }
}

TEST_CASE("matrix entries encode the clique's edges") {
  PatternSet d = PatternSet::parse("0++\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  for (int k = 0; k < fam.size(); ++k) {
    const transfer::BinMatrix& a = fam.matrices[static_cast<std::size_t>(k)];
    std::int64_t ones = 0;
    for (int x = 0; x < fam.states; ++x) {
      for (int y = 0; y < fam.states; ++y) {
        ones += a(x, y);
        CHECK((a(x, y) == 0 || a(x, y) == 1));
      }
    }
    CHECK(ones ==
          static_cast<std::int64_t>(fam.edge_sets[static_cast<std::size_t>(k)].size()));
    for (const BinWord& e : fam.edge_sets[static_cast<std::size_t>(k)]) {
      const int source = static_cast<int>(e.bits >> 1);
      const int target = static_cast<int>(e.bits & ((1u << (fam.m - 1)) - 1));
      CHECK(a(source, target) == 1);
    }
  }
}

TEST_CASE("product norms equal exhaustive code sizes") {
  for (const char* text : {"0++\n", "+++\n", "++-\n", "+++-\n", "0+-+\n"}) {
    PatternSet d = PatternSet::parse(text);
    transfer::TransferFamily fam = transfer::build_sigma(d);
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(text);
      CAPTURE(n);
      CHECK(transfer::product_norm_delta(fam, n) ==
            brute::max_code(fam.m - 1 + n, d).size);
    }
    CHECK(transfer::validate_family(fam, d, 3));
  }
}

TEST_CASE("the sweep agrees with individual product norms") {
  PatternSet d = PatternSet::parse("+++-\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  std::vector<std::int64_t> sweep = transfer::product_norm_delta_sweep(fam, 6);
  REQUIRE(sweep.size() == 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(sweep[static_cast<std::size_t>(n - 1)] ==
          transfer::product_norm_delta(fam, n));
  }
}

TEST_CASE("window length one degenerates to single-state matrices") {
  PatternSet d = PatternSet::parse("+\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  CHECK(fam.m == 1);
  CHECK(fam.states == 1);
  // The two singleton edges are incompatible, so each forms its own clique;
  // both cliques produce the same 1x1 matrix, which is stored once.
  REQUIRE(fam.size() == 1);
  for (const auto& a : fam.matrices) {
    CHECK(transfer::entry_sum(a) == 1);
  }
  CHECK(transfer::product_norm_delta(fam, 5) == 1);
}

TEST_CASE("build_sigma rejects unusable sets") {
  CHECK_THROWS_AS(transfer::build_sigma(PatternSet::parse("0x+\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(transfer::build_sigma(PatternSet::parse("00\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      transfer::build_sigma(PatternSet::parse("+++++++\n"), 6),
      std::invalid_argument);
}

TEST_CASE("product enumeration honors its budget") {
  PatternSet d = PatternSet::parse("0++\n");
  transfer::TransferFamily fam = transfer::build_sigma(d);
  CHECK_THROWS_AS(transfer::product_norm_delta(fam, 10, 5), budget_exhausted);
}
