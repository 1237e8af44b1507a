// Regenerates the fixture corpus: the named pattern sets used throughout
// the tests, 50 random small sets (fixed seed), and exhaustive code-size
// baselines for the random corpus.  Run from the repository root; output is
// committed, so reruns must be byte-identical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "capcodes/brute.hpp"
#include "capcodes/patterns.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
namespace cc = capcodes;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  f << text;
}

const std::pair<const char*, const char*> kNamed[] = {
    {"0pp", "0++\n"},
    {"0pm", "0+-\n"},
    {"ppp", "+++\n"},
    {"pppm", "+++-\n"},
    {"ppm", "++-\n"},
    {"p0p0p", "+0+0+\n"},
    {"pm_pp", "+-\n++\n"},
    {"pm2", "xx\n"},
    {"pm3", "xxx\n"},
    {"zeros_plus", "00+\n"},
    {"0pmp", "0+-+\n"},
    {"mp0_0mm", "-+0\n0--\n"},
    {"ext_0xpx", "0x+x\n"},
    {"p00", "+00\n"},
    {"m00", "-00\n"},
    {"zero3", "000\n"},
    {"zero", "0\n"},
    {"plus", "+\n"},
};

constexpr const char* kTwoClauseCnf = "p cnf 5 2\n1 -3 4 0\n-2 4 5 0\n";

cc::Pattern random_pattern(std::mt19937& rng, bool zero_free) {
  std::uniform_int_distribution<int> len_dist(1, 4);
  for (;;) {
    int len = len_dist(rng);
    std::vector<cc::Symbol> syms;
    bool nonzero = false;
    for (int i = 0; i < len; ++i) {
      int pick = zero_free ? static_cast<int>(rng() % 2) * 2
                           : static_cast<int>(rng() % 3);
      cc::Symbol s = static_cast<cc::Symbol>(pick);
      if (s != cc::Symbol::zero) nonzero = true;
      syms.push_back(s);
    }
    if (nonzero) return cc::Pattern(std::move(syms));
  }
}

}  // namespace

int main(int argc, char** argv) {
  fs::path root = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(root / "corpus");

  for (const auto& [name, text] : kNamed) {
    write_file(root / (std::string(name) + ".pat"), text);
  }
  write_file(root / "two_clause.cnf", kTwoClauseCnf);

  // Random corpus: the first ten sets are zero-free, the rest use the full
  // alphabet.  All-zero patterns are rejected at generation time because the
  // transfer construction refuses them.
  std::mt19937 rng(20250816);
  json baselines;
  for (int i = 0; i < 50; ++i) {
    bool zero_free = i < 10;
    int count = 1 + static_cast<int>(rng() % 3);
    std::vector<cc::Pattern> pats;
    for (int k = 0; k < count; ++k) pats.push_back(random_pattern(rng, zero_free));
    cc::PatternSet set(std::move(pats));

    char name[32];
    std::snprintf(name, sizeof name, "rand_%02d", i);
    write_file(root / "corpus" / (std::string(name) + ".pat"), set.str());

    json entry;
    std::vector<std::string> strs;
    for (const cc::Pattern& p : set.patterns()) strs.push_back(p.str());
    entry["patterns"] = strs;
    entry["m"] = set.m();
    json delta;
    for (int n = 1; n <= 7; ++n) {
      cc::brute::MaxCodeResult r = cc::brute::max_code(n, set);
      delta[std::to_string(n)] = r.size;
    }
    entry["delta"] = delta;
    baselines[name] = std::move(entry);
  }
  write_file(root / "corpus" / "baselines.json", baselines.dump(2) + "\n");

  std::cout << "fixtures written to " << root << "\n";
  return 0;
}
