#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fibfsm/subshift.hpp>

using namespace fibfsm;

namespace {

std::set<std::string> as_strings(const SubwordSet& s) {
  std::set<std::string> out;
  for (const auto& w : s.words)
    out.insert(w.str());
  return out;
}

// Brute-force enumeration of all complete parses (prefix + blocks, no
// remainder) under the rightward grammar.  Used to certify that the
// deterministic lookahead parse is the unique one.
int count_complete_right_parses(const std::string& s) {
  std::function<int(std::size_t)> go = [&](std::size_t i) -> int {
    if (i == s.size())
      return 1;
    int total = 0;
    if (s.compare(i, 3, "101") == 0)
      total += go(i + 3);
    if (s.compare(i, 2, "01") == 0)
      total += go(i + 2);
    return total;
  };
  int total = go(0); // prefix eps
  // prefix "1" is admissible only where no block could start: at "11"
  if (s.size() >= 2 && s[0] == '1' && s[1] == '1')
    total += go(1);
  return total;
}

} // namespace

TEST_CASE("subword sets for short lengths match the known table") {
  CHECK(as_strings(enumerate_subwords(1)) == std::set<std::string>{"0", "1"});
  CHECK(as_strings(enumerate_subwords(2)) ==
        std::set<std::string>{"01", "10", "11"});
  CHECK(as_strings(enumerate_subwords(3)) ==
        std::set<std::string>{"010", "011", "101", "110"});
  CHECK(as_strings(enumerate_subwords(4)) ==
        std::set<std::string>{"0101", "0110", "1010", "1011", "1101"});
}

TEST_CASE("subword complexity is n+1") {
  auto counts = subword_complexity(25);
  REQUIRE(counts.size() == 25);
  for (std::size_t n = 1; n <= 25; ++n)
    CHECK(counts[n - 1] == n + 1);
  CHECK(subword_complexity(1) == std::vector<std::size_t>{2});
}

TEST_CASE("hull samples") {
  PotentialWindow w = hull_sample(0, 2);
  CHECK(w.letters.str() == "11010");
  CHECK(w.start == -2);

  PotentialWindow far = hull_sample(BigInt(1000000), 3);
  CHECK(far.letters.size() == 7);
  CHECK(far.letters == window(BigInt(1000000) - 3, BigInt(1000000) + 3).letters);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> shifts(-1000000, 1000000);
  for (int i = 0; i < 20; ++i) {
    PotentialWindow h = hull_sample(shifts(rng), 40);
    CHECK_FALSE(h.letters.contains("00"));
    CHECK_FALSE(h.letters.contains("111"));
  }
}

TEST_CASE("hull windows only contain genuine subwords") {
  auto ten = as_strings(enumerate_subwords(10));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> shifts(-1000000, 1000000);
  for (int i = 0; i < 10; ++i) {
    std::string s = hull_sample(shifts(rng), 100).letters.str();
    for (std::size_t k = 0; k + 10 <= s.size(); ++k)
      CHECK(ten.count(s.substr(k, 10)) == 1);
  }
}

TEST_CASE("parse_right examples") {
  BlockParse p = parse_right(BinaryWord("101101011011"));
  CHECK(p.prefix.is_empty());
  REQUIRE(p.blocks.size() == 4);
  CHECK(p.blocks[0].str() == "101");
  CHECK(p.blocks[1].str() == "101");
  CHECK(p.blocks[2].str() == "01");
  CHECK(p.blocks[3].str() == "101");
  CHECK(p.partial.str() == "1");
  CHECK(p.concatenated().str() == "101101011011");

  BlockParse q = parse_right(BinaryWord("1101"));
  CHECK(q.prefix.str() == "1");
  REQUIRE(q.blocks.size() == 1);
  CHECK(q.blocks[0].str() == "101");
  CHECK(q.partial.is_empty());

  CHECK_THROWS_AS(parse_right(BinaryWord("10010")), NotAFibonacciFactor);
  CHECK_THROWS_AS(parse_right(BinaryWord("11101")), NotAFibonacciFactor);
}

TEST_CASE("parse_left examples") {
  BlockParse p = parse_left(BinaryWord("10110101"));
  CHECK(p.direction == ParseDirection::leftward);
  CHECK(p.concatenated().str() == "10110101");
  REQUIRE_FALSE(p.blocks.empty());
  // rightmost block first
  CHECK(p.blocks[0].str() == "101");

  BlockParse q = parse_left(BinaryWord("01101"));
  CHECK(q.concatenated().str() == "01101");

  CHECK_THROWS_AS(parse_left(BinaryWord("100")), NotAFibonacciFactor);
}

TEST_CASE("parse totality on seeded hull windows") {
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<long> shifts(-1000000, 1000000);
  for (int i = 0; i < 100; ++i) {
    long s = shifts(rng);
    PotentialWindow h = hull_sample(s, 500);
    BlockParse r = parse_right(h.letters);
    BlockParse l = parse_left(h.letters);
    CHECK(r.concatenated() == h.letters);
    CHECK(l.concatenated() == h.letters);
    CHECK(r.blocks.size() >= 300);
    CHECK(l.blocks.size() >= 300);
  }
}

TEST_CASE("reflection consistency between the two parses") {
  // reversing a factor swaps the roles of the two grammars: the leftward
  // parse of w matches the rightward parse of w^R with 01 <-> 10
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> shifts(-100000, 100000);
  for (int i = 0; i < 20; ++i) {
    PotentialWindow h = hull_sample(shifts(rng), 60);
    BlockParse l = parse_left(h.letters);
    BlockParse r = parse_right(reverse(h.letters));
    CHECK(l.blocks.size() == r.blocks.size());
    for (std::size_t k = 0; k < l.blocks.size(); ++k)
      CHECK(l.blocks[k] == reverse(r.blocks[k]));
  }
}

TEST_CASE("parse uniqueness over all subwords of length <= 12") {
  for (std::size_t len = 1; len <= 12; ++len) {
    for (const auto& w : enumerate_subwords(len).words) {
      int n = count_complete_right_parses(w.str());
      CHECK(n <= 1);
      if (n == 1) {
        // the deterministic parse must be that complete parse
        BlockParse p = parse_right(w);
        CHECK(p.partial.is_empty());
      }
    }
  }
}

TEST_CASE("central motif") {
  BigInt off = central_motif_locate();
  CHECK(central_motif().size() == 14);
  PotentialWindow w = window(off, off + 13);
  CHECK(w.letters.str() == central_motif());
  // the motif also recurs within the first 10^4 letters
  CHECK(window(1, 10000).letters.contains(central_motif()));
}
