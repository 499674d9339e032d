#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "scembed/cstar.hpp"
#include "scembed/error.hpp"
#include "scembed/group_word.hpp"
#include "scembed/suffix_automaton.hpp"

using namespace scembed;

TEST_CASE("free reduction") {
  CHECK(free_reduce("aA") == "");
  CHECK(free_reduce("abBA") == "");
  CHECK(free_reduce("aba") == "aba");
  CHECK(inverse_of("abAB") == "baBA");
  CHECK_THROWS_AS(require_group_word("abc"), Error);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 2000; ++t) {
    const std::string w = oracle::random_group_word(rng, rng() % 30);
    const std::string r = free_reduce(w);
    REQUIRE(r == oracle::free_reduce(w));
    CHECK(free_reduce(r) == r);
    CHECK((w.size() - r.size()) % 2 == 0);
    CHECK(is_freely_reduced(r));
    CHECK(is_cyclically_reduced(r) == oracle::cyclically_reduced(r));
  }
}

TEST_CASE("cyclic words") {
  CHECK(CyclicWord("aab") == CyclicWord("aba"));
  CHECK_FALSE(CyclicWord("aab") == CyclicWord("abb"));
  CHECK(CyclicWord("bab").canonical() == "abb");
  CHECK_THROWS_AS(CyclicWord("abA"), Error);
  CHECK_THROWS_AS(CyclicWord("aAb"), Error);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    const std::string w = oracle::random_cyclically_reduced(rng, 1 + rng() % 12);
    CHECK(CyclicWord(w).canonical() == oracle::least_rotation(w));
  }
}

TEST_CASE("lcf and repeated factors, examples") {
  CHECK(lcf_cyclic(CyclicWord("aab"), CyclicWord("abb")) == 2);
  CHECK(lcf_cyclic(CyclicWord("aaa"), CyclicWord("bbb")) == 0);
  CHECK(lcf_cyclic(CyclicWord("abaB"), CyclicWord("abaB")) == 4);
  CHECK(repeated_factor_cyclic(CyclicWord("aab")) == 1);
  CHECK(repeated_factor_cyclic(CyclicWord("ab")) == 0);
  CHECK(repeated_factor_cyclic(CyclicWord("abab")) == 4);
  CHECK_THROWS_AS(repeated_factor_cyclic(CyclicWord("")), Error);
}

TEST_CASE("suffix automaton longest common factor matches brute force") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::string x = oracle::random_group_word(rng, 1 + rng() % 20);
    const std::string y = oracle::random_group_word(rng, 1 + rng() % 20);
    std::size_t best = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) {
        std::size_t l = 0;
        while (i + l < x.size() && j + l < y.size() && x[i + l] == y[j + l]) ++l;
        best = std::max(best, l);
      }
    SuffixAutomaton sam(x);
    auto m = sam.longest_common_factor(y, 1000);
    REQUIRE(m.length == best);
    if (best > 0) CHECK(x.substr(m.text_end + 1 - best, best) == y.substr(m.query_end + 1 - best, best));
  }
}

TEST_CASE("cyclic kernels agree with the rotation scan") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 1000; ++t) {
    // small alphabets make long overlaps common
    const std::string u = oracle::random_cyclically_reduced(rng, 1 + rng() % 24);
    const std::string v = oracle::random_cyclically_reduced(rng, 1 + rng() % 24);
    REQUIRE_MESSAGE(lcf_cyclic(CyclicWord(u), CyclicWord(v)) == oracle::lcf_cyclic(u, v), u << " " << v);
    REQUIRE(repeated_factor_cyclic(CyclicWord(u)) == oracle::repeated_factor(u));
    CHECK(lcf_cyclic(CyclicWord(inverse_of(u)), CyclicWord(inverse_of(v))) == lcf_cyclic(CyclicWord(u), CyclicWord(v)));
  }
  for (int t = 0; t < 300; ++t) {
    std::string u, v;
    for (std::size_t i = 1 + rng() % 24; i > 0; --i) u += "ab"[rng() % 2];
    for (std::size_t i = 1 + rng() % 24; i > 0; --i) v += "ab"[rng() % 2];
    REQUIRE(lcf_cyclic(CyclicWord(u), CyclicWord(v)) == oracle::lcf_cyclic(u, v));
    REQUIRE(repeated_factor_cyclic(CyclicWord(u)) == oracle::repeated_factor(u));
  }
}

TEST_CASE("check_cstar examples") {
  CHECK(check_cstar({"aab"}, Rational(9, 10)).passed);
  const auto bad = check_cstar({"aaaaaa"}, Rational(1, 2));
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.worst_self);
  CHECK(bad.worst_self->length == 6);
  CHECK_THROWS_AS(check_cstar({"aab", "abA"}, Rational(1, 2)), Error);
  CHECK_THROWS_AS(check_cstar({}, Rational(1, 2)), Error);
}

TEST_CASE("check_cstar agrees with brute force on random families") {
  std::mt19937_64 rng(5);
  int passes = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::string> family;
    const std::size_t size = 1 + rng() % 6;
    for (std::size_t i = 0; i < size; ++i) family.push_back(oracle::random_cyclically_reduced(rng, 4 + rng() % 21));
    const long den = 12;
    const long num = 1 + static_cast<long>(rng() % 11);
    const bool expected = oracle::cstar(family, num, den);
    const auto report = check_cstar(family, Rational(num, den));
    REQUIRE_MESSAGE(report.passed == expected, "t=" << t);
    passes += expected;
    // replacing a member by its inverse changes nothing
    auto flipped = family;
    flipped[0] = inverse_of(flipped[0]);
    CHECK(check_cstar(flipped, Rational(num, den)).passed == expected);
    CHECK(check_cstar(family, Rational(num, den), CstarOptions{3}).passed == expected);
  }
  CHECK(passes > 0);
  CHECK(passes < 1000);
}

TEST_CASE("overlap grows by at most 3x+2y under extension") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 1000; ++t) {
    const std::string a = oracle::random_cyclically_reduced(rng, 6 + rng() % 12);
    const std::string b = oracle::random_cyclically_reduced(rng, 6 + rng() % 12);
    const std::size_t y = 1 + rng() % 4;
    const std::string c = oracle::random_group_word(rng, 1 + rng() % y);
    const std::string d = oracle::random_group_word(rng, 1 + rng() % y);
    const std::string ac = a + c, bd = b + d;
    if (!oracle::cyclically_reduced(ac) || !oracle::cyclically_reduced(bd)) continue;
    const std::size_t x = oracle::lcf_cyclic(a, b);
    CHECK(lcf_cyclic(CyclicWord(ac), CyclicWord(bd)) <= 3 * x + 2 * y);
  }
}
