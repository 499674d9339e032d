#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "scembed/aperiodic.hpp"
#include "scembed/error.hpp"

using namespace scembed;

TEST_CASE("is_l_aperiodic examples") {
  CHECK_FALSE(is_l_aperiodic("aaaaaa", 6));
  CHECK(is_l_aperiodic("ab", 6));
  CHECK_FALSE(is_l_aperiodic("abababababab", 6));
  CHECK(is_l_aperiodic("", 6));
  CHECK(is_l_aperiodic("aaaaa", 6));
  CHECK_FALSE(is_l_aperiodic("aa", 2));
  CHECK_THROWS_AS(is_l_aperiodic("ab", 1), Error);
}

TEST_CASE("is_l_aperiodic agrees with the period scan on random words") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t len = rng() % 65;
    // skewed letter frequencies so that powers actually occur
    const unsigned bias = 1 + rng() % 7;
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += (rng() % 8 < bias) ? 'a' : 'b';
    const unsigned l = 2 + rng() % 5;
    REQUIRE_MESSAGE(is_l_aperiodic(w, l) == !oracle::has_power(w, l), w << " l=" << l);
  }
}

TEST_CASE("catalog matches brute force for k <= 18") {
  for (unsigned l : {3u, 6u}) {
    for (std::size_t k = 0; k <= 18; ++k) {
      if (l == 3 && k > 14) break;
      std::vector<std::string> expected;
      for (const auto& w : oracle::all_positive_words(k)) {
        if (!oracle::has_power(w, l)) expected.push_back(w);
      }
      AperiodicCatalog cat(k, l);
      std::vector<std::string> got;
      while (const std::string* w = cat.next()) got.push_back(*w);
      REQUIRE_MESSAGE(got == expected, "k=" << k << " l=" << l);
      CHECK(cat.exhausted());
      CHECK(count_aperiodic(k, l, UINT64_MAX) == expected.size());
    }
  }
}

TEST_CASE("catalog counts") {
  const std::uint64_t f[] = {1, 2, 4, 8, 16, 32, 62, 122, 240, 472, 928, 1824, 3584};
  for (std::size_t k = 0; k < std::size(f); ++k) CHECK(count_aperiodic(k, 6, UINT64_MAX) == f[k]);
  CHECK(count_aperiodic(4, 6, 100) == 16);
  CHECK(count_aperiodic(6, 6, 10) == 10);
  CHECK(count_aperiodic(0, 6, 5) == 1);
  AperiodicCatalog one(1, 6);
  CHECK(*one.next() == "a");
  CHECK(*one.next() == "b");
  CHECK(one.next() == nullptr);
}

TEST_CASE("catalog resumes from a checkpoint") {
  AperiodicCatalog full(12, 6);
  std::vector<std::string> all;
  while (const std::string* w = full.next()) all.push_back(*w);
  for (std::size_t cut : {std::size_t(0), std::size_t(5), all.size() / 2, all.size() - 1}) {
    auto resumed = AperiodicCatalog::resume(all[cut], 6);
    std::vector<std::string> rest;
    while (const std::string* w = resumed.next()) rest.push_back(*w);
    CHECK(rest == std::vector<std::string>(all.begin() + cut + 1, all.end()));
  }
  // a non-aperiodic checkpoint resumes at the next aperiodic word
  auto from_power = AperiodicCatalog::resume("aaaaaabbbbbb", 6);
  const std::string* w = from_power.next();
  REQUIRE(w != nullptr);
  CHECK(*w == *std::upper_bound(all.begin(), all.end(), std::string("aaaaaabbbbbb")));

  std::stringstream io;
  write_checkpoints(io, {"ab", "ba"});
  CHECK(read_checkpoints(io) == std::vector<std::string>{"ab", "ba"});
}

TEST_CASE("catalog yields are strictly increasing") {
  AperiodicCatalog cat(16, 6);
  std::string prev;
  std::uint64_t n = 0;
  while (const std::string* w = cat.next()) {
    if (n++) REQUIRE(prev < *w);
    prev = *w;
  }
  CHECK(n == cat.yielded());
}
