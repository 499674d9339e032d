#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "scembed/error.hpp"
#include "scembed/family.hpp"
#include "scembed/schedule.hpp"

using namespace scembed;

namespace {

// The block word straight from its definition, using brute-force catalogs.
std::string naive_block_word(std::uint64_t k, std::uint64_t i, unsigned r, unsigned l) {
  std::vector<std::string> catalog;
  for (const auto& w : oracle::all_positive_words(k - r - 2)) {
    if (!oracle::has_power(w, l)) catalog.push_back(w);
  }
  if (catalog.size() < (i + 1) * k) return {};
  std::string out;
  for (std::uint64_t j = 0; j < k; ++j) out += std::string(r, 'a') + "b" + catalog[i * k + j] + "b";
  return out;
}

FamilyConfig block_config(bool cutoff) {
  FamilyConfig c;
  c.kind = FamilyKind::block;
  c.cutoff = cutoff;
  return c;
}

}  // namespace

TEST_CASE("block words") {
  const BlockWord w = build_block_word(12, 0);
  CHECK(w.word.size() == 144);
  CHECK(w.word == naive_block_word(12, 0, 6, 6));
  CHECK_THROWS_AS(build_block_word(12, 1), Error);
  CHECK_THROWS_AS(build_block_word(9, 0), Error);
  CHECK_THROWS_AS(build_block_word(8, 0), Error);
  for (std::uint64_t k = 12; k <= 16; ++k) {
    const auto all = enumerate_A(k);
    REQUIRE(all.size() == oracle::count_aperiodic(k - 8, 6) / k);
    for (const auto& b : all) {
      CHECK(b.word.size() == k * k);
      CHECK(b.word == naive_block_word(k, b.index, 6, 6));
    }
  }
  CHECK(enumerate_A(12).size() == 1);
  CHECK(enumerate_A(13).size() == 2);
  CHECK(enumerate_A(14).size() == 4);
  CHECK(enumerate_A(11).empty());
  BlockParams small{2, 3};
  for (const auto& b : enumerate_A(7, small)) CHECK(b.word == naive_block_word(7, b.index, 2, 3));
}

TEST_CASE("parts are balanced and cover A_k") {
  for (std::uint64_t k = 12; k <= 18; ++k) {
    const std::uint64_t count = enumerate_A(k).size();
    std::vector<std::uint64_t> sizes(2 * k + 1, 0);
    for (std::uint64_t i = 0; i < count; ++i) ++sizes[part_of(i, k) - 1];
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*hi - *lo <= 1);
    std::uint64_t total = 0;
    for (auto s : sizes) total += s;
    CHECK(total == count);
  }
}

TEST_CASE("build_T") {
  WordFamily fam(block_config(false));
  const auto t144 = build_T(fam, 144, 1);
  REQUIRE(t144.size() == 1);
  CHECK(t144[0].word == build_block_word(12, 0).word);
  CHECK(t144[0].pad == 0);
  CHECK(t144[0].part == 1);
  CHECK_THROWS_AS(build_T(fam, 145, 1), Error);
  CHECK_THROWS_AS(build_T(fam, 143, 1), Error);
  CHECK(fam.materialize(100, 5).empty());
  CHECK_THROWS_AS(fam.materialize(80, 1), Error);
  CHECK(fam.first_nonempty_length() == 144);

  // padding and distinctness over a range of lengths
  std::map<std::uint64_t, std::uint64_t> demand;
  for (std::uint64_t n = 144; n <= 400; ++n) demand[n] = 3;
  auto all = fam.materialize_many(demand);
  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& [n, records] : all) {
    const auto mat = fam.sigma_materialized(n);
    REQUIRE(mat);
    CHECK(records.size() == std::min<std::uint64_t>(3, *mat));
    CHECK(*mat >= fam.sigma_lower_bound(n));
    for (const auto& r : records) {
      CHECK(r.word.size() == n);
      CHECK(r.pad * r.pad < 4 * n);
      const double core = static_cast<double>(n - r.pad);
      CHECK(core >= std::pow(std::sqrt(static_cast<double>(n)) - 1, 2));
      CHECK(r.word.substr(0, n - r.pad) == naive_block_word(r.k, r.index, 6, 6));
      CHECK(r.word.substr(n - r.pad) == std::string(r.pad, 'b'));
      CHECK(r.part == n - r.k * r.k + 1);
      seen.insert(r.word);
      ++total;
    }
  }
  CHECK(seen.size() == total);
  CHECK(total > 20);

  WordFamily strict(block_config(true));
  CHECK(strict.materialize(400, 3).empty());
  CHECK(strict.lambda().cutoff_n() == 303601);
}

TEST_CASE("unbounded demand stops at the catalog") {
  const WordFamily fam(block_config(false));
  CHECK(fam.materialize(144, UINT64_MAX).size() == 1);
  CHECK(fam.materialize(150, UINT64_MAX).empty());
  const auto many = fam.materialize_many({{197, UINT64_MAX}, {400, UINT64_MAX}});
  CHECK(many.at(197).size() == 1);
  CHECK(many.at(400).size() == enumerate_A(20).size() / 41 + (enumerate_A(20).size() % 41 > 0 ? 1 : 0));
}

TEST_CASE("lambda schedule") {
  CHECK(lambda_raw(2500) == Rational(9, 50) + Rational(100, 2400));
  CHECK(lambda_raw(1000000) == Rational(9, 1000) + Rational(2000, 998000));
  CHECK(std::abs(to_double(lambda_raw(1000000)) - 0.011004) < 1e-6);
  // non-squares stay within a hair of the real formula and never below it
  for (std::uint64_t n : {82ull, 150ull, 999ull, 12345ull, 303600ull}) {
    const double raw = to_double(lambda_raw(n));
    CHECK(raw >= oracle::lambda_raw(static_cast<double>(n)) - 1e-12);
    CHECK(raw - oracle::lambda_raw(static_cast<double>(n)) < 1e-8);
  }
  const std::uint64_t cut = lambda_cutoff(Rational(1, 50));
  CHECK(cut == 303601);
  CHECK(lambda_envelope(cut) <= Rational(1, 50));
  CHECK(lambda_envelope(cut - 1) > Rational(1, 50));

  // the envelope equals the running max over a long tail
  const std::uint64_t lo = 81, hi = 20000;
  std::vector<Rational> tail_max(hi - lo + 1);
  Rational running = 0;
  for (std::uint64_t n = hi + 2 * 142 + 1; n > hi; --n) running = std::max(running, lambda_raw(n));
  for (std::uint64_t n = hi; n >= lo; --n) {
    running = std::max(running, lambda_raw(n));
    tail_max[n - lo] = running;
  }
  for (std::uint64_t n = lo; n <= hi; n += 7) REQUIRE(lambda_envelope(n) == tail_max[n - lo]);

  LambdaSchedule strict(true, Rational(1, 50));
  CHECK(strict.effective(1000) == Rational(1, 50));
  CHECK(strict.effective(cut) == Rational(1, 50));
  CHECK(strict.effective(cut + 1) < Rational(1, 50));
  LambdaSchedule relaxed(false, Rational(1, 50));
  CHECK(relaxed.effective(3) == lambda_envelope(81));
}

TEST_CASE("sigma bounds") {
  WordFamily fam(block_config(false));
  CHECK(fam.sigma_lower_bound(144) == 0);
  CHECK(fam.sigma_lower_bound(289) == 0);
  CHECK(block_sigma_bound(17, 6) == std::uint64_t(std::floor(std::floor(std::pow(1.5, 9) / 17) / 35)));
  std::uint64_t prev = 0;
  for (std::uint64_t n = 81; n < 200000; n += 97) {
    const std::uint64_t s = fam.sigma_lower_bound(n);
    CHECK(s >= prev);
    prev = s;
  }
  CHECK(prev > 0);
  for (std::uint64_t n : {289ull, 400ull, 441ull, 500ull}) {
    const auto mat = fam.sigma_materialized(n);
    REQUIRE(mat);
    CHECK(*mat >= fam.sigma_lower_bound(n));
  }
}

TEST_CASE("short family matches brute force") {
  for (std::uint64_t n = 1; n <= 7; ++n) {
    std::vector<std::string> expected;
    std::vector<std::string> words = {""};
    for (std::uint64_t i = 0; i < n; ++i) {
      std::vector<std::string> next;
      for (const auto& w : words)
        for (char c : std::string("ABab")) next.push_back(w + c);
      words = std::move(next);
    }
    for (const auto& w : words) {
      if (!oracle::cyclically_reduced(w)) continue;
      bool power = false;
      for (std::size_t p = 1; p < n && !power; ++p) power = n % p == 0 && oracle::rotation(w, p) == w;
      if (power) continue;
      if (oracle::least_rotation(w) != w) continue;
      if (w > oracle::least_rotation(oracle::inverse(w))) continue;
      expected.push_back(w);
    }
    CHECK(short_family_words(n, UINT64_MAX) == expected);
    FamilyConfig c;
    c.kind = FamilyKind::short_words;
    WordFamily fam(c);
    CHECK(fam.sigma_lower_bound(n) <= expected.size());
    CHECK(fam.sigma_materialized(n) == expected.size());
    CHECK(primitive_cyclically_reduced_count(n) >= expected.size());
  }
  CHECK(short_family_words(4, 3).size() == 3);
}
