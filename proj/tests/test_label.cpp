#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "scembed/error.hpp"
#include "scembed/label.hpp"

using namespace scembed;

namespace {

WordFamily short_family() {
  FamilyConfig c;
  c.kind = FamilyKind::short_words;
  c.cutoff = false;
  return WordFamily(c);
}

FiniteMetricSpace matrix_space(const std::vector<std::vector<Rational>>& rows) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back(std::string(1, static_cast<char>('p' + i)));
  return FiniteMetricSpace::from_matrix(ids, rows, "p");
}

FiniteMetricSpace four_points() {
  const Rational a(11, 10), b(6, 5), c(13, 10), d(5, 4), e(6, 5), f(23, 20);
  return matrix_space({{0, a, b, c}, {a, 0, d, e}, {b, d, 0, f}, {c, e, f, 0}});
}

// Minimal ratios by linear search.
std::vector<std::uint64_t> scaling_oracle(const FiniteMetricSpace& s, const Exhaustion& ex, const std::vector<Net>& nets,
                                          const WordFamily& fam) {
  std::vector<std::uint64_t> ratios;
  std::uint64_t prev_ratio = 0, prev_n = 0;
  for (std::size_t i = 1; i <= nets.size(); ++i) {
    const std::uint64_t N = nets[i - 1].members.size();
    const std::uint64_t demand = N * (N - 1) / 2;
    std::uint64_t q = prev_ratio + 1;
    for (;; ++q) {
      if (i > 1 && ex.diameter(i - 1).compare(Rational(q, prev_n)) >= 0) continue;
      if (fam.sigma_lower_bound(q) < demand) continue;
      break;
    }
    (void)s;
    ratios.push_back(q);
    prev_ratio = q;
    prev_n = q * i;
  }
  return ratios;
}

struct Built {
  FiniteMetricSpace space;
  Exhaustion ex;
  std::vector<Net> nets;
  ScalingSequence scaling;
  std::vector<StageLabels> labels;
};

Built build(FiniteMetricSpace s, std::size_t stages) {
  Exhaustion ex(s, {});
  auto nets = build_nets(s, ex, stages);
  const WordFamily fam = short_family();
  auto scaling = choose_scaling(s, ex, nets, fam);
  auto labels = label_edges(s, nets, scaling, fam);
  return {std::move(s), std::move(ex), std::move(nets), std::move(scaling), std::move(labels)};
}

}  // namespace

TEST_CASE("scaling sequences are minimal and satisfy the three conditions") {
  const WordFamily fam = short_family();
  {
    auto s = matrix_space({{0}});
    Exhaustion ex(s, {});
    auto nets = build_nets(s, ex, 1);
    auto sc = choose_scaling(s, ex, nets, fam);
    CHECK(sc.stages[0].ratio == 1);
    CHECK(sc.stages[0].demand == 0);
  }
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::string> ids;
    std::vector<std::vector<Rational>> pts;
    for (int i = 0; i < 5; ++i) {
      ids.push_back("x" + std::to_string(i));
      pts.push_back({Rational(static_cast<long long>(i * 100 + rng() % 50), 100)});
    }
    auto s = FiniteMetricSpace::from_points(ids, pts, MetricKind::l2, "x0");
    Exhaustion ex(s, {ExhaustionPolicy::radius, {Rational(2), Rational(3)}, {}});
    auto nets = build_nets(s, ex, 4);
    auto sc = choose_scaling(s, ex, nets, fam);
    const auto expected = scaling_oracle(s, ex, nets, fam);
    REQUIRE(sc.stages.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(sc.stages[i].ratio == expected[i]);
      CHECK(sc.stages[i].n == expected[i] * (i + 1));
    }
    CHECK(check_scaling(s, ex, nets, fam, sc).ok());
    auto bumped = sc;
    bumped.stages.back().ratio += 1;
    bumped.stages.back().n = bumped.stages.back().ratio * bumped.stages.size();
    CHECK_FALSE(check_scaling(s, ex, nets, fam, bumped).minimal);
  }
}

TEST_CASE("labels") {
  CHECK(label_length(Distance::from_value(Rational(37, 100)), 1000) == 370);
  CHECK(label_length(Distance::from_square(2), 10) == 15);

  Built b = build(four_points(), 2);
  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& st : b.labels) {
    for (const auto& e : st.edges) {
      const Distance& d = b.space.distance(e.from, e.to);
      // ceil(n d) by exact comparison: n d <= len < n d + 1
      CHECK(d.compare_scaled(Rational(static_cast<long long>(st.n)), Rational(static_cast<long long>(e.length))) <= 0);
      CHECK(d.compare_scaled(Rational(static_cast<long long>(st.n)), Rational(static_cast<long long>(e.length) - 1)) > 0);
      CHECK(e.word().size() == e.length);
      CHECK(e.length > st.n / st.stage);
      CHECK(oracle::cyclically_reduced(e.word()));
      CHECK(st.oriented(e.to, e.from) == oracle::inverse(e.word()));
      CHECK(st.oriented(e.from, e.to) == e.word());
      seen.insert(oracle::least_rotation(e.word()));
      seen.insert(oracle::least_rotation(oracle::inverse(e.word())));
      total += 2;
    }
  }
  CHECK(seen.size() == total);
  CHECK(check_labels(b.space, b.labels).ok());
  CHECK_THROWS_AS(b.labels[0].oriented(0, 0), Error);

  auto corrupted = b.labels;
  corrupted[0].edges[0].source.word += "a";
  CHECK_FALSE(check_labels(b.space, corrupted).lengths);
  auto duplicated = b.labels;
  duplicated[0].edges[1].source.word = duplicated[0].edges[0].source.word;
  CHECK_FALSE(check_labels(b.space, duplicated).ok());
}

TEST_CASE("gamma words") {
  Built b = build(four_points(), 1);
  const StageLabels& st = b.labels[0];
  const auto& v = st.vertices;
  CHECK(gamma_word({1, {{v[0], v[1]}}}, st) == st.oriented(v[0], v[1]));
  CHECK(oracle::free_reduce(gamma_word({1, {{v[0], v[1]}, {v[1], v[0]}}}, st)).empty());
  CHECK(gamma_word({1, {{v[0], v[1]}, {v[1], v[2]}}}, st).size() ==
        st.oriented(v[0], v[1]).size() + st.oriented(v[1], v[2]).size());
  CHECK_THROWS_AS(gamma_word({1, {{v[0], v[1]}, {v[2], v[3]}}}, st), Error);

  std::mt19937_64 rng(22);
  for (int t = 0; t < 500; ++t) {
    Path p{1, {}};
    std::size_t at = v[rng() % v.size()];
    for (std::size_t len = 1 + rng() % 8; len > 0; --len) {
      std::size_t to;
      do to = v[rng() % v.size()]; while (to == at);
      p.edges.push_back({at, to});
      at = to;
    }
    REQUIRE(parse_gamma_word(gamma_word(p, st), st) == p);
  }
  CHECK_THROWS_AS(parse_gamma_word("a", st), Error);
  try {
    parse_gamma_word(st.oriented(v[0], v[1]) + "aB", st);
    FAIL("garbage accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_gamma_word);
    CHECK(std::string(e.what()).find(std::to_string(st.oriented(v[0], v[1]).size())) != std::string::npos);
  }
}

TEST_CASE("presentations") {
  {
    Built two = build(matrix_space({{0, Rational(3, 2)}, {Rational(3, 2), 0}}), 1);
    CHECK(emit_presentation(two.labels, {}).relators.empty());
  }
  {
    Built three = build(matrix_space({{0, Rational(11, 10), Rational(6, 5)},
                                      {Rational(11, 10), 0, Rational(13, 10)},
                                      {Rational(6, 5), Rational(13, 10), 0}}),
                        1);
    const Presentation p = emit_presentation(three.labels, {});
    REQUIRE(p.relators.size() == 1);
    std::size_t sum = 0;
    for (const auto& e : three.labels[0].edges) sum += e.length;
    CHECK(p.relators[0].word.size() == sum);
  }
  Built b = build(four_points(), 2);
  const Presentation tri = emit_presentation(b.labels, {});
  std::size_t expected = 0;
  for (const auto& st : b.labels) {
    const std::size_t n = st.vertices.size();
    expected += n * (n - 1) * (n - 2) / 6;
  }
  CHECK(tri.relators.size() == expected);
  for (const auto& r : tri.relators) {
    const Path p = parse_gamma_word(r.word, b.labels[r.stage - 1]);
    CHECK(p.closed());
    CHECK(p.irreducible());
  }

  PresentationOptions cyc;
  cyc.mode = PresentationMode::cycles;
  cyc.max_cycle_edges = 5;
  const Presentation all = emit_presentation(b.labels, cyc);
  // simple cycles of K_n with t edges: n!/((n-t)! 2t)
  std::size_t cycles = 0;
  for (const auto& st : b.labels) {
    const std::size_t n = st.vertices.size();
    for (std::size_t t = 3; t <= std::min<std::size_t>(n, 5); ++t) {
      std::size_t c = 1;
      for (std::size_t j = 0; j < t; ++j) c *= n - j;
      cycles += c / (2 * t);
    }
  }
  CHECK(all.relators.size() == cycles);
  for (const auto& r : all.relators) {
    if (r.cycle.size() > 3) CHECK(triangulates(r.cycle, b.labels[r.stage - 1], tri));
    CHECK(parse_gamma_word(r.word, b.labels[r.stage - 1]).closed());
  }

  PresentationOptions tight;
  tight.max_relators = 1;
  CHECK_THROWS_AS(emit_presentation(b.labels, tight), Error);
  tight = {};
  tight.max_letters = 10;
  CHECK_THROWS_AS(emit_presentation(b.labels, tight), Error);

  std::stringstream text;
  write_presentation_text(text, tri);
  std::vector<std::string> words;
  for (const auto& r : tri.relators) words.push_back(r.word);
  CHECK(read_presentation_text(text) == words);
  const std::string gap = presentation_gap(tri);
  CHECK(gap.rfind("<a, b | ", 0) == 0);

  const auto pj = presentation_to_json(b.space, tri, b.labels);
  const Presentation back = presentation_from_json(b.space, pj, words);
  REQUIRE(back.relators.size() == tri.relators.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(back.relators[i].cycle == tri.relators[i].cycle);
    CHECK(back.relators[i].stage == tri.relators[i].stage);
  }
  CHECK(presentation_to_json(b.space, back, b.labels) == pj);

  const auto lj = labels_to_json(b.space, b.labels);
  CHECK(labels_to_json(b.space, labels_from_json(b.space, lj)) == lj);
  const auto sj = scaling_to_json(b.scaling);
  CHECK(scaling_to_json(scaling_from_json(sj)) == sj);
}
