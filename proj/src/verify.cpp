#include "scembed/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "scembed/error.hpp"
#include "scembed/group_word.hpp"

namespace scembed {

using nlohmann::json;

namespace {

bool is_vertex(const StageLabels& stage, std::size_t v) {
  return std::binary_search(stage.vertices.begin(), stage.vertices.end(), v);
}

std::size_t vertex_slot(const StageLabels& stage, std::size_t v) {
  return static_cast<std::size_t>(std::lower_bound(stage.vertices.begin(), stage.vertices.end(), v) -
                                  stage.vertices.begin());
}

// All-pairs shortest paths over Gamma_i with weights |phi(e)|.
std::vector<std::uint64_t> shortest_paths(const StageLabels& stage) {
  const std::size_t n = stage.vertices.size();
  constexpr std::uint64_t inf = UINT64_MAX / 4;
  std::vector<std::uint64_t> d(n * n, inf);
  for (std::size_t a = 0; a < n; ++a) d[a * n + a] = 0;
  for (const auto& e : stage.edges) {
    const std::size_t a = vertex_slot(stage, e.from);
    const std::size_t b = vertex_slot(stage, e.to);
    if (a >= n || b >= n) continue;
    const std::uint64_t w = e.word().size();
    d[a * n + b] = std::min(d[a * n + b], w);
    d[b * n + a] = std::min(d[b * n + a], w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        d[a * n + b] = std::min(d[a * n + b], d[a * n + k] + d[k * n + b]);
      }
    }
  }
  return d;
}

PairBound bound_with(const FiniteMetricSpace& space, const StageLabels& stage, std::size_t x, std::size_t y,
                     std::uint64_t sp) {
  PairBound out;
  out.x = x;
  out.y = y;
  if (x == y) {
    out.upper = 0;
    return out;
  }
  const Distance& d = space.distance(x, y);
  const Rational factor = 1 - 2 * stage.lambda;
  const auto e = stage.find(x, y);
  const std::uint64_t ceil_nd = label_length(d, stage.n);
  out.distance = d.to_double();
  out.lower = to_double(factor) * out.distance;
  out.upper = Rational(BigInt(ceil_nd), BigInt(stage.n));
  out.witness_length = e ? stage.edges[*e].word().size() : 0;
  out.shortest_path = sp;
  out.lower_ok = d.scaled_at_most(factor, Rational(BigInt(sp), BigInt(stage.n)));
  // upper <= d + 1/n  <=>  (ceil(nd) - 1)/n <= d
  const bool slack = ceil_nd == 0 || d.compare(Rational(BigInt(ceil_nd - 1), BigInt(stage.n))) >= 0;
  out.upper_ok = e && sp <= out.witness_length && out.witness_length <= ceil_nd && slack &&
                 d.scaled_at_most(factor, out.upper);
  if (factor > 0) out.gap = to_double(out.upper) / out.lower;
  return out;
}

}  // namespace

PairBound distortion_bounds(const FiniteMetricSpace& space, const StageLabels& stage, std::size_t x, std::size_t y) {
  if (!is_vertex(stage, x) || !is_vertex(stage, y)) {
    throw Error(ErrorCode::unknown_pair, "pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                             ") is not in the stage-" + std::to_string(stage.stage) + " net");
  }
  const auto sp = shortest_paths(stage);
  const std::size_t n = stage.vertices.size();
  return bound_with(space, stage, x, y, sp[vertex_slot(stage, x) * n + vertex_slot(stage, y)]);
}

SandwichReport sandwich_report(const FiniteMetricSpace& space, const StageLabels& stage) {
  SandwichReport out;
  out.stage = stage.stage;
  const auto sp = shortest_paths(stage);
  const std::size_t n = stage.vertices.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      PairBound p = bound_with(space, stage, stage.vertices[a], stage.vertices[b], sp[a * n + b]);
      if (!p.ok()) out.passed = false;
      if (p.gap && (!out.max_gap || *p.gap > *out.max_gap)) out.max_gap = p.gap;
      out.pairs.push_back(std::move(p));
    }
  }
  const Rational factor = 1 - 2 * stage.lambda;
  if (auto dmin = space.min_separation(stage.vertices); dmin && factor > 0) {
    out.gap_bound = (1.0 + 1.0 / (static_cast<double>(stage.n) * dmin->to_double())) / to_double(factor);
    if (out.max_gap && *out.max_gap > *out.gap_bound * (1 + 1e-12)) out.passed = false;
  }
  return out;
}

RetentionReport retention_check(const StageLabels& stage, std::size_t trials, std::uint64_t seed,
                                std::size_t max_edges) {
  RetentionReport out;
  out.stage = stage.stage;
  out.trials = trials;
  out.max_edges = max_edges;
  out.seed = seed;
  const std::size_t nv = stage.vertices.size();
  if (nv < 2 || max_edges == 0) return out;
  const Rational factor = 1 - 2 * stage.lambda;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t want = 1 + static_cast<std::size_t>(rng() % max_edges);
    std::vector<std::size_t> walk{stage.vertices[rng() % nv]};
    while (walk.size() <= want) {
      const std::size_t cur = walk.back();
      const std::size_t prev = walk.size() >= 2 ? walk[walk.size() - 2] : cur;
      std::vector<std::size_t> options;
      for (std::size_t v : stage.vertices) {
        if (v != cur && v != prev) options.push_back(v);
      }
      if (options.empty()) break;
      walk.push_back(options[rng() % options.size()]);
    }
    std::string word;
    for (std::size_t j = 1; j < walk.size(); ++j) word += stage.oriented(walk[j - 1], walk[j]);
    const std::size_t kept = free_reduce(word).size();
    ++out.sampled;
    const Rational ratio(BigInt(kept), BigInt(word.size()));
    if (Rational(BigInt(kept)) < factor * BigInt(word.size())) ++out.violations;
    if (out.worst_walk.empty() || ratio < out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_walk = walk;
    }
  }
  out.passed = out.violations == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Cayley ball

namespace {

constexpr char kLetters[4] = {'a', 'b', 'A', 'B'};

int letter_code(char c) {
  switch (c) {
    case 'a': return 0;
    case 'b': return 1;
    case 'A': return 2;
    case 'B': return 3;
  }
  return -1;
}

constexpr int inverse_code(int x) { return (x + 2) % 4; }

std::string cyclic_reduce(std::string w) {
  w = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == inverse_letter(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return w.substr(lo, hi - lo);
}

using Perm = std::array<std::uint8_t, 8>;

std::uint64_t perm_key(const Perm& p, unsigned m) {
  std::uint64_t k = 0;
  for (unsigned i = 0; i < m; ++i) k = k * 8 + p[i];
  return k;
}

Perm compose(const Perm& p, const Perm& q, unsigned m) {  // p then q
  Perm r{};
  for (unsigned i = 0; i < m; ++i) r[i] = q[p[i]];
  return r;
}

Perm invert(const Perm& p, unsigned m) {
  Perm r{};
  for (unsigned i = 0; i < m; ++i) r[p[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm identity_perm(unsigned m) {
  Perm r{};
  for (unsigned i = 0; i < m; ++i) r[i] = static_cast<std::uint8_t>(i);
  return r;
}

void partitions(unsigned m, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned p = std::min(m, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(m - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

CayleyBall::CayleyBall(const std::vector<std::string>& relators, OracleOptions options) : options_(options) {
  const unsigned R = options_.radius;
  BigInt total = 1;
  BigInt layer = 4;
  for (unsigned r = 1; r <= R; ++r) {
    total += layer;
    layer *= 3;
  }
  if (total > BigInt(options_.max_ball)) {
    throw Error(ErrorCode::ball_overflow, "ball of radius " + std::to_string(R) + " has " + total.str() +
                                              " free words, cap is " + std::to_string(options_.max_ball));
  }
  const std::size_t count = total.convert_to<std::size_t>();

  // free words of length <= R in breadth-first order
  std::vector<std::int32_t> parent_word;   // word minus its last letter
  std::vector<std::int8_t> last;
  words_.reserve(count);
  words_.push_back("");
  parent_word.push_back(-1);
  last.push_back(-1);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k].size() == R) continue;
    for (int x = 0; x < 4; ++x) {
      if (last[k] >= 0 && x == inverse_code(last[k])) continue;
      words_.push_back(words_[k] + kLetters[x]);
      parent_word.push_back(static_cast<std::int32_t>(k));
      last.push_back(static_cast<std::int8_t>(x));
    }
  }
  for (std::size_t k = 0; k < words_.size(); ++k) index_.emplace(words_[k], k);

  // neighbour tables: reduce(w x) and reduce(x w), -1 outside the ball
  std::vector<std::array<std::int32_t, 4>> right(words_.size()), left(words_.size());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    const std::string& w = words_[k];
    for (int x = 0; x < 4; ++x) {
      const char c = kLetters[x];
      std::string r = (!w.empty() && w.back() == inverse_letter(c)) ? w.substr(0, w.size() - 1) : w + c;
      std::string l = (!w.empty() && w.front() == inverse_letter(c)) ? w.substr(1) : std::string(1, c) + w;
      auto ri = index_.find(r);
      auto li = index_.find(l);
      right[k][x] = ri == index_.end() ? -1 : static_cast<std::int32_t>(ri->second);
      left[k][x] = li == index_.end() ? -1 : static_cast<std::int32_t>(li->second);
    }
  }

  parent_.resize(words_.size());
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});

  std::set<std::string> rels;
  std::vector<std::string> reduced_relators;
  for (const auto& r : relators) {
    require_group_word(r);
    std::string c = cyclic_reduce(r);
    if (c.empty()) continue;
    reduced_relators.push_back(c);
    for (const std::string& base : {c, inverse_of(c)}) {
      for (std::size_t s = 0; s < base.size(); ++s) rels.insert(rotate(base, s));
    }
  }
  const bool free_group = reduced_relators.empty();

  // relator splits: w s ~ w t^-1 for every rotation s t of a relator
  for (std::size_t k = 0; k < words_.size(); ++k) {
    for (const auto& rho : rels) {
      const std::string inv = inverse_of(rho);
      const std::size_t L = rho.size();
      std::vector<std::int32_t> fwd(L + 1, -1), bwd(L + 1, -1);
      fwd[0] = bwd[0] = static_cast<std::int32_t>(k);
      for (std::size_t j = 0; j < L && fwd[j] >= 0; ++j) fwd[j + 1] = right[fwd[j]][letter_code(rho[j])];
      for (std::size_t j = 0; j < L && bwd[j] >= 0; ++j) bwd[j + 1] = right[bwd[j]][letter_code(inv[j])];
      for (std::size_t j = 0; j <= L; ++j) {
        if (fwd[j] >= 0 && bwd[L - j] >= 0) unite(fwd[j], bwd[L - j]);
      }
    }
  }

  // two-sided congruence closure restricted to the ball
  if (!free_group) {
    bool changed = true;
    std::vector<std::array<std::int32_t, 4>> target(words_.size());
    while (changed) {
      changed = false;
      for (auto* table : {&right, &left}) {
        for (auto& t : target) t.fill(-1);
        for (std::size_t k = 0; k < words_.size(); ++k) {
          const std::size_t r = find(k);
          for (int x = 0; x < 4; ++x) {
            const std::int32_t v = (*table)[k][x];
            if (v < 0) continue;
            std::int32_t& slot = target[r][x];
            if (slot < 0) {
              slot = v;
            } else if (unite(slot, v)) {
              changed = true;
            }
          }
        }
      }
    }
  }

  // lower bounds
  lower_.assign(words_.size(), 0);
  if (free_group) {
    for (std::size_t k = 0; k < words_.size(); ++k) lower_[k] = static_cast<unsigned>(words_[k].size());
  } else {
    // abelianization Z^2 / L
    std::vector<std::array<long long, 2>> vecs;
    for (const auto& r : reduced_relators) {
      long long ea = 0, eb = 0;
      for (char c : r) {
        ea += c == 'a' ? 1 : c == 'A' ? -1 : 0;
        eb += c == 'b' ? 1 : c == 'B' ? -1 : 0;
      }
      if (ea != 0 || eb != 0) vecs.push_back({ea, eb});
    }
    bool rank_two = false;
    std::array<long long, 2> gen{0, 0};
    for (const auto& v : vecs) {
      if (gen[0] == 0 && gen[1] == 0) {
        gen = v;
        continue;
      }
      if (gen[0] * v[1] - gen[1] * v[0] != 0) {
        rank_two = true;
        break;
      }
      // parallel: gen <- gcd-combination along the common primitive direction
      const long long g = std::gcd(std::llabs(gen[0]), std::llabs(gen[1]));
      const std::array<long long, 2> dir{gen[0] / g, gen[1] / g};
      const long long cv = dir[0] != 0 ? v[0] / dir[0] : v[1] / dir[1];
      const long long c = std::gcd(g, std::llabs(cv));
      gen = {dir[0] * c, dir[1] * c};
    }
    if (!rank_two) {
      for (std::size_t k = 0; k < words_.size(); ++k) {
        long long ua = 0, ub = 0;
        for (char c : words_[k]) {
          ua += c == 'a' ? 1 : c == 'A' ? -1 : 0;
          ub += c == 'b' ? 1 : c == 'B' ? -1 : 0;
        }
        long long best = std::llabs(ua) + std::llabs(ub);
        if (gen[0] != 0 || gen[1] != 0) {
          std::vector<long long> ts{0};
          for (int c = 0; c < 2; ++c) {
            if (gen[c] == 0) continue;
            const long long u = c == 0 ? ua : ub;
            const long long t0 = -u / gen[c];
            for (long long d = -1; d <= 1; ++d) ts.push_back(t0 + d);
          }
          for (long long t : ts) best = std::min(best, std::llabs(ua + t * gen[0]) + std::llabs(ub + t * gen[1]));
        }
        lower_[k] = static_cast<unsigned>(best);
      }
    }

    // homomorphisms onto subgroups of S_m: a -> conjugacy class representative
    for (unsigned m = 2; m <= std::min(options_.max_quotient_degree, 8u); ++m) {
      std::vector<Perm> all;
      Perm p = identity_perm(m);
      do {
        all.push_back(p);
      } while (std::next_permutation(p.begin(), p.begin() + m));
      std::vector<std::vector<unsigned>> parts;
      std::vector<unsigned> cur;
      partitions(m, m, cur, parts);
      for (const auto& part : parts) {
        Perm alpha = identity_perm(m);
        unsigned at = 0;
        for (unsigned len : part) {
          for (unsigned j = 0; j < len; ++j) alpha[at + j] = static_cast<std::uint8_t>(at + (j + 1) % len);
          at += len;
        }
        for (const Perm& beta : all) {
          const std::array<Perm, 4> gens{alpha, beta, invert(alpha, m), invert(beta, m)};
          bool kills = true;
          for (const auto& r : reduced_relators) {
            Perm acc = identity_perm(m);
            for (char c : r) acc = compose(acc, gens[letter_code(c)], m);
            if (acc != identity_perm(m)) {
              kills = false;
              break;
            }
          }
          if (!kills) continue;
          ++quotients_;
          // word lengths in the image group
          std::unordered_map<std::uint64_t, unsigned> dist;
          std::vector<Perm> frontier{identity_perm(m)};
          dist.emplace(perm_key(identity_perm(m), m), 0);
          for (unsigned level = 1; !frontier.empty(); ++level) {
            std::vector<Perm> next;
            for (const Perm& g : frontier) {
              for (const Perm& x : gens) {
                Perm h = compose(g, x, m);
                if (dist.emplace(perm_key(h, m), level).second) next.push_back(h);
              }
            }
            frontier = std::move(next);
          }
          std::vector<Perm> image(words_.size());
          image[0] = identity_perm(m);
          for (std::size_t k = 1; k < words_.size(); ++k) {
            image[k] = compose(image[parent_word[k]], gens[last[k]], m);
            lower_[k] = std::max(lower_[k], dist[perm_key(image[k], m)]);
          }
        }
      }
    }
  }

  // classes
  class_upper_.assign(words_.size(), UINT32_MAX);
  class_lower_.assign(words_.size(), 0);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    const std::size_t r = find(k);
    class_upper_[r] = std::min<unsigned>(class_upper_[r], static_cast<unsigned>(words_[k].size()));
    class_lower_[r] = std::max(class_lower_[r], lower_[k]);
  }
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (find(k) == k) ++classes_;
  }
}

std::size_t CayleyBall::find(std::size_t x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool CayleyBall::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  // keep the earlier (shorter) word as root
  if (y < x) std::swap(x, y);
  parent_[y] = x;
  return true;
}

std::optional<std::size_t> CayleyBall::lookup(const std::string& reduced) const {
  auto it = index_.find(reduced);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CayleyBall::Bound CayleyBall::distance(std::string_view word) const {
  const std::string w = free_reduce(word);
  Bound b;
  auto k = lookup(w);
  if (!k) {
    b.upper = static_cast<unsigned>(w.size());
    return b;
  }
  const std::size_t r = find(*k);
  // union-find roots are minimal indices, i.e. shortest members
  b.upper = class_upper_[r];
  b.lower = class_lower_[r];
  if (b.lower > *b.upper) throw Error(ErrorCode::infeasible, "oracle lower bound exceeds upper bound for '" + w + "'");
  return b;
}

std::size_t CayleyBall::ball_size(unsigned r) const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (find(k) == k && class_upper_[k] <= r) ++n;
  }
  return n;
}

OracleReport oracle_report(const FiniteMetricSpace& space, const StageLabels& stage, const CayleyBall& ball) {
  OracleReport out;
  out.ran = true;
  out.radius = ball.radius();
  out.ball_words = ball.word_count();
  out.ball_classes = ball.class_count();
  out.quotients = ball.quotient_count();
  const std::size_t o = space.basepoint();
  auto alpha = [&](std::size_t v) { return v == o ? std::string() : stage.oriented(o, v); };
  const Rational factor = 1 - 2 * stage.lambda;
  for (std::size_t a = 0; a < stage.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < stage.vertices.size(); ++b) {
      OraclePair p;
      p.x = stage.vertices[a];
      p.y = stage.vertices[b];
      p.word = free_reduce(inverse_of(alpha(p.x)) + alpha(p.y));
      p.bound = ball.distance(p.word);
      if (p.bound.exact()) {
        const Distance& d = space.distance(p.x, p.y);
        const std::uint64_t g = *p.bound.upper;
        p.inside = d.scaled_at_most(factor, Rational(BigInt(g), BigInt(stage.n))) &&
                   g <= label_length(d, stage.n);
      }
      if (!p.inside) out.passed = false;
      out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

StageReport verify_stage(const FiniteMetricSpace& space, const StageLabels& stage, const Presentation& presentation,
                         const VerifyOptions& options, const CayleyBall* ball) {
  StageReport out;
  out.stage = stage.stage;
  out.n = stage.n;
  out.lambda = stage.lambda;
  out.labels = check_labels(space, {stage});
  if (!out.labels.ok()) out.failures.push_back("labels: " + out.labels.witness);

  for (const auto& r : presentation.relators) {
    if (r.stage != stage.stage) continue;
    try {
      const Path p = parse_gamma_word(r.word, stage);
      if (!p.closed() || p.edges.front().from != r.cycle.front() || p.edges.size() != r.cycle.size()) {
        out.relators_closed = false;
        out.relator_witness = "relator on cycle starting at '" + space.id(r.cycle.front()) + "' parses to another path";
        break;
      }
    } catch (const Error& e) {
      out.relators_closed = false;
      out.relator_witness = e.what();
      break;
    }
  }
  if (!out.relators_closed) out.failures.push_back("relators: " + out.relator_witness);

  std::vector<std::string> words;
  for (const auto& e : stage.edges) words.push_back(e.word());
  out.cstar.lambda = stage.lambda;
  out.cstar.passed = true;
  if (!words.empty()) {
    try {
      out.cstar = check_cstar(words, stage.lambda, CstarOptions{options.workers});
      if (!out.cstar.passed) {
        out.failures.push_back("cstar: worst ratio " + to_string(out.cstar.worst_ratio) + " is not below lambda " +
                               to_string(stage.lambda));
      }
    } catch (const Error& e) {
      out.cstar.passed = false;
      out.failures.push_back(std::string("cstar: ") + e.what());
    }
  }

  out.sandwich = sandwich_report(space, stage);
  if (!out.sandwich.passed) {
    std::string what = "distortion gap exceeds its bound";
    for (const auto& p : out.sandwich.pairs) {
      if (p.ok()) continue;
      what = "pair (" + space.id(p.x) + "," + space.id(p.y) + ")" + (p.lower_ok ? "" : " below the lower bound") +
             (p.upper_ok ? "" : " above the upper bound");
      break;
    }
    out.failures.push_back("sandwich: " + what);
  }

  out.retention = retention_check(stage, options.retention_trials, options.seed + stage.stage,
                                  options.retention_max_edges);
  if (!out.retention.passed) {
    out.failures.push_back("retention: " + std::to_string(out.retention.violations) + " of " +
                           std::to_string(out.retention.sampled) + " paths lose more than 2 lambda");
  }

  if (ball) {
    out.oracle = oracle_report(space, stage, *ball);
    if (!out.oracle->passed) {
      for (const auto& p : out.oracle->pairs) {
        if (p.inside) continue;
        out.failures.push_back("oracle: pair (" + space.id(p.x) + "," + space.id(p.y) + ") " +
                               (p.bound.exact() ? "outside the sandwich" : "distance not certified"));
        break;
      }
    }
  }
  out.passed = out.failures.empty();
  return out;
}

VerifyReport verify_all(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages,
                        const Presentation& presentation, const VerifyOptions& options) {
  VerifyReport out;
  out.global = check_labels(space, stages);
  std::optional<CayleyBall> ball;
  if (options.oracle) {
    std::vector<std::string> relators;
    for (const auto& r : presentation.relators) {
      if (free_reduce(r.word).size() > options.oracle_max_relator) {
        out.oracle_skipped = "relator of length " + std::to_string(r.word.size()) + " exceeds the oracle cap " +
                             std::to_string(options.oracle_max_relator);
        break;
      }
      relators.push_back(r.word);
    }
    if (!out.oracle_skipped) ball.emplace(relators, options.oracle_options);
  }
  for (const auto& st : stages) {
    out.stages.push_back(verify_stage(space, st, presentation, options, ball ? &*ball : nullptr));
  }
  out.passed = out.global.ok() && std::all_of(out.stages.begin(), out.stages.end(),
                                              [](const StageReport& s) { return s.passed; });
  return out;
}

namespace {

json member_json(const FamilyMember& m) { return {{"index", m.index}, {"inverted", m.inverted}}; }

json label_check_json(const LabelCheck& c) {
  return {{"lengths", c.lengths},
          {"injective", c.injective},
          {"cyclically_reduced", c.freely_reduced},
          {"witness", c.witness}};
}

json optional_double(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json verify_to_json(const FiniteMetricSpace& space, const VerifyReport& report) {
  json stages = json::array();
  for (const auto& s : report.stages) {
    json cstar = {{"passed", s.cstar.passed},
                  {"lambda", to_string(s.cstar.lambda)},
                  {"worst_ratio", to_string(s.cstar.worst_ratio)},
                  {"worst_ratio_value", to_double(s.cstar.worst_ratio)},
                  {"closure_size", s.cstar.closure_size},
                  {"pairs_checked", s.cstar.pairs_checked}};
    if (s.cstar.worst_pair) {
      cstar["worst_pair"] = {{"first", member_json(s.cstar.worst_pair->first)},
                             {"second", member_json(s.cstar.worst_pair->second)},
                             {"length", s.cstar.worst_pair->length},
                             {"min_size", s.cstar.worst_pair->min_size}};
    }
    if (s.cstar.worst_self) {
      cstar["worst_self"] = {{"member", member_json(s.cstar.worst_self->member)},
                             {"length", s.cstar.worst_self->length},
                             {"size", s.cstar.worst_self->size}};
    }
    json pairs = json::array();
    for (const auto& p : s.sandwich.pairs) {
      pairs.push_back({{"x", space.id(p.x)},
                       {"y", space.id(p.y)},
                       {"distance", p.distance},
                       {"lower", p.lower},
                       {"upper", to_string(p.upper)},
                       {"upper_value", to_double(p.upper)},
                       {"witness_length", p.witness_length},
                       {"shortest_path", p.shortest_path},
                       {"lower_ok", p.lower_ok},
                       {"upper_ok", p.upper_ok},
                       {"gap", optional_double(p.gap)}});
    }
    json walk = json::array();
    for (std::size_t v : s.retention.worst_walk) walk.push_back(space.id(v));
    json stage = {{"stage", s.stage},
                  {"n", s.n},
                  {"lambda", to_string(s.lambda)},
                  {"lambda_value", to_double(s.lambda)},
                  {"passed", s.passed},
                  {"failures", s.failures},
                  {"labels", label_check_json(s.labels)},
                  {"relators_closed", s.relators_closed},
                  {"cstar", std::move(cstar)},
                  {"sandwich",
                   {{"passed", s.sandwich.passed},
                    {"max_gap", optional_double(s.sandwich.max_gap)},
                    {"gap_bound", optional_double(s.sandwich.gap_bound)},
                    {"pairs", std::move(pairs)}}},
                  {"retention",
                   {{"passed", s.retention.passed},
                    {"trials", s.retention.trials},
                    {"sampled", s.retention.sampled},
                    {"max_edges", s.retention.max_edges},
                    {"seed", s.retention.seed},
                    {"violations", s.retention.violations},
                    {"worst_ratio", to_string(s.retention.worst_ratio)},
                    {"worst_ratio_value", to_double(s.retention.worst_ratio)},
                    {"worst_walk", std::move(walk)}}}};
    if (s.oracle) {
      json op = json::array();
      for (const auto& p : s.oracle->pairs) {
        op.push_back({{"x", space.id(p.x)},
                      {"y", space.id(p.y)},
                      {"word", p.word},
                      {"lower", p.bound.lower},
                      {"upper", p.bound.upper ? json(*p.bound.upper) : json(nullptr)},
                      {"exact", p.bound.exact()},
                      {"inside", p.inside}});
      }
      stage["oracle"] = {{"passed", s.oracle->passed},
                         {"radius", s.oracle->radius},
                         {"ball_words", s.oracle->ball_words},
                         {"ball_classes", s.oracle->ball_classes},
                         {"quotients", s.oracle->quotients},
                         {"pairs", std::move(op)}};
    }
    stages.push_back(std::move(stage));
  }
  json out = {{"passed", report.passed}, {"labels", label_check_json(report.global)}, {"stages", std::move(stages)}};
  if (report.oracle_skipped) out["oracle_skipped"] = *report.oracle_skipped;
  return out;
}

std::string verify_to_text(const FiniteMetricSpace& space, const VerifyReport& report) {
  std::ostringstream out;
  char line[512];
  out << "verification " << (report.passed ? "PASSED" : "FAILED") << "\n";
  out << "global labels: lengths=" << report.global.lengths << " injective=" << report.global.injective << "\n";
  if (report.oracle_skipped) out << "oracle skipped: " << *report.oracle_skipped << "\n";
  for (const auto& s : report.stages) {
    out << "\nstage " << s.stage << "  n=" << s.n << "  lambda=" << to_string(s.lambda) << "  "
        << (s.passed ? "PASS" : "FAIL") << "\n";
    std::snprintf(line, sizeof line, "  C*: %s  worst ratio %.6f  closure %zu\n", s.cstar.passed ? "pass" : "FAIL",
                  to_double(s.cstar.worst_ratio), s.cstar.closure_size);
    out << line;
    std::snprintf(line, sizeof line, "  retention: %s  %zu paths  worst %.6f  violations %zu\n",
                  s.retention.passed ? "pass" : "FAIL", s.retention.sampled, to_double(s.retention.worst_ratio),
                  s.retention.violations);
    out << line;
    std::snprintf(line, sizeof line, "  %-12s %-12s %12s %12s %12s %12s %10s %4s\n", "x", "y", "d", "lower",
                  "sp/n", "upper", "gap", "ok");
    out << line;
    for (const auto& p : s.sandwich.pairs) {
      const double spn = static_cast<double>(p.shortest_path) / static_cast<double>(s.n);
      char gap[32];
      if (p.gap) {
        std::snprintf(gap, sizeof gap, "%.6f", *p.gap);
      } else {
        std::snprintf(gap, sizeof gap, "-");
      }
      std::snprintf(line, sizeof line, "  %-12s %-12s %12.6f %12.6f %12.6f %12.6f %10s %4s\n", space.id(p.x).c_str(),
                    space.id(p.y).c_str(), p.distance, p.lower, spn, to_double(p.upper), gap, p.ok() ? "yes" : "NO");
      out << line;
    }
    if (s.oracle) {
      out << "  oracle (radius " << s.oracle->radius << ", " << s.oracle->ball_classes << " classes):\n";
      for (const auto& p : s.oracle->pairs) {
        std::snprintf(line, sizeof line, "  %-12s %-12s dist_G in [%u, %s]  %s\n", space.id(p.x).c_str(),
                      space.id(p.y).c_str(), p.bound.lower,
                      p.bound.upper ? std::to_string(*p.bound.upper).c_str() : "?",
                      p.inside ? "inside" : (p.bound.exact() ? "OUTSIDE" : "uncertified"));
        out << line;
      }
    }
    for (const auto& f : s.failures) out << "  failure: " << f << "\n";
  }
  return out.str();
}

}  // namespace scembed
