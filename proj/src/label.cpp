#include "scembed/label.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "scembed/error.hpp"
#include "scembed/group_word.hpp"

namespace scembed {

using nlohmann::json;

namespace {

std::uint64_t pair_demand(std::size_t n) {
  const BigInt d = BigInt(n) * (n > 0 ? n - 1 : 0) / 2;
  if (d > BigInt(UINT64_MAX)) throw Error(ErrorCode::infeasible, "net too large");
  return d.convert_to<std::uint64_t>();
}

// Least bound on q_i from conditions (I) and (III).
std::uint64_t ratio_floor(const Exhaustion& exhaustion, const std::vector<ScalingStage>& done) {
  if (done.empty()) return 1;
  const ScalingStage& prev = done.back();
  BigInt lo = BigInt(prev.ratio) + 1;
  BigInt by_diam = exhaustion.diameter(prev.stage).scaled_floor(BigInt(prev.n)) + 1;
  if (by_diam > lo) lo = by_diam;
  if (lo > BigInt(UINT64_MAX / 4)) throw Error(ErrorCode::infeasible, "scaling ratio leaves the 64-bit range");
  return lo.convert_to<std::uint64_t>();
}

}  // namespace

ScalingSequence choose_scaling(const FiniteMetricSpace& space, const Exhaustion& exhaustion,
                               const std::vector<Net>& nets, const WordFamily& family) {
  (void)space;
  ScalingSequence out;
  for (const Net& net : nets) {
    ScalingStage st;
    st.stage = net.stage;
    st.demand = pair_demand(net.members.size());
    std::uint64_t lo = ratio_floor(exhaustion, out.stages);
    std::uint64_t q = lo;
    if (family.sigma_lower_bound(q) < st.demand) {
      // sigma_lb is non-decreasing: gallop, then bisect
      std::uint64_t step = 1;
      std::uint64_t hi = lo;
      while (family.sigma_lower_bound(hi) < st.demand) {
        lo = hi;
        if (hi > UINT64_MAX / 4) throw Error(ErrorCode::infeasible, "sigma never reaches the demand");
        hi += step;
        step *= 2;
      }
      while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (family.sigma_lower_bound(mid) >= st.demand) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      q = hi;
    }
    st.ratio = q;
    const BigInt n = BigInt(q) * st.stage;
    if (n > BigInt(UINT64_MAX / 4)) throw Error(ErrorCode::infeasible, "n_i leaves the 64-bit range");
    st.n = n.convert_to<std::uint64_t>();
    st.sigma = family.sigma_lower_bound(q);
    out.stages.push_back(st);
  }
  return out;
}

ScalingCheck check_scaling(const FiniteMetricSpace& space, const Exhaustion& exhaustion, const std::vector<Net>& nets,
                           const WordFamily& family, const ScalingSequence& scaling) {
  (void)space;
  ScalingCheck out;
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && out.witness.empty()) out.witness = what;
    flag = false;
  };
  if (scaling.stages.size() != nets.size()) note(out.increasing, "scaling and nets have different stage counts");
  for (std::size_t s = 0; s < scaling.stages.size() && s < nets.size(); ++s) {
    const ScalingStage& st = scaling.stages[s];
    const std::string tag = "stage " + std::to_string(st.stage) + ": ";
    if (st.stage != s + 1 || st.ratio == 0 || BigInt(st.n) != BigInt(st.ratio) * st.stage) {
      note(out.increasing, tag + "n_i is not a positive multiple of i");
    }
    const std::uint64_t need = pair_demand(nets[s].members.size());
    auto growth_ok = [&](std::uint64_t q) { return family.sigma_lower_bound(q) >= need; };
    auto order_ok = [&](std::uint64_t q) { return s == 0 || q > scaling.stages[s - 1].ratio; };
    auto diam_ok = [&](std::uint64_t q) {
      if (s == 0) return true;
      const ScalingStage& prev = scaling.stages[s - 1];
      // q > n_{i-1} diam  <=>  n_{i-1} diam < q
      return exhaustion.diameter(prev.stage).compare_scaled(Rational(BigInt(prev.n)), Rational(BigInt(q))) < 0;
    };
    if (!order_ok(st.ratio)) note(out.increasing, tag + "n_i/i does not increase");
    if (!growth_ok(st.ratio)) note(out.growth, tag + "sigma(n_i/i) below N_i(N_i-1)/2");
    if (!diam_ok(st.ratio)) note(out.diameter, tag + "n_i/i <= n_{i-1} diam M_{i-1}");
    const std::uint64_t q = st.ratio - 1;
    if (q >= 1 && order_ok(q) && growth_ok(q) && diam_ok(q)) note(out.minimal, tag + "n_i/i - 1 also satisfies (I)-(III)");
  }
  return out;
}

std::uint64_t label_length(const Distance& d, std::uint64_t n) { return saturate_u64(d.scaled_ceil(BigInt(n))); }

std::optional<std::size_t> StageLabels::find(std::size_t x, std::size_t y) const {
  if (x > y) std::swap(x, y);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(x, y), [](const EdgeLabel& e, const auto& key) {
    return std::make_pair(e.from, e.to) < key;
  });
  if (it == edges.end() || it->from != x || it->to != y) return std::nullopt;
  return static_cast<std::size_t>(it - edges.begin());
}

std::string StageLabels::oriented(std::size_t x, std::size_t y) const {
  auto e = find(x, y);
  if (!e || x == y) {
    throw Error(ErrorCode::unknown_pair, "no edge between points " + std::to_string(x) + " and " + std::to_string(y) +
                                             " at stage " + std::to_string(stage));
  }
  const EdgeLabel& l = edges[*e];
  return l.from == x ? l.word() : inverse_of(l.word());
}

std::vector<StageLabels> label_edges(const FiniteMetricSpace& space, const std::vector<Net>& nets,
                                     const ScalingSequence& scaling, const WordFamily& family) {
  if (scaling.stages.size() < nets.size()) throw Error(ErrorCode::bad_config, "scaling covers fewer stages than nets");
  std::vector<StageLabels> out;
  std::map<std::uint64_t, std::uint64_t> demand;
  for (std::size_t s = 0; s < nets.size(); ++s) {
    StageLabels st;
    st.stage = nets[s].stage;
    st.n = scaling.stages[s].n;
    st.lambda = family.lambda().effective(st.stage);
    st.vertices = nets[s].members;
    for (std::size_t a = 0; a < st.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < st.vertices.size(); ++b) {
        EdgeLabel e;
        e.from = st.vertices[a];
        e.to = st.vertices[b];
        e.length = label_length(space.distance(e.from, e.to), st.n);
        ++demand[e.length];
        st.edges.push_back(std::move(e));
      }
    }
    out.push_back(std::move(st));
  }
  auto supply = family.materialize_many(demand);
  std::map<std::uint64_t, std::size_t> used;
  for (auto& st : out) {
    for (auto& e : st.edges) {
      auto& pool = supply[e.length];
      std::size_t& next = used[e.length];
      if (next >= pool.size()) {
        throw Error(ErrorCode::exhausted_length_class,
                    "T(" + std::to_string(e.length) + ") supplied " + std::to_string(pool.size()) + " of " +
                        std::to_string(demand[e.length]) + " demanded words (stage " + std::to_string(st.stage) + ")");
      }
      e.source = std::move(pool[next++]);
    }
  }
  return out;
}

LabelCheck check_labels(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages) {
  LabelCheck out;
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && out.witness.empty()) out.witness = what;
    flag = false;
  };
  std::unordered_set<std::string> seen;
  for (const auto& st : stages) {
    for (const auto& e : st.edges) {
      const std::string tag = "stage " + std::to_string(st.stage) + " edge (" + space.id(e.from) + "," +
                              space.id(e.to) + "): ";
      const std::uint64_t want = label_length(space.distance(e.from, e.to), st.n);
      if (e.length != want || e.word().size() != want) {
        note(out.lengths, tag + "length " + std::to_string(e.word().size()) + " but ceil(n_i d) = " +
                              std::to_string(want));
      }
      if (e.word().empty() || !is_cyclically_reduced(e.word())) note(out.freely_reduced, tag + "label not cyclically reduced");
      if (!seen.insert(e.word()).second) note(out.injective, tag + "label reused");
      if (!seen.insert(inverse_of(e.word())).second) note(out.injective, tag + "label inverse reused");
    }
  }
  return out;
}

bool Path::irreducible() const {
  for (std::size_t j = 1; j < edges.size(); ++j) {
    if (edges[j].from == edges[j - 1].to && edges[j].to == edges[j - 1].from) return false;
  }
  return true;
}

std::string gamma_word(const Path& path, const StageLabels& labels) {
  std::string out;
  for (std::size_t j = 0; j < path.edges.size(); ++j) {
    const Edge& e = path.edges[j];
    if (j > 0 && path.edges[j - 1].to != e.from) {
      throw Error(ErrorCode::broken_path, "edge " + std::to_string(j) + " does not start where edge " +
                                              std::to_string(j - 1) + " ends");
    }
    if (e.from == e.to) throw Error(ErrorCode::broken_path, "edge " + std::to_string(j) + " is a loop");
    out += labels.oriented(e.from, e.to);
  }
  return out;
}

Path parse_gamma_word(std::string_view word, const StageLabels& labels) {
  struct Candidate {
    std::string word;
    Edge edge;
  };
  std::vector<Candidate> cands;
  for (const auto& e : labels.edges) {
    cands.push_back({e.word(), {e.from, e.to}});
    cands.push_back({inverse_of(e.word()), {e.to, e.from}});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) { return x.word.size() > y.word.size(); });

  Path path{labels.stage, {}};
  std::size_t furthest = 0;
  std::set<std::pair<std::size_t, std::size_t>> dead;  // (position, vertex) with no completion
  constexpr std::size_t any = static_cast<std::size_t>(-1);

  // iterative backtracking: frame = (position, vertex, next candidate)
  struct Frame {
    std::size_t pos;
    std::size_t vertex;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, any, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.pos == word.size() && f.pos > 0) return path;
    bool advanced = false;
    while (f.next < cands.size()) {
      const Candidate& c = cands[f.next++];
      if (f.vertex != any && c.edge.from != f.vertex) continue;
      if (word.size() - f.pos < c.word.size()) continue;
      if (word.compare(f.pos, c.word.size(), c.word) != 0) continue;
      const std::size_t pos = f.pos + c.word.size();
      if (dead.count({pos, c.edge.to})) continue;
      path.edges.push_back(c.edge);
      furthest = std::max(furthest, pos);
      stack.push_back({pos, c.edge.to, 0});
      advanced = true;
      break;
    }
    if (advanced) continue;
    dead.insert({f.pos, f.vertex});
    stack.pop_back();
    if (!path.edges.empty() && !stack.empty()) path.edges.pop_back();
  }
  throw Error(ErrorCode::not_a_gamma_word, "no stage-" + std::to_string(labels.stage) +
                                               " label sequence matches; parsing fails at position " +
                                               std::to_string(furthest));
}

std::string cycle_word(const std::vector<std::size_t>& cycle, const StageLabels& labels) {
  std::string out;
  for (std::size_t j = 0; j < cycle.size(); ++j) out += labels.oriented(cycle[j], cycle[(j + 1) % cycle.size()]);
  return out;
}

Presentation emit_presentation(const std::vector<StageLabels>& stages, const PresentationOptions& options) {
  Presentation p;
  p.options = options;
  std::uint64_t letters = 0;
  auto add = [&](const StageLabels& st, std::vector<std::size_t> cycle) {
    if (p.relators.size() >= options.max_relators) {
      throw Error(ErrorCode::limit_exceeded, "more than " + std::to_string(options.max_relators) + " relators");
    }
    std::string w = cycle_word(cycle, st);
    letters += w.size();
    if (letters > options.max_letters) {
      throw Error(ErrorCode::limit_exceeded, "relators exceed " + std::to_string(options.max_letters) + " letters");
    }
    p.relators.push_back({st.stage, std::move(cycle), std::move(w)});
  };
  for (const auto& st : stages) {
    const auto& v = st.vertices;
    for (std::size_t x = 0; x < v.size(); ++x) {
      for (std::size_t y = x + 1; y < v.size(); ++y) {
        for (std::size_t z = y + 1; z < v.size(); ++z) add(st, {v[x], v[y], v[z]});
      }
    }
    if (options.mode != PresentationMode::cycles) continue;
    for (std::size_t t = 4; t <= options.max_cycle_edges && t <= v.size(); ++t) {
      // simple cycles on t vertices, started at their least vertex
      for (std::size_t s = 0; s < v.size(); ++s) {
        std::vector<std::size_t> cycle{v[s]};
        std::vector<char> used(v.size(), 0);
        std::function<void()> extend = [&] {
          if (cycle.size() == t) {
            if (cycle[1] < cycle.back()) add(st, cycle);
            return;
          }
          for (std::size_t j = s + 1; j < v.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            cycle.push_back(v[j]);
            extend();
            cycle.pop_back();
            used[j] = 0;
          }
        };
        extend();
      }
    }
  }
  return p;
}

bool triangulates(const std::vector<std::size_t>& cycle, const StageLabels& labels, const Presentation& triangles) {
  if (cycle.size() < 3) return false;
  std::unordered_set<std::string> known;
  for (const auto& r : triangles.relators) {
    if (r.stage != labels.stage || r.cycle.size() != 3) continue;
    known.insert(rotate(r.word, least_rotation(r.word)));
    const std::string inv = inverse_of(r.word);
    known.insert(rotate(inv, least_rotation(inv)));
  }
  std::string product;
  for (std::size_t j = 1; j + 1 < cycle.size(); ++j) {
    const std::string t = cycle_word({cycle[0], cycle[j], cycle[j + 1]}, labels);
    if (!known.count(rotate(t, least_rotation(t)))) return false;
    product += t;
  }
  return free_reduce(product) == free_reduce(cycle_word(cycle, labels));
}

void write_presentation_text(std::ostream& out, const Presentation& p) {
  out << "generators: a b\n";
  for (const auto& r : p.relators) out << r.word << '\n';
}

std::vector<std::string> read_presentation_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "generators: a b") {
    throw Error(ErrorCode::parse, "presentation must start with 'generators: a b'");
  }
  std::vector<std::string> words;
  while (std::getline(in, line)) {
    if (line.empty()) throw Error(ErrorCode::parse, "empty relator line " + std::to_string(words.size() + 2));
    for (char c : line) {
      if (!is_group_letter(c)) throw Error(ErrorCode::parse, "bad letter in relator line " + std::to_string(words.size() + 2));
    }
    words.push_back(std::move(line));
  }
  return words;
}

std::string presentation_gap(const Presentation& p) {
  std::string out = "<a, b |";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    out += r == 0 ? " " : ", ";
    const std::string& w = p.relators[r].word;
    for (std::size_t j = 0; j < w.size();) {
      std::size_t e = j;
      while (e < w.size() && w[e] == w[j]) ++e;
      const char g = static_cast<char>(w[j] == 'A' ? 'a' : w[j] == 'B' ? 'b' : w[j]);
      const bool inv = w[j] == 'A' || w[j] == 'B';
      if (j > 0) out += '*';
      out += g;
      const std::size_t run = e - j;
      if (inv || run > 1) out += "^" + std::string(inv ? "-" : "") + std::to_string(run);
      j = e;
    }
  }
  out += " >";
  return out;
}

json scaling_to_json(const ScalingSequence& s) {
  json stages = json::array();
  for (const auto& st : s.stages) {
    stages.push_back({{"stage", st.stage},
                      {"ratio", st.ratio},
                      {"n", st.n},
                      {"demand", st.demand},
                      {"sigma_lower_bound", st.sigma}});
  }
  return {{"stages", std::move(stages)}};
}

ScalingSequence scaling_from_json(const json& doc) {
  ScalingSequence s;
  try {
    for (const auto& st : doc.at("stages")) {
      s.stages.push_back({st.at("stage").get<std::size_t>(), st.at("ratio").get<std::uint64_t>(),
                          st.at("n").get<std::uint64_t>(), st.at("demand").get<std::uint64_t>(),
                          st.at("sigma_lower_bound").get<std::uint64_t>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed scaling document: ") + e.what());
  }
  return s;
}

namespace {

std::size_t point_index(const FiniteMetricSpace& space, const json& id) {
  auto p = space.index_of(id.get<std::string>());
  if (!p) throw Error(ErrorCode::parse, "unknown point '" + id.get<std::string>() + "'");
  return *p;
}

}  // namespace

json labels_to_json(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages) {
  json out = json::array();
  for (const auto& st : stages) {
    json vertices = json::array();
    for (std::size_t v : st.vertices) vertices.push_back(space.id(v));
    json edges = json::array();
    for (const auto& e : st.edges) {
      edges.push_back({{"from", space.id(e.from)},
                       {"to", space.id(e.to)},
                       {"length", e.length},
                       {"k", e.source.k},
                       {"index", e.source.index},
                       {"part", e.source.part},
                       {"pad", e.source.pad},
                       {"word", e.word()}});
    }
    out.push_back({{"stage", st.stage},
                   {"n", st.n},
                   {"lambda", to_string(st.lambda)},
                   {"vertices", std::move(vertices)},
                   {"edges", std::move(edges)}});
  }
  return {{"stages", std::move(out)}};
}

std::vector<StageLabels> labels_from_json(const FiniteMetricSpace& space, const json& doc) {
  std::vector<StageLabels> out;
  try {
    for (const auto& sj : doc.at("stages")) {
      StageLabels st;
      st.stage = sj.at("stage").get<std::size_t>();
      st.n = sj.at("n").get<std::uint64_t>();
      st.lambda = parse_rational(sj.at("lambda").get<std::string>());
      for (const auto& v : sj.at("vertices")) st.vertices.push_back(point_index(space, v));
      if (!std::is_sorted(st.vertices.begin(), st.vertices.end())) throw Error(ErrorCode::parse, "vertices out of order");
      for (const auto& ej : sj.at("edges")) {
        EdgeLabel e;
        e.from = point_index(space, ej.at("from"));
        e.to = point_index(space, ej.at("to"));
        e.length = ej.at("length").get<std::uint64_t>();
        e.source.n = e.length;
        e.source.k = ej.at("k").get<std::uint64_t>();
        e.source.index = ej.at("index").get<std::uint64_t>();
        e.source.part = ej.at("part").get<std::uint64_t>();
        e.source.pad = ej.at("pad").get<std::uint64_t>();
        e.source.word = ej.at("word").get<std::string>();
        require_group_word(e.source.word);
        if (e.from >= e.to) throw Error(ErrorCode::parse, "edges must run from the lower to the higher point");
        st.edges.push_back(std::move(e));
      }
      if (!std::is_sorted(st.edges.begin(), st.edges.end(), [](const EdgeLabel& x, const EdgeLabel& y) {
            return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
          })) {
        throw Error(ErrorCode::parse, "edges out of order");
      }
      out.push_back(std::move(st));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed labels document: ") + e.what());
  }
  return out;
}

json presentation_to_json(const FiniteMetricSpace& space, const Presentation& p,
                          const std::vector<StageLabels>& stages) {
  json relators = json::array();
  std::uint64_t letters = 0;
  for (const auto& r : p.relators) {
    json cycle = json::array();
    for (std::size_t v : r.cycle) cycle.push_back(space.id(v));
    json lengths = json::array();
    for (const auto& st : stages) {
      if (st.stage != r.stage) continue;
      for (std::size_t j = 0; j < r.cycle.size(); ++j) {
        auto e = st.find(r.cycle[j], r.cycle[(j + 1) % r.cycle.size()]);
        lengths.push_back(e ? st.edges[*e].length : 0);
      }
    }
    letters += r.word.size();
    relators.push_back({{"stage", r.stage},
                        {"kind", r.cycle.size() == 3 ? "triangle" : "cycle"},
                        {"cycle", std::move(cycle)},
                        {"edge_lengths", std::move(lengths)},
                        {"length", r.word.size()}});
  }
  json stage_info = json::array();
  for (const auto& st : stages) {
    stage_info.push_back({{"stage", st.stage}, {"n", st.n}, {"lambda", to_string(st.lambda)}});
  }
  return {{"generators", {"a", "b"}},
          {"mode", p.options.mode == PresentationMode::cycles ? "cycles" : "triangles"},
          {"max_cycle_edges", p.options.max_cycle_edges},
          {"relator_count", p.relators.size()},
          {"total_letters", letters},
          {"stages", std::move(stage_info)},
          {"relators", std::move(relators)}};
}

Presentation presentation_from_json(const FiniteMetricSpace& space, const json& doc,
                                    const std::vector<std::string>& words) {
  Presentation p;
  try {
    p.options.mode = doc.at("mode").get<std::string>() == "cycles" ? PresentationMode::cycles : PresentationMode::triangles;
    p.options.max_cycle_edges = doc.at("max_cycle_edges").get<std::size_t>();
    const json& rel = doc.at("relators");
    if (rel.size() != words.size()) {
      throw Error(ErrorCode::parse, "manifest lists " + std::to_string(rel.size()) + " relators, text has " +
                                        std::to_string(words.size()));
    }
    for (std::size_t r = 0; r < words.size(); ++r) {
      Relator out;
      out.stage = rel[r].at("stage").get<std::size_t>();
      for (const auto& v : rel[r].at("cycle")) out.cycle.push_back(point_index(space, v));
      out.word = words[r];
      if (rel[r].at("length").get<std::size_t>() != out.word.size()) {
        throw Error(ErrorCode::parse, "relator " + std::to_string(r) + " length disagrees with the manifest");
      }
      p.relators.push_back(std::move(out));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed presentation manifest: ") + e.what());
  }
  return p;
}

}  // namespace scembed
