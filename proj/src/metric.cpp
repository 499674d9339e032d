#include "scembed/metric.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

#include "scembed/error.hpp"

namespace scembed {

using nlohmann::json;

const char* to_string(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::matrix: return "matrix";
    case MetricKind::l2: return "l2";
    case MetricKind::linf: return "linf";
  }
  return "?";
}

const char* to_string(ExhaustionPolicy policy) noexcept {
  switch (policy) {
    case ExhaustionPolicy::full: return "full";
    case ExhaustionPolicy::radius: return "radius";
    case ExhaustionPolicy::explicit_stages: return "explicit";
  }
  return "?";
}

namespace {

void check_ids(const std::vector<std::string>& ids) {
  if (ids.empty()) throw Error(ErrorCode::bad_space, "space has no points");
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) throw Error(ErrorCode::bad_space, "empty point id");
    if (!seen.insert(id).second) throw Error(ErrorCode::bad_space, "duplicate point id '" + id + "'");
  }
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> ids,
                                                 const std::vector<std::vector<Rational>>& rows,
                                                 const std::string& basepoint) {
  check_ids(ids);
  const std::size_t n = ids.size();
  if (rows.size() != n) throw Error(ErrorCode::bad_space, "matrix has " + std::to_string(rows.size()) + " rows for " +
                                                              std::to_string(n) + " points");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorCode::bad_space, "matrix row " + std::to_string(i) + " has wrong width");
  }
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.metric_ = MetricKind::matrix;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0) throw Error(ErrorCode::bad_space, "d(" + s.ids_[i] + "," + s.ids_[i] + ") is not 0");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) {
        throw Error(ErrorCode::symmetry_violation, "d(" + s.ids_[i] + "," + s.ids_[j] + ") = " + to_string(rows[i][j]) +
                                                       " but d(" + s.ids_[j] + "," + s.ids_[i] + ") = " +
                                                       to_string(rows[j][i]));
      }
      if (rows[i][j] <= 0) {
        throw Error(ErrorCode::bad_space, "d(" + s.ids_[i] + "," + s.ids_[j] + ") must be positive");
      }
    }
  }
  s.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.dist_[i * n + j] = Distance::from_value(rows[i][j]);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = x + 1; z < n; ++z) {
        if (z == y) continue;
        if (rows[x][z] > rows[x][y] + rows[y][z]) {
          throw Error(ErrorCode::triangle_violation, "d(" + s.ids_[x] + "," + s.ids_[z] + ") > d(" + s.ids_[x] + "," +
                                                         s.ids_[y] + ") + d(" + s.ids_[y] + "," + s.ids_[z] +
                                                         ") for the triple (" + s.ids_[x] + ", " + s.ids_[y] + ", " +
                                                         s.ids_[z] + ")");
        }
      }
    }
  }
  s.finish(basepoint);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<std::string> ids,
                                                 const std::vector<std::vector<Rational>>& coords, MetricKind metric,
                                                 const std::string& basepoint) {
  if (metric == MetricKind::matrix) throw Error(ErrorCode::bad_space, "point clouds need metric l2 or linf");
  check_ids(ids);
  const std::size_t n = ids.size();
  if (coords.size() != n) throw Error(ErrorCode::bad_space, "coordinate count does not match point count");
  const std::size_t dim = coords.front().size();
  if (dim == 0) throw Error(ErrorCode::bad_space, "points need at least one coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != dim) throw Error(ErrorCode::bad_space, "point '" + ids[i] + "' has wrong dimension");
  }
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.metric_ = metric;
  s.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational acc = 0;
      for (std::size_t c = 0; c < dim; ++c) {
        Rational diff = coords[i][c] - coords[j][c];
        if (diff < 0) diff = -diff;
        if (metric == MetricKind::l2) {
          acc += diff * diff;
        } else if (diff > acc) {
          acc = diff;
        }
      }
      if (acc == 0) {
        throw Error(ErrorCode::bad_space, "points '" + s.ids_[i] + "' and '" + s.ids_[j] + "' coincide");
      }
      Distance d = metric == MetricKind::l2 ? Distance::from_square(acc) : Distance::from_value(acc);
      s.dist_[i * n + j] = d;
      s.dist_[j * n + i] = d;
    }
  }
  s.finish(basepoint);
  return s;
}

void FiniteMetricSpace::finish(const std::string& basepoint) {
  auto b = index_of(basepoint);
  if (!b) throw Error(ErrorCode::missing_basepoint, "basepoint '" + basepoint + "' is not a point of the space");
  basepoint_ = *b;
}

std::optional<std::size_t> FiniteMetricSpace::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

Distance FiniteMetricSpace::diameter(const std::vector<std::size_t>& subset) const {
  Distance best;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      const Distance& d = distance(subset[a], subset[b]);
      if (best < d) best = d;
    }
  }
  return best;
}

std::optional<Distance> FiniteMetricSpace::min_separation(const std::vector<std::size_t>& subset) const {
  std::optional<Distance> best;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      const Distance& d = distance(subset[a], subset[b]);
      if (!best || d < *best) best = d;
    }
  }
  return best;
}

Exhaustion::Exhaustion(const FiniteMetricSpace& space, const ExhaustionSpec& spec) : spec_(spec) {
  for (std::size_t p = 0; p < space.size(); ++p) all_.push_back(p);
  diam_all_ = space.diameter(all_);
  const std::size_t o = space.basepoint();
  switch (spec.policy) {
    case ExhaustionPolicy::full:
      break;
    case ExhaustionPolicy::radius: {
      for (std::size_t i = 0; i < spec.radii.size(); ++i) {
        if (spec.radii[i] < 0) throw Error(ErrorCode::bad_space, "negative stage radius");
        if (i > 0 && spec.radii[i] < spec.radii[i - 1]) {
          throw Error(ErrorCode::not_nested, "stage radii must be non-decreasing (stage " + std::to_string(i + 1) + ")");
        }
        std::vector<std::size_t> ball;
        for (std::size_t p = 0; p < space.size(); ++p) {
          if (space.distance(o, p).compare(spec.radii[i]) <= 0) ball.push_back(p);
        }
        stages_.push_back(std::move(ball));
      }
      break;
    }
    case ExhaustionPolicy::explicit_stages: {
      for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        std::vector<std::size_t> stage;
        for (const auto& id : spec.stages[i]) {
          auto p = space.index_of(id);
          if (!p) throw Error(ErrorCode::bad_space, "stage " + std::to_string(i + 1) + " names unknown point '" + id + "'");
          stage.push_back(*p);
        }
        std::sort(stage.begin(), stage.end());
        if (std::adjacent_find(stage.begin(), stage.end()) != stage.end()) {
          throw Error(ErrorCode::bad_space, "stage " + std::to_string(i + 1) + " repeats a point");
        }
        if (stage.empty()) throw Error(ErrorCode::bad_space, "stage " + std::to_string(i + 1) + " is empty");
        if (i == 0 && !std::binary_search(stage.begin(), stage.end(), o)) {
          throw Error(ErrorCode::missing_basepoint, "basepoint '" + space.id(o) + "' is not in stage 1");
        }
        if (i > 0 && !std::includes(stage.begin(), stage.end(), stages_.back().begin(), stages_.back().end())) {
          throw Error(ErrorCode::not_nested, "stage " + std::to_string(i) + " is not contained in stage " +
                                                 std::to_string(i + 1));
        }
        stages_.push_back(std::move(stage));
      }
      break;
    }
  }
  for (const auto& s : stages_) diam_.push_back(space.diameter(s));
}

const std::vector<std::size_t>& Exhaustion::stage(std::size_t i) const {
  if (i == 0) throw Error(ErrorCode::bad_config, "stages are numbered from 1");
  return i <= stages_.size() ? stages_[i - 1] : all_;
}

const Distance& Exhaustion::diameter(std::size_t i) const {
  if (i == 0) throw Error(ErrorCode::bad_config, "stages are numbered from 1");
  return i <= diam_.size() ? diam_[i - 1] : diam_all_;
}

std::vector<Net> build_nets(const FiniteMetricSpace& space, const Exhaustion& exhaustion, std::size_t max_stage) {
  std::vector<Net> nets;
  std::vector<std::size_t> accepted;
  for (std::size_t i = 1; i <= max_stage; ++i) {
    const Rational sep(1, static_cast<long long>(i));
    const auto& stage = exhaustion.stage(i);
    std::vector<std::size_t> order;
    order.reserve(stage.size() + 1);
    order.push_back(space.basepoint());
    for (std::size_t p : stage) order.push_back(p);
    std::vector<char> member(space.size(), 0);
    for (std::size_t p : accepted) member[p] = 1;
    for (std::size_t p : order) {
      if (member[p]) continue;
      bool far = true;
      for (std::size_t m : accepted) {
        if (space.distance(p, m).compare(sep) <= 0) {
          far = false;
          break;
        }
      }
      if (far) {
        accepted.push_back(p);
        member[p] = 1;
      }
    }
    Net net{i, accepted};
    std::sort(net.members.begin(), net.members.end());
    NetCheck check = check_net(space, exhaustion, net, nets.empty() ? nullptr : &nets.back());
    if (!check.ok()) throw Error(ErrorCode::infeasible, "net at stage " + std::to_string(i) + ": " + check.witness);
    nets.push_back(std::move(net));
  }
  return nets;
}

NetCheck check_net(const FiniteMetricSpace& space, const Exhaustion& exhaustion, const Net& net,
                   const Net* previous) {
  NetCheck out;
  const auto& stage = exhaustion.stage(net.stage);
  const Rational cover(2, static_cast<long long>(net.stage));
  const Rational sep(1, static_cast<long long>(net.stage));
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && out.witness.empty()) out.witness = what;
    flag = false;
  };
  std::vector<char> in_net(space.size(), 0);
  for (std::size_t m : net.members) {
    if (!std::binary_search(stage.begin(), stage.end(), m)) note(out.nested, "member '" + space.id(m) + "' is outside M_i");
    in_net[m] = 1;
  }
  for (std::size_t a = 0; a < net.members.size(); ++a) {
    for (std::size_t b = a + 1; b < net.members.size(); ++b) {
      if (space.distance(net.members[a], net.members[b]).compare(sep) <= 0) {
        note(out.separated, "members '" + space.id(net.members[a]) + "' and '" + space.id(net.members[b]) +
                                "' are within 1/i");
      }
    }
  }
  for (std::size_t p : stage) {
    bool covered = false;
    bool blocked = in_net[p] != 0;
    for (std::size_t m : net.members) {
      const Distance& d = space.distance(p, m);
      if (d.compare(cover) <= 0) covered = true;
      if (m != p && d.compare(sep) <= 0) blocked = true;
    }
    if (!covered) note(out.covering, "point '" + space.id(p) + "' is further than 2/i from the net");
    if (!blocked) note(out.maximal, "point '" + space.id(p) + "' could be added to the net");
  }
  if (previous) {
    for (std::size_t m : previous->members) {
      if (!in_net[m]) note(out.nested, "previous member '" + space.id(m) + "' was dropped");
    }
  } else if (!in_net[space.basepoint()]) {
    note(out.nested, "basepoint is missing from the first net");
  }
  return out;
}

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(BigInt(value.get<std::uint64_t>()));
    return Rational(BigInt(value.get<std::int64_t>()));
  }
  if (value.is_number_float()) return rational_from_double(value.get<double>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw Error(ErrorCode::bad_space, "expected a number, got " + value.dump());
}

namespace {

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorCode::bad_space, std::string("missing field '") + key + "'");
  return *it;
}

ExhaustionSpec exhaustion_from_json(const json& doc) {
  ExhaustionSpec spec;
  if (!doc.is_object()) throw Error(ErrorCode::bad_space, "'exhaustion' must be an object");
  const std::string policy = doc.value("policy", std::string("full"));
  if (policy == "full") {
    spec.policy = ExhaustionPolicy::full;
  } else if (policy == "radius") {
    spec.policy = ExhaustionPolicy::radius;
    const json& radii = require(doc, "radii");
    if (!radii.is_array() || radii.empty()) throw Error(ErrorCode::bad_space, "'radii' must be a non-empty array");
    for (const auto& r : radii) spec.radii.push_back(rational_from_json(r));
  } else if (policy == "explicit") {
    spec.policy = ExhaustionPolicy::explicit_stages;
    const json& stages = require(doc, "stages");
    if (!stages.is_array() || stages.empty()) throw Error(ErrorCode::bad_space, "'stages' must be a non-empty array");
    for (const auto& st : stages) {
      if (!st.is_array()) throw Error(ErrorCode::bad_space, "each stage must be an array of point ids");
      std::vector<std::string> ids;
      for (const auto& id : st) {
        if (!id.is_string()) throw Error(ErrorCode::bad_space, "point ids must be strings");
        ids.push_back(id.get<std::string>());
      }
      spec.stages.push_back(std::move(ids));
    }
  } else {
    throw Error(ErrorCode::bad_space, "unknown exhaustion policy '" + policy + "'");
  }
  return spec;
}

}  // namespace

SpaceFile space_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::bad_space, "space file must be a JSON object");
  const json& metric_j = require(doc, "metric");
  if (!metric_j.is_string()) throw Error(ErrorCode::bad_space, "'metric' must be a string");
  const std::string metric = metric_j.get<std::string>();
  const json& points = require(doc, "points");
  if (!points.is_array() || points.empty()) throw Error(ErrorCode::bad_space, "'points' must be a non-empty array");
  auto bp_it = doc.find("basepoint");
  if (bp_it == doc.end() || !bp_it->is_string()) {
    throw Error(ErrorCode::missing_basepoint, "space file names no basepoint");
  }
  const std::string basepoint = bp_it->get<std::string>();

  std::vector<std::string> ids;
  std::vector<std::vector<Rational>> coords;
  for (const auto& p : points) {
    if (p.is_string()) {
      ids.push_back(p.get<std::string>());
      continue;
    }
    if (!p.is_object()) throw Error(ErrorCode::bad_space, "each point must be an id string or an object");
    const json& id = require(p, "id");
    if (!id.is_string()) throw Error(ErrorCode::bad_space, "point ids must be strings");
    ids.push_back(id.get<std::string>());
    if (auto c = p.find("coords"); c != p.end()) {
      if (!c->is_array()) throw Error(ErrorCode::bad_space, "'coords' must be an array");
      std::vector<Rational> xs;
      for (const auto& x : *c) xs.push_back(rational_from_json(x));
      coords.push_back(std::move(xs));
    }
  }

  ExhaustionSpec exhaustion;
  if (auto e = doc.find("exhaustion"); e != doc.end()) exhaustion = exhaustion_from_json(*e);

  if (metric == "matrix") {
    const json& matrix = require(doc, "matrix");
    if (!matrix.is_array()) throw Error(ErrorCode::bad_space, "'matrix' must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : matrix) {
      if (!row.is_array()) throw Error(ErrorCode::bad_space, "'matrix' must be an array of rows");
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      rows.push_back(std::move(r));
    }
    return {FiniteMetricSpace::from_matrix(std::move(ids), rows, basepoint), std::move(exhaustion)};
  }
  MetricKind kind;
  if (metric == "l2") {
    kind = MetricKind::l2;
  } else if (metric == "linf") {
    kind = MetricKind::linf;
  } else {
    throw Error(ErrorCode::bad_space, "unknown metric '" + metric + "'");
  }
  if (coords.size() != ids.size()) throw Error(ErrorCode::bad_space, "every point needs 'coords' for metric " + metric);
  return {FiniteMetricSpace::from_points(std::move(ids), coords, kind, basepoint), std::move(exhaustion)};
}

SpaceFile load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open space file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::bad_space, "space file '" + path + "' is not valid JSON: " + e.what());
  }
  return space_from_json(doc);
}

json nets_to_json(const FiniteMetricSpace& space, const std::vector<Net>& nets) {
  json stages = json::array();
  for (const auto& net : nets) {
    json members = json::array();
    for (std::size_t m : net.members) members.push_back(space.id(m));
    stages.push_back({{"stage", net.stage},
                      {"size", net.members.size()},
                      {"members", std::move(members)},
                      {"cover_radius", to_string(Rational(2, static_cast<long long>(net.stage)))},
                      {"separation", to_string(Rational(1, static_cast<long long>(net.stage)))}});
  }
  return {{"basepoint", space.id(space.basepoint())}, {"stages", std::move(stages)}};
}

std::vector<Net> nets_from_json(const FiniteMetricSpace& space, const json& doc) {
  std::vector<Net> nets;
  try {
    for (const auto& st : doc.at("stages")) {
      Net net;
      net.stage = st.at("stage").get<std::size_t>();
      if (net.stage != nets.size() + 1) throw Error(ErrorCode::parse, "nets must list stages 1, 2, ... in order");
      for (const auto& id : st.at("members")) {
        auto p = space.index_of(id.get<std::string>());
        if (!p) throw Error(ErrorCode::parse, "net member '" + id.get<std::string>() + "' is not a point of the space");
        net.members.push_back(*p);
      }
      std::sort(net.members.begin(), net.members.end());
      nets.push_back(std::move(net));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed nets document: ") + e.what());
  }
  return nets;
}

}  // namespace scembed
