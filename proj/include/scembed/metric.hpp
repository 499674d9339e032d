#pragma once

// Finite metric spaces, stage exhaustions and greedy (2/i, 1/i)-nets.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "scembed/exact.hpp"

namespace scembed {

enum class MetricKind { matrix, l2, linf };

const char* to_string(MetricKind kind) noexcept;

class FiniteMetricSpace {
 public:
  /// Distances given directly; rows must form a square matrix.
  static FiniteMetricSpace from_matrix(std::vector<std::string> ids, const std::vector<std::vector<Rational>>& rows,
                                       const std::string& basepoint);
  /// Point cloud under the Euclidean or max-coordinate metric.
  static FiniteMetricSpace from_points(std::vector<std::string> ids,
                                       const std::vector<std::vector<Rational>>& coords, MetricKind metric,
                                       const std::string& basepoint);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<std::size_t> index_of(const std::string& id) const;
  std::size_t basepoint() const noexcept { return basepoint_; }
  MetricKind metric() const noexcept { return metric_; }

  const Distance& distance(std::size_t i, std::size_t j) const { return dist_[i * ids_.size() + j]; }

  /// Largest distance within the subset (zero for fewer than two points).
  Distance diameter(const std::vector<std::size_t>& subset) const;
  /// Smallest positive distance within the subset, if any.
  std::optional<Distance> min_separation(const std::vector<std::size_t>& subset) const;

 private:
  FiniteMetricSpace() = default;
  void finish(const std::string& basepoint);

  std::vector<std::string> ids_;
  std::vector<Distance> dist_;
  std::size_t basepoint_ = 0;
  MetricKind metric_ = MetricKind::matrix;
};

enum class ExhaustionPolicy { full, radius, explicit_stages };

const char* to_string(ExhaustionPolicy policy) noexcept;

struct ExhaustionSpec {
  ExhaustionPolicy policy = ExhaustionPolicy::full;
  std::vector<Rational> radii;                     // radius policy
  std::vector<std::vector<std::string>> stages;    // explicit policy, as ids
};

/// Nested stages M_1 ⊆ M_2 ⊆ ...; stages past the configured ones are the
/// whole space.
class Exhaustion {
 public:
  Exhaustion(const FiniteMetricSpace& space, const ExhaustionSpec& spec);

  /// Points of M_i (1-based), ascending.
  const std::vector<std::size_t>& stage(std::size_t i) const;
  /// diam M_i, cached.
  const Distance& diameter(std::size_t i) const;
  std::size_t configured_stages() const noexcept { return stages_.size(); }
  const ExhaustionSpec& spec() const noexcept { return spec_; }

 private:
  ExhaustionSpec spec_;
  std::vector<std::vector<std::size_t>> stages_;
  std::vector<std::size_t> all_;
  std::vector<Distance> diam_;
  Distance diam_all_;
};

struct Net {
  std::size_t stage = 0;
  std::vector<std::size_t> members;  // ascending point index
};

struct NetCheck {
  bool covering = true;    // every point of M_i within 2/i of a member
  bool separated = true;   // members pairwise further than 1/i
  bool maximal = true;     // no point can be added keeping separation
  bool nested = true;      // contains the previous net (and O at stage 1)
  std::string witness;     // first violation, human readable

  bool ok() const noexcept { return covering && separated && maximal && nested; }
};

/// Greedy nets for stages 1..max_stage. Every net is checked before it is
/// returned; a failed check is an internal error.
std::vector<Net> build_nets(const FiniteMetricSpace& space, const Exhaustion& exhaustion, std::size_t max_stage);

/// Exhaustive check of one net against M_i; `previous` is Net_{i-1} or null.
NetCheck check_net(const FiniteMetricSpace& space, const Exhaustion& exhaustion, const Net& net,
                   const Net* previous);

/// The space file: points, metric, optional matrix, basepoint and an
/// optional "exhaustion" object.
struct SpaceFile {
  FiniteMetricSpace space;
  ExhaustionSpec exhaustion;
};

SpaceFile space_from_json(const nlohmann::json& doc);
SpaceFile load_space_file(const std::string& path);

/// A JSON number or a string holding an exact rational.
Rational rational_from_json(const nlohmann::json& value);

nlohmann::json nets_to_json(const FiniteMetricSpace& space, const std::vector<Net>& nets);
std::vector<Net> nets_from_json(const FiniteMetricSpace& space, const nlohmann::json& doc);

}  // namespace scembed
