#pragma once

// Scaling sequence, edge labels of the complete graphs over the nets,
// Gamma-words and the emitted presentation.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "scembed/family.hpp"
#include "scembed/metric.hpp"

namespace scembed {

struct ScalingStage {
  std::size_t stage = 0;
  std::uint64_t ratio = 0;   // n_i / i
  std::uint64_t n = 0;       // n_i
  std::uint64_t demand = 0;  // N_i (N_i - 1) / 2
  std::uint64_t sigma = 0;   // sigma_lb(n_i / i)
};

struct ScalingSequence {
  std::vector<ScalingStage> stages;
};

/// Smallest ratio q_i for each stage with q_i > q_{i-1}, q_i > n_{i-1} diam M_{i-1}
/// and sigma_lb(q_i) >= N_i (N_i - 1) / 2. Throws Infeasible if the search
/// leaves the 64-bit range.
ScalingSequence choose_scaling(const FiniteMetricSpace& space, const Exhaustion& exhaustion,
                               const std::vector<Net>& nets, const WordFamily& family);

struct ScalingCheck {
  bool increasing = true;   // (I)
  bool growth = true;       // (II)
  bool diameter = true;     // (III)
  bool minimal = true;      // ratio - 1 violates one of the three
  std::string witness;
  bool ok() const noexcept { return increasing && growth && diameter && minimal; }
};

ScalingCheck check_scaling(const FiniteMetricSpace& space, const Exhaustion& exhaustion, const std::vector<Net>& nets,
                           const WordFamily& family, const ScalingSequence& scaling);

/// One unordered pair {from, to}, from < to as point indices; `word` labels
/// the edge from -> to and its inverse labels to -> from.
struct EdgeLabel {
  std::size_t from = 0;
  std::size_t to = 0;
  std::uint64_t length = 0;
  FamilyRecord source;  // the family word (source.word is the label)

  const std::string& word() const noexcept { return source.word; }
};

struct StageLabels {
  std::size_t stage = 0;
  std::uint64_t n = 0;
  Rational lambda;
  std::vector<std::size_t> vertices;  // Net_i, ascending
  std::vector<EdgeLabel> edges;       // ascending (from, to)

  /// Index into `edges` of the pair {x, y}; nullopt when absent.
  std::optional<std::size_t> find(std::size_t x, std::size_t y) const;
  /// phi((x, y)) for the oriented edge. Throws UnknownPair.
  std::string oriented(std::size_t x, std::size_t y) const;
};

std::uint64_t label_length(const Distance& d, std::uint64_t n);

/// Fresh family words for every pair of every stage, consumed in ascending
/// (stage, pair) order from each length class. Throws ExhaustedLengthClass if
/// the family cannot supply a demanded word.
std::vector<StageLabels> label_edges(const FiniteMetricSpace& space, const std::vector<Net>& nets,
                                     const ScalingSequence& scaling, const WordFamily& family);

struct LabelCheck {
  bool lengths = true;
  bool injective = true;
  bool freely_reduced = true;
  std::string witness;
  bool ok() const noexcept { return lengths && injective && freely_reduced; }
};

/// Exact lengths, cyclic reduction and global injectivity of phi over the
/// closure under inversion.
LabelCheck check_labels(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages);

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Path {
  std::size_t stage = 0;
  std::vector<Edge> edges;

  bool irreducible() const;
  bool closed() const { return !edges.empty() && edges.front().from == edges.back().to; }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Concatenated labels, not freely reduced. Throws BrokenPath.
std::string gamma_word(const Path& path, const StageLabels& labels);

/// The unique edge sequence whose labels concatenate to `word`. Throws
/// NotAGammaWord with the furthest position reached.
Path parse_gamma_word(std::string_view word, const StageLabels& labels);

enum class PresentationMode { triangles, cycles };

struct PresentationOptions {
  PresentationMode mode = PresentationMode::triangles;
  std::size_t max_cycle_edges = 4;
  std::uint64_t max_relators = 100000;
  std::uint64_t max_letters = std::uint64_t(1) << 32;
};

struct Relator {
  std::size_t stage = 0;
  std::vector<std::size_t> cycle;  // vertices v0 v1 ... v_{t-1}, closed back to v0
  std::string word;
};

struct Presentation {
  PresentationOptions options;
  std::vector<Relator> relators;
};

/// Triangle relators phi(x,y) phi(y,z) phi(x,z)^-1 for every stage triple
/// x < y < z; in cycles mode also every simple cycle with 4..max_cycle_edges
/// edges, started at its least vertex, second vertex below the last. Throws
/// LimitExceeded past the caps.
Presentation emit_presentation(const std::vector<StageLabels>& stages, const PresentationOptions& options);

/// Label of the closed vertex cycle.
std::string cycle_word(const std::vector<std::size_t>& cycle, const StageLabels& labels);

/// Checks that the cycle label equals, after free reduction, the product of
/// the fan triangles from cycle[0], each a cyclic conjugate of an emitted
/// triangle relator or of its inverse.
bool triangulates(const std::vector<std::size_t>& cycle, const StageLabels& labels, const Presentation& triangles);

void write_presentation_text(std::ostream& out, const Presentation& p);
/// Relator words from the text format.
std::vector<std::string> read_presentation_text(std::istream& in);
std::string presentation_gap(const Presentation& p);

nlohmann::json scaling_to_json(const ScalingSequence& s);
ScalingSequence scaling_from_json(const nlohmann::json& doc);
nlohmann::json labels_to_json(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages);
std::vector<StageLabels> labels_from_json(const FiniteMetricSpace& space, const nlohmann::json& doc);
nlohmann::json presentation_to_json(const FiniteMetricSpace& space, const Presentation& p,
                                    const std::vector<StageLabels>& stages);
/// The manifest carries provenance only; `words` come from the text file.
Presentation presentation_from_json(const FiniteMetricSpace& space, const nlohmann::json& doc,
                                    const std::vector<std::string>& words);

}  // namespace scembed
