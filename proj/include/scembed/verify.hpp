#pragma once

// Checks on built stages: distortion sandwich, free-reduction retention,
// label-set small cancellation, and a ball oracle for short presentations.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "scembed/cstar.hpp"
#include "scembed/label.hpp"

namespace scembed {

struct PairBound {
  std::size_t x = 0;
  std::size_t y = 0;
  double distance = 0;
  double lower = 0;               // (1 - 2 lambda) d
  Rational upper;                 // ceil(n d) / n
  std::uint64_t witness_length = 0;
  std::uint64_t shortest_path = 0;  // weighted path in Gamma_i, weights |phi(e)|
  bool lower_ok = true;           // lower <= shortest_path / n
  bool upper_ok = true;           // shortest_path <= witness_length, upper <= d + 1/n, lower <= upper
  std::optional<double> gap;      // upper / lower when lower > 0

  bool ok() const noexcept { return lower_ok && upper_ok; }
};

struct SandwichReport {
  std::size_t stage = 0;
  std::vector<PairBound> pairs;
  std::optional<double> max_gap;
  std::optional<double> gap_bound;  // 1/(1-2 lambda) (1 + 1/(n dmin))
  bool passed = true;
};

/// Sandwich record for the pair (x, y) of net points. Throws UnknownPair.
PairBound distortion_bounds(const FiniteMetricSpace& space, const StageLabels& stage, std::size_t x, std::size_t y);
SandwichReport sandwich_report(const FiniteMetricSpace& space, const StageLabels& stage);

struct RetentionReport {
  std::size_t stage = 0;
  std::size_t trials = 0;
  std::size_t max_edges = 0;
  std::uint64_t seed = 0;
  std::size_t sampled = 0;
  std::size_t violations = 0;
  Rational worst_ratio{1};
  std::vector<std::size_t> worst_walk;  // vertex sequence
  bool passed = true;
};

/// Random irreducible paths of 1..max_edges edges; free reduction must keep at
/// least (1 - 2 lambda) of the letters.
RetentionReport retention_check(const StageLabels& stage, std::size_t trials, std::uint64_t seed,
                                std::size_t max_edges = 6);

struct OracleOptions {
  unsigned radius = 8;
  std::uint64_t max_ball = 3'000'000;   // free words in the ball
  unsigned max_quotient_degree = 7;     // symmetric groups used for lower bounds
};

/// Group elements of <a, b | R> up to a radius. Upper bounds come from
/// identifications found inside the ball (relator splits plus two-sided
/// congruence closure); lower bounds from homomorphisms to small symmetric
/// groups and to the abelianization. A distance is exact when both agree.
class CayleyBall {
 public:
  CayleyBall(const std::vector<std::string>& relators, OracleOptions options = {});

  struct Bound {
    unsigned lower = 0;
    std::optional<unsigned> upper;
    bool exact() const noexcept { return upper && *upper == lower; }
  };

  /// Bounds on the word length of the element represented by `word`.
  Bound distance(std::string_view word) const;

  /// Distinct classes whose shortest member has length <= r (exact count when
  /// every such class is exact).
  std::size_t ball_size(unsigned r) const;
  std::size_t word_count() const noexcept { return words_.size(); }
  std::size_t class_count() const noexcept { return classes_; }
  std::size_t quotient_count() const noexcept { return quotients_; }
  unsigned radius() const noexcept { return options_.radius; }

 private:
  std::size_t find(std::size_t x) const;
  bool unite(std::size_t x, std::size_t y);
  std::optional<std::size_t> lookup(const std::string& reduced) const;

  OracleOptions options_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  mutable std::vector<std::size_t> parent_;
  std::vector<unsigned> lower_;       // per word, folded into class roots after the build
  std::vector<unsigned> class_upper_;
  std::vector<unsigned> class_lower_;
  std::size_t classes_ = 0;
  std::size_t quotients_ = 0;
};

struct OraclePair {
  std::size_t x = 0;
  std::size_t y = 0;
  std::string word;  // alpha(x)^-1 alpha(y), freely reduced
  CayleyBall::Bound bound;
  bool inside = false;  // exact and within the sandwich
};

struct OracleReport {
  bool ran = false;
  std::string skipped;
  unsigned radius = 0;
  std::size_t ball_words = 0;
  std::size_t ball_classes = 0;
  std::size_t quotients = 0;
  std::vector<OraclePair> pairs;
  bool passed = true;
};

OracleReport oracle_report(const FiniteMetricSpace& space, const StageLabels& stage, const CayleyBall& ball);

struct VerifyOptions {
  std::size_t retention_trials = 500;
  std::size_t retention_max_edges = 6;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool oracle = false;
  std::size_t oracle_max_relator = 12;
  OracleOptions oracle_options;
};

struct StageReport {
  std::size_t stage = 0;
  std::uint64_t n = 0;
  Rational lambda;
  LabelCheck labels;
  bool relators_closed = true;  // every relator of the stage parses as a closed path
  std::string relator_witness;
  CstarReport cstar;
  SandwichReport sandwich;
  RetentionReport retention;
  std::optional<OracleReport> oracle;
  std::vector<std::string> failures;
  bool passed = true;
};

struct VerifyReport {
  LabelCheck global;
  std::vector<StageReport> stages;
  std::optional<std::string> oracle_skipped;
  bool passed = true;
};

StageReport verify_stage(const FiniteMetricSpace& space, const StageLabels& stage, const Presentation& presentation,
                         const VerifyOptions& options, const CayleyBall* ball);

VerifyReport verify_all(const FiniteMetricSpace& space, const std::vector<StageLabels>& stages,
                        const Presentation& presentation, const VerifyOptions& options);

nlohmann::json verify_to_json(const FiniteMetricSpace& space, const VerifyReport& report);
std::string verify_to_text(const FiniteMetricSpace& space, const VerifyReport& report);

}  // namespace scembed
