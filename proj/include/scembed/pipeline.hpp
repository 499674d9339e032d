#pragma once

// Pipeline configuration and the artifact-producing commands.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "scembed/exact.hpp"
#include "scembed/family.hpp"
#include "scembed/label.hpp"
#include "scembed/verify.hpp"

namespace scembed {

enum class Mode { strict, relaxed };

struct PipelineConfig {
  Mode mode = Mode::relaxed;
  FamilyKind family = FamilyKind::short_words;
  unsigned exponent = 3;
  unsigned prefix_run = 2;
  Rational threshold{1, 50};
  bool cutoff = false;

  std::size_t max_stage = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  std::string presentation = "triangles";  // or "cycles"
  std::size_t max_cycle_edges = 4;
  bool gap = false;
  std::uint64_t max_relators = 100000;
  std::uint64_t max_relator_letters = std::uint64_t(1) << 32;

  std::size_t retention_trials = 500;
  std::size_t retention_max_edges = 6;

  bool oracle = true;
  unsigned oracle_radius = 8;
  std::uint64_t oracle_ball_cap = 3'000'000;
  std::size_t oracle_max_relator = 12;
  unsigned oracle_quotient_degree = 7;

  std::vector<std::uint64_t> family_lengths;  // `family` command
  std::uint64_t family_count = 1;

  std::string space;
  std::string out = "out";
};

/// Documented defaults for a mode.
PipelineConfig config_defaults(Mode mode);

/// Defaults of the document's mode (relaxed if absent), overlaid with its
/// keys. Unknown keys and strict-mode conflicts throw BadConfig.
PipelineConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const PipelineConfig& config);
void validate_config(const PipelineConfig& config);

WordFamily make_family(const PipelineConfig& config);
VerifyOptions verify_options(const PipelineConfig& config);
PresentationOptions presentation_options(const PipelineConfig& config);

/// Runs one of family, nets, label, present, verify, pipeline against the
/// configured output directory. Returns a JSON summary with "status" (0 pass,
/// 1 verification failure); module errors propagate as Error. Inputs are
/// validated before anything is written.
nlohmann::json run_command(const PipelineConfig& config, const std::string& command);

/// Record lines "n k i part pad word" and the per-length manifest.
void write_family_text(std::ostream& out, const std::vector<FamilyRecord>& records);
std::vector<FamilyRecord> read_family_text(std::istream& in);
nlohmann::json family_manifest(const PipelineConfig& config, const std::vector<FamilyRecord>& records);

}  // namespace scembed
