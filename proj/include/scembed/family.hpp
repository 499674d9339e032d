#pragma once

// The word family T = union of T(n).
//
// Block family: W_{k,i} is k blocks a^r b X b, where X runs over consecutive
// catalog words of length k - r - 2 (ranks ik .. ik+k-1, zero based), so
// |W_{k,i}| = k^2. A_k is split round-robin into 2k+1 parts; T(n) pads the
// members of part (n - k^2) + 1, k = floor(sqrt n), with b^m up to length n.
//
// Short family: one representative per {conjugacy class, inverse class} of
// primitive cyclically reduced words of length n over {a, b, A, B}, the least
// rotation in byte order. Used for toy-scale pipelines.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scembed/aperiodic.hpp"
#include "scembed/schedule.hpp"

namespace scembed {

struct BlockParams {
  unsigned prefix_run = 6;
  unsigned exponent = 6;

  std::uint64_t catalog_length(std::uint64_t k) const { return k - prefix_run - 2; }
  std::uint64_t min_k() const { return prefix_run + 3; }
};

struct BlockWord {
  std::uint64_t k = 0;
  std::uint64_t index = 0;
  std::string word;
};

/// Streams A_k in index order i = 0, 1, ... and stops at the first index whose
/// k catalog words are not all available.
class BlockStream {
 public:
  BlockStream(std::uint64_t k, BlockParams params = {});
  std::optional<BlockWord> next();

 private:
  std::uint64_t k_;
  BlockParams params_;
  AperiodicCatalog catalog_;
  std::uint64_t index_ = 0;
};

/// W_{k,i}. Throws InvalidLength for k <= r + 2 and CatalogExhausted when the
/// catalog has fewer than (i+1)k words.
BlockWord build_block_word(std::uint64_t k, std::uint64_t i, const BlockParams& params = {});

/// All of A_k, capped at `limit` words.
std::vector<BlockWord> enumerate_A(std::uint64_t k, const BlockParams& params = {},
                                   std::uint64_t limit = UINT64_MAX);

/// Part (1 .. 2k+1) holding block index i.
constexpr std::uint64_t part_of(std::uint64_t i, std::uint64_t k) { return i % (2 * k + 1) + 1; }

enum class FamilyKind { block, short_words };

struct FamilyConfig {
  FamilyKind kind = FamilyKind::block;
  BlockParams block;
  bool cutoff = true;
  Rational threshold{1, 50};
};

/// One word of T(n). For the short family k, part and pad are 0 and index is
/// the rank within T(n).
struct FamilyRecord {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t index = 0;
  std::uint64_t part = 0;
  std::uint64_t pad = 0;
  std::string word;

  std::uint64_t core_length() const { return k * k; }
};

/// First `count` words of the short family at length n, in byte order.
std::vector<std::string> short_family_words(std::uint64_t n, std::uint64_t count);
bool is_short_family_word(std::string_view w);

class WordFamily {
 public:
  explicit WordFamily(FamilyConfig config);

  const FamilyConfig& config() const noexcept { return config_; }
  const LambdaSchedule& lambda() const noexcept { return lambda_; }

  /// Analytic lower bound on card T(n); non-decreasing in n.
  std::uint64_t sigma_lower_bound(std::uint64_t n) const;

  /// Exact card T(n) when it can be computed by enumeration (saturating at
  /// cap); nullopt when the catalog is too large to count.
  std::optional<std::uint64_t> sigma_materialized(std::uint64_t n, std::uint64_t cap = UINT64_MAX) const;

  /// Up to `count` words of T(n) in rank order. Empty when T(n) is empty. Throws
  /// InvalidLength for n < 81 with the block family.
  std::vector<FamilyRecord> materialize(std::uint64_t n, std::uint64_t count) const;

  /// Batched form; one catalog pass per block parameter k.
  std::map<std::uint64_t, std::vector<FamilyRecord>> materialize_many(
      const std::map<std::uint64_t, std::uint64_t>& demand) const;

  /// Least n with a non-empty T(n), ignoring the cutoff.
  std::uint64_t first_nonempty_length() const;

 private:
  FamilyConfig config_;
  LambdaSchedule lambda_;
  mutable std::optional<std::uint64_t> first_nonempty_;
};

/// The operational form of T(n): at most `count` words. Throws InvalidLength
/// below the first non-empty length and FamilyEmpty when T(n) has no members.
std::vector<FamilyRecord> build_T(const WordFamily& family, std::uint64_t n, std::uint64_t count);

}  // namespace scembed
