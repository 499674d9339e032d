#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace scembed {

/// Suffix automaton over the four group letters. Each state also records
/// the end position of its first occurrence.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::string_view text);

  struct Match {
    std::size_t length = 0;
    std::size_t text_end = 0;   // index in the indexed text of the last matched letter
    std::size_t query_end = 0;  // index in the query of the last matched letter
  };

  /// Longest common factor of the indexed text and `query`, truncated at cap.
  Match longest_common_factor(std::string_view query, std::size_t cap) const;

  /// Per-state occurrence statistics: number of end positions (saturated at 3)
  /// and the least and greatest end position.
  struct Occurrences {
    std::vector<std::uint8_t> count;
    std::vector<std::int32_t> min_end;
    std::vector<std::int32_t> max_end;
  };
  Occurrences occurrences() const;

  std::size_t state_count() const noexcept { return len_.size(); }
  std::size_t text_size() const noexcept { return text_size_; }
  std::int32_t length_of(std::size_t state) const { return len_[state]; }
  std::int32_t link_of(std::size_t state) const { return link_[state]; }

 private:
  static int code(char c) noexcept;

  std::vector<std::int32_t> len_;
  std::vector<std::int32_t> link_;
  std::vector<std::int32_t> first_end_;
  std::vector<std::array<std::int32_t, 4>> next_;
  std::vector<std::uint8_t> is_clone_;
  std::size_t text_size_;
};

/// Index for cyclic-word queries, built over the doubled word uu.
class CyclicIndex {
 public:
  explicit CyclicIndex(std::string_view word);

  std::size_t size() const noexcept { return n_; }

  struct Overlap {
    std::size_t length = 0;
    std::size_t start_self = 0;   // rotation offset in this word
    std::size_t start_other = 0;  // rotation offset in the other word
  };
  /// Longest common factor of rotations of this word and of `other`.
  Overlap common_factor(std::string_view other) const;

  /// Longest L such that some factor of length L occurs at two distinct cyclic
  /// start positions.
  std::size_t repeated_factor() const;

 private:
  std::size_t n_;
  SuffixAutomaton sam_;
};

}  // namespace scembed
