#pragma once

// l-aperiodic positive words over {a, b}: membership test and a resumable
// lexicographic enumeration (a < b).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scembed {

/// True iff w contains no factor V^l with V non-empty. Throws InvalidExponent
/// for l < 2. Works on any alphabet; letters are compared as bytes.
bool is_l_aperiodic(std::string_view w, unsigned l);

/// True iff w ends with some V^l. Used by the enumerator to prune prefixes.
bool ends_with_power(std::string_view w, unsigned l) noexcept;

/// Checks that w uses only 'a' and 'b'. Throws InvalidWord otherwise.
void require_positive_word(std::string_view w);

class AperiodicCatalog {
 public:
  AperiodicCatalog(std::size_t length, unsigned exponent = 6);

  /// Continues the stream right after `last` (the checkpoint). `last` need not
  /// itself be aperiodic; the next yield is the least aperiodic word > last.
  static AperiodicCatalog resume(std::string_view last, unsigned exponent = 6);

  /// Next word in lexicographic order, or nullptr once the stream is done.
  /// The pointer stays valid until the following call.
  const std::string* next();

  std::size_t length() const noexcept { return length_; }
  unsigned exponent() const noexcept { return exponent_; }
  std::uint64_t yielded() const noexcept { return yielded_; }
  bool exhausted() const noexcept { return done_; }

  /// Last yielded word; empty optional before the first yield.
  std::optional<std::string> checkpoint() const;

  /// Re-run the full aperiodicity test on every yield (on by default).
  void set_full_check(bool on) noexcept { full_check_ = on; }

 private:
  bool fill();
  bool backtrack_and_fill();

  std::size_t length_;
  unsigned exponent_;
  std::string buffer_;
  bool started_ = false;
  bool done_ = false;
  bool full_check_ = true;
  bool has_yield_ = false;
  std::uint64_t yielded_ = 0;
};

/// min(f_l(k), cap) where f_l(k) counts l-aperiodic words of length k.
std::uint64_t count_aperiodic(std::size_t k, unsigned l, std::uint64_t cap);

/// Checkpoint files: plain text, one word per line.
void write_checkpoints(std::ostream& out, const std::vector<std::string>& words);
std::vector<std::string> read_checkpoints(std::istream& in);

}  // namespace scembed
