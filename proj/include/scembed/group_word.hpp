#pragma once

// Words in the free group on {a, b}. Serialized over 'a', 'b', 'A', 'B' with
// uppercase meaning inverse. Letter order for canonical forms is byte order
// (A < B < a < b).

#include <string>
#include <string_view>

namespace scembed {

constexpr char inverse_letter(char c) noexcept {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
    default: return c;
  }
}

constexpr bool is_group_letter(char c) noexcept {
  return c == 'a' || c == 'b' || c == 'A' || c == 'B';
}

/// Throws InvalidWord on letters outside {a, b, A, B}.
void require_group_word(std::string_view w);

std::string inverse_of(std::string_view w);
std::string free_reduce(std::string_view w);
bool is_freely_reduced(std::string_view w) noexcept;
bool is_cyclically_reduced(std::string_view w) noexcept;

/// Index of the lexicographically least rotation (least start on ties).
std::size_t least_rotation(std::string_view w) noexcept;
std::string rotate(std::string_view w, std::size_t start);

/// True iff w = v^k for some k >= 2.
bool is_proper_power(std::string_view w) noexcept;

/// Bitmask of letters present: a=1, b=2, A=4, B=8.
unsigned letter_mask(std::string_view w) noexcept;

class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::string letters);

  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool freely_reduced() const noexcept { return is_freely_reduced(letters_); }

  GroupWord inverse() const { return GroupWord(inverse_of(letters_)); }
  GroupWord reduced() const { return GroupWord(free_reduce(letters_)); }

  friend GroupWord operator*(const GroupWord& x, const GroupWord& y) {
    return GroupWord(x.letters_ + y.letters_);
  }
  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::string letters_;
};

/// A cyclically reduced word up to rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Throws NotCyclicallyReduced if w is not cyclically reduced.
  explicit CyclicWord(std::string w);

  const std::string& representative() const noexcept { return rep_; }
  std::string canonical() const { return rotate(rep_, least_rotation(rep_)); }
  std::size_t size() const noexcept { return rep_.size(); }

  CyclicWord inverse() const { return CyclicWord(inverse_of(rep_)); }

  friend bool operator==(const CyclicWord& x, const CyclicWord& y) {
    return x.size() == y.size() && x.canonical() == y.canonical();
  }

 private:
  std::string rep_;
};

}  // namespace scembed
