#include "scembed/group_word.hpp"

#include "scembed/error.hpp"

namespace scembed {

void require_group_word(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_group_letter(w[i])) {
      throw Error(ErrorCode::invalid_word, "letter '" + std::string(1, w[i]) + "' at position " +
                                               std::to_string(i) + " is not in {a, b, A, B}");
    }
  }
}

std::string inverse_of(std::string_view w) {
  std::string out(w.size(), '\0');
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = inverse_letter(w[i]);
  return out;
}

std::string free_reduce(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == inverse_letter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_freely_reduced(std::string_view w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inverse_letter(w[i - 1])) return false;
  }
  return true;
}

bool is_cyclically_reduced(std::string_view w) noexcept {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != inverse_letter(w.back());
}

// Booth-style two-pointer scan for the least rotation.
std::size_t least_rotation(std::string_view w) noexcept {
  const std::size_t n = w.size();
  if (n < 2) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    char x = w[(i + k) % n];
    char y = w[(j + k) % n];
    if (x == y) {
      ++k;
      continue;
    }
    if (x > y) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return i < j ? i : j;
}

std::string rotate(std::string_view w, std::size_t start) {
  if (w.empty()) return {};
  start %= w.size();
  std::string out;
  out.reserve(w.size());
  out.append(w.substr(start));
  out.append(w.substr(0, start));
  return out;
}

bool is_proper_power(std::string_view w) noexcept {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p * 2 <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return true;
  }
  return false;
}

unsigned letter_mask(std::string_view w) noexcept {
  unsigned m = 0;
  for (char c : w) {
    switch (c) {
      case 'a': m |= 1u; break;
      case 'b': m |= 2u; break;
      case 'A': m |= 4u; break;
      case 'B': m |= 8u; break;
      default: break;
    }
  }
  return m;
}

GroupWord::GroupWord(std::string letters) : letters_(std::move(letters)) {
  require_group_word(letters_);
}

CyclicWord::CyclicWord(std::string w) : rep_(std::move(w)) {
  require_group_word(rep_);
  if (!is_cyclically_reduced(rep_)) {
    throw Error(ErrorCode::not_cyclically_reduced, "'" + rep_.substr(0, 64) + "' is not cyclically reduced");
  }
}

}  // namespace scembed
