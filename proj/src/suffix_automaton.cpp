#include "scembed/suffix_automaton.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "scembed/error.hpp"

namespace scembed {

int SuffixAutomaton::code(char c) noexcept {
  switch (c) {
    case 'a': return 0;
    case 'b': return 1;
    case 'A': return 2;
    case 'B': return 3;
    default: return -1;
  }
}

SuffixAutomaton::SuffixAutomaton(std::string_view text) : text_size_(text.size()) {
  const std::size_t cap = 2 * text.size() + 2;
  len_.reserve(cap);
  link_.reserve(cap);
  first_end_.reserve(cap);
  next_.reserve(cap);
  is_clone_.reserve(cap);
  constexpr std::array<std::int32_t, 4> none{-1, -1, -1, -1};
  auto add_state = [&](std::int32_t len, std::int32_t link, std::int32_t first_end, bool clone) {
    len_.push_back(len);
    link_.push_back(link);
    first_end_.push_back(first_end);
    next_.push_back(none);
    is_clone_.push_back(clone ? 1 : 0);
    return static_cast<std::int32_t>(len_.size() - 1);
  };
  add_state(0, -1, -1, false);
  std::int32_t last = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int c = code(text[i]);
    if (c < 0) throw Error(ErrorCode::invalid_word, "suffix automaton: letter outside {a, b, A, B}");
    std::int32_t cur = add_state(len_[last] + 1, 0, static_cast<std::int32_t>(i), false);
    std::int32_t p = last;
    while (p != -1 && next_[p][c] == -1) {
      next_[p][c] = cur;
      p = link_[p];
    }
    if (p != -1) {
      std::int32_t q = next_[p][c];
      if (len_[p] + 1 == len_[q]) {
        link_[cur] = q;
      } else {
        std::int32_t clone = add_state(len_[p] + 1, link_[q], first_end_[q], true);
        next_[clone] = next_[q];
        while (p != -1 && next_[p][c] == q) {
          next_[p][c] = clone;
          p = link_[p];
        }
        link_[q] = clone;
        link_[cur] = clone;
      }
    }
    last = cur;
  }
}

SuffixAutomaton::Match SuffixAutomaton::longest_common_factor(std::string_view query,
                                                              std::size_t cap) const {
  Match best;
  std::int32_t state = 0;
  std::size_t matched = 0;
  for (std::size_t j = 0; j < query.size(); ++j) {
    const int c = code(query[j]);
    if (c < 0) throw Error(ErrorCode::invalid_word, "suffix automaton query: letter outside {a, b, A, B}");
    while (state != 0 && next_[state][c] == -1) {
      state = link_[state];
      matched = static_cast<std::size_t>(len_[state]);
    }
    if (next_[state][c] != -1) {
      state = next_[state][c];
      ++matched;
    } else {
      state = 0;
      matched = 0;
    }
    const std::size_t m = std::min(matched, cap);
    if (m > best.length) {
      best.length = m;
      best.text_end = static_cast<std::size_t>(first_end_[state]);
      best.query_end = j;
      if (best.length == cap) break;
    }
  }
  return best;
}

SuffixAutomaton::Occurrences SuffixAutomaton::occurrences() const {
  const std::size_t n = len_.size();
  Occurrences occ;
  occ.count.assign(n, 0);
  occ.min_end.assign(n, std::numeric_limits<std::int32_t>::max());
  occ.max_end.assign(n, -1);
  for (std::size_t s = 1; s < n; ++s) {
    if (!is_clone_[s]) {
      occ.count[s] = 1;
      occ.min_end[s] = occ.max_end[s] = first_end_[s];
    }
  }
  // counting sort by length, then push statistics up the suffix-link tree
  std::vector<std::size_t> bucket(text_size_ + 2, 0);
  for (std::size_t s = 0; s < n; ++s) ++bucket[static_cast<std::size_t>(len_[s])];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  std::vector<std::int32_t> order(n);
  for (std::size_t s = n; s-- > 0;) order[--bucket[static_cast<std::size_t>(len_[s])]] = static_cast<std::int32_t>(s);
  for (std::size_t idx = n; idx-- > 1;) {
    const std::int32_t s = order[idx];
    const std::int32_t p = link_[s];
    if (p < 0) continue;
    occ.count[p] = static_cast<std::uint8_t>(std::min(3, occ.count[p] + occ.count[s]));
    occ.min_end[p] = std::min(occ.min_end[p], occ.min_end[s]);
    occ.max_end[p] = std::max(occ.max_end[p], occ.max_end[s]);
  }
  return occ;
}

CyclicIndex::CyclicIndex(std::string_view word)
    : n_(word.size()), sam_(std::string(word) + std::string(word)) {
  if (word.empty()) throw Error(ErrorCode::empty_word, "cyclic index of the empty word");
}

CyclicIndex::Overlap CyclicIndex::common_factor(std::string_view other) const {
  Overlap out;
  if (other.empty()) return out;
  const std::string doubled = std::string(other) + std::string(other);
  const std::size_t cap = std::min(n_, other.size());
  const auto m = sam_.longest_common_factor(doubled, cap);
  if (m.length == 0) return out;
  out.length = m.length;
  out.start_self = (m.text_end + 1 + n_ - m.length) % n_;
  out.start_other = (m.query_end + 1 + other.size() - m.length) % other.size();
  return out;
}

// Factors of length L <= n of the cyclic word occur in uu at starts in
// [0, 2n - L]; two starts name the same cyclic position iff they differ by n.
std::size_t CyclicIndex::repeated_factor() const {
  const auto occ = sam_.occurrences();
  std::size_t best = 0;
  const auto n = static_cast<std::int64_t>(n_);
  for (std::size_t s = 1; s < sam_.state_count(); ++s) {
    const std::int64_t lo = sam_.length_of(static_cast<std::size_t>(sam_.link_of(s))) + 1;
    const std::int64_t hi = std::min<std::int64_t>(sam_.length_of(s), n);
    if (lo > hi) continue;
    const bool distinct = occ.count[s] >= 3 ||
                          (occ.count[s] == 2 && occ.max_end[s] - occ.min_end[s] != n);
    if (distinct) best = std::max(best, static_cast<std::size_t>(hi));
  }
  return best;
}

}  // namespace scembed
