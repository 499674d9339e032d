#include "scembed/aperiodic.hpp"

#include <istream>
#include <ostream>

#include "scembed/error.hpp"

namespace scembed {

namespace {

void require_exponent(unsigned l) {
  if (l < 2) throw Error(ErrorCode::invalid_exponent, "exponent must be >= 2, got " + std::to_string(l));
}

}  // namespace

void require_positive_word(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 'a' && w[i] != 'b') {
      throw Error(ErrorCode::invalid_word, "letter '" + std::string(1, w[i]) + "' at position " +
                                               std::to_string(i) + " is not in {a, b}");
    }
  }
}

// A factor V^l with |V| = p is a stretch of (l-1)p consecutive positions t with
// w[t] == w[t+p]. Such a stretch always covers a multiple of p, so it suffices
// to extend left and right from the sample points p, 2p, 3p, ...
bool is_l_aperiodic(std::string_view w, unsigned l) {
  require_exponent(l);
  const std::size_t n = w.size();
  const char* s = w.data();
  for (std::size_t p = 1; p * l <= n; ++p) {
    const std::size_t need = (l - 1) * p;
    std::size_t covered_to = 0;  // stretches already measured end before this
    for (std::size_t q = p; q + p <= n; q += p) {
      if (q < covered_to) continue;
      std::size_t fwd = 0;
      while (q + fwd + p < n && s[q + fwd] == s[q + fwd + p]) ++fwd;
      std::size_t back = 0;
      while (back < q && s[q - back - 1] == s[q - back - 1 + p]) ++back;
      if (fwd + back >= need) return false;
      covered_to = q + fwd + 1;
    }
  }
  return true;
}

bool ends_with_power(std::string_view w, unsigned l) noexcept {
  const std::size_t n = w.size();
  const char* s = w.data();
  for (std::size_t p = 1; p * l <= n; ++p) {
    const std::size_t need = (l - 1) * p;
    std::size_t t = 0;
    // compare s[n-1-t] with s[n-1-t-p]
    while (t < need && s[n - 1 - t] == s[n - 1 - t - p]) ++t;
    if (t == need) return true;
  }
  return false;
}

AperiodicCatalog::AperiodicCatalog(std::size_t length, unsigned exponent)
    : length_(length), exponent_(exponent) {
  require_exponent(exponent);
  buffer_.reserve(length);
}

AperiodicCatalog AperiodicCatalog::resume(std::string_view last, unsigned exponent) {
  require_positive_word(last);
  AperiodicCatalog cat(last.size(), exponent);
  cat.started_ = true;
  // Keep the longest valid prefix plus the first offending letter; everything
  // extending an invalid prefix is skipped by the backtrack step.
  for (char c : last) {
    cat.buffer_.push_back(c);
    if (ends_with_power(cat.buffer_, exponent)) break;
  }
  cat.has_yield_ = true;
  return cat;
}

bool AperiodicCatalog::fill() {
  while (buffer_.size() < length_) {
    buffer_.push_back('a');
    if (!ends_with_power(buffer_, exponent_)) continue;
    buffer_.back() = 'b';
    if (!ends_with_power(buffer_, exponent_)) continue;
    return false;
  }
  return true;
}

bool AperiodicCatalog::backtrack_and_fill() {
  for (;;) {
    while (!buffer_.empty() && buffer_.back() == 'b') buffer_.pop_back();
    if (buffer_.empty()) return false;
    buffer_.back() = 'b';
    if (!ends_with_power(buffer_, exponent_) && fill()) return true;
  }
}

const std::string* AperiodicCatalog::next() {
  if (done_) return nullptr;
  bool ok;
  if (!started_) {
    started_ = true;
    ok = fill() || backtrack_and_fill();
  } else {
    ok = backtrack_and_fill();
  }
  if (!ok) {
    done_ = true;
    return nullptr;
  }
  if (full_check_ && !is_l_aperiodic(buffer_, exponent_)) {
    throw Error(ErrorCode::invalid_word, "enumerator produced a periodic word: " + buffer_);
  }
  has_yield_ = true;
  ++yielded_;
  return &buffer_;
}

std::optional<std::string> AperiodicCatalog::checkpoint() const {
  if (!has_yield_) return std::nullopt;
  return buffer_;
}

std::uint64_t count_aperiodic(std::size_t k, unsigned l, std::uint64_t cap) {
  AperiodicCatalog cat(k, l);
  cat.set_full_check(false);
  std::uint64_t count = 0;
  while (count < cap && cat.next() != nullptr) ++count;
  return count;
}

void write_checkpoints(std::ostream& out, const std::vector<std::string>& words) {
  for (const auto& w : words) out << w << '\n';
}

std::vector<std::string> read_checkpoints(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    require_positive_word(line);
    words.push_back(line);
  }
  return words;
}

}  // namespace scembed
