#include "scembed/family.hpp"

#include <algorithm>

#include "scembed/error.hpp"
#include "scembed/group_word.hpp"

namespace scembed {

namespace {

void require_block_k(std::uint64_t k, const BlockParams& params) {
  if (k < params.min_k()) {
    throw Error(ErrorCode::invalid_length, "block parameter k = " + std::to_string(k) + " must exceed " +
                                               std::to_string(params.prefix_run + 2));
  }
}

void append_block(std::string& out, unsigned prefix_run, const std::string& middle) {
  out.append(prefix_run, 'a');
  out.push_back('b');
  out.append(middle);
  out.push_back('b');
}

std::uint64_t isqrt_u64(std::uint64_t n) { return saturate_u64(isqrt(BigInt(n))); }

}  // namespace

BlockStream::BlockStream(std::uint64_t k, BlockParams params)
    : k_(k), params_(params), catalog_((require_block_k(k, params), params.catalog_length(k)), params.exponent) {}

std::optional<BlockWord> BlockStream::next() {
  BlockWord out{k_, index_, {}};
  out.word.reserve(k_ * k_);
  for (std::uint64_t j = 0; j < k_; ++j) {
    const std::string* x = catalog_.next();
    if (x == nullptr) return std::nullopt;
    append_block(out.word, params_.prefix_run, *x);
  }
  ++index_;
  return out;
}

BlockWord build_block_word(std::uint64_t k, std::uint64_t i, const BlockParams& params) {
  require_block_k(k, params);
  AperiodicCatalog catalog(params.catalog_length(k), params.exponent);
  catalog.set_full_check(false);
  const std::uint64_t first = i * k;
  for (std::uint64_t r = 0; r < first; ++r) {
    if (catalog.next() == nullptr) {
      throw Error(ErrorCode::catalog_exhausted, "catalog of length " + std::to_string(params.catalog_length(k)) +
                                                    " has only " + std::to_string(r) + " words; W_{" +
                                                    std::to_string(k) + "," + std::to_string(i) + "} needs " +
                                                    std::to_string((i + 1) * k));
    }
  }
  BlockWord out{k, i, {}};
  out.word.reserve(k * k);
  for (std::uint64_t j = 0; j < k; ++j) {
    const std::string* x = catalog.next();
    if (x == nullptr) {
      throw Error(ErrorCode::catalog_exhausted, "catalog of length " + std::to_string(params.catalog_length(k)) +
                                                    " has only " + std::to_string(first + j) + " words; W_{" +
                                                    std::to_string(k) + "," + std::to_string(i) + "} needs " +
                                                    std::to_string((i + 1) * k));
    }
    if (!is_l_aperiodic(*x, params.exponent)) throw Error(ErrorCode::invalid_word, "catalog word failed recheck");
    append_block(out.word, params.prefix_run, *x);
  }
  return out;
}

std::vector<BlockWord> enumerate_A(std::uint64_t k, const BlockParams& params, std::uint64_t limit) {
  BlockStream stream(k, params);
  std::vector<BlockWord> out;
  while (out.size() < limit) {
    auto w = stream.next();
    if (!w) break;
    out.push_back(std::move(*w));
  }
  return out;
}

bool is_short_family_word(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (!is_group_letter(c)) return false;
  }
  if (!is_cyclically_reduced(w) || is_proper_power(w)) return false;
  if (least_rotation(w) != 0) return false;
  const std::string inv = inverse_of(w);
  return std::string_view(w) <= std::string_view(rotate(inv, least_rotation(inv)));
}

std::vector<std::string> short_family_words(std::uint64_t n, std::uint64_t count) {
  std::vector<std::string> out;
  if (n == 0 || count == 0) return out;
  static constexpr char letters[] = {'A', 'B', 'a', 'b'};
  std::string w;
  w.reserve(n);
  // iterative DFS over freely reduced words in byte order
  std::vector<int> choice;
  choice.reserve(n);
  choice.push_back(-1);
  while (!choice.empty()) {
    int& c = choice.back();
    ++c;
    if (c >= 4) {
      choice.pop_back();
      if (!w.empty()) w.pop_back();
      continue;
    }
    const char letter = letters[c];
    if (!w.empty() && w.back() == inverse_letter(letter)) continue;
    w.push_back(letter);
    if (w.size() == n) {
      if (is_short_family_word(w)) {
        out.push_back(w);
        if (out.size() >= count) break;
      }
      w.pop_back();
      continue;
    }
    choice.push_back(-1);
  }
  return out;
}

WordFamily::WordFamily(FamilyConfig config)
    : config_(std::move(config)), lambda_(config_.cutoff, config_.threshold) {
  if (config_.block.exponent < 2) throw Error(ErrorCode::bad_config, "aperiodicity exponent must be >= 2");
}

std::uint64_t WordFamily::sigma_lower_bound(std::uint64_t n) const {
  if (config_.kind == FamilyKind::short_words) {
    if (n == 0) return 0;
    return primitive_cyclically_reduced_count(n) / (2 * n);
  }
  if (n < 81) return 0;
  if (config_.cutoff && n <= lambda_.cutoff_n()) return 0;
  // the analytic count of the catalog relies on f_6(m) > 1.5^m
  if (config_.block.exponent < 6) return 0;
  return block_sigma_bound(isqrt_u64(n), config_.block.prefix_run);
}

std::optional<std::uint64_t> WordFamily::sigma_materialized(std::uint64_t n, std::uint64_t cap) const {
  if (config_.kind == FamilyKind::short_words) {
    if (n > 16) return std::nullopt;
    return static_cast<std::uint64_t>(short_family_words(n, cap).size());
  }
  if (n < 81) return 0;
  if (config_.cutoff && n <= lambda_.cutoff_n()) return 0;
  const std::uint64_t k = isqrt_u64(n);
  if (k < config_.block.min_k()) return 0;
  const std::uint64_t m = config_.block.catalog_length(k);
  if (m > 30) return std::nullopt;
  const std::uint64_t f = count_aperiodic(m, config_.block.exponent, UINT64_MAX);
  const std::uint64_t blocks = f / k;
  const std::uint64_t l = n - k * k;
  const std::uint64_t members = blocks > l ? (blocks - l - 1) / (2 * k + 1) + 1 : 0;
  return std::min(members, cap);
}

std::vector<FamilyRecord> WordFamily::materialize(std::uint64_t n, std::uint64_t count) const {
  auto many = materialize_many({{n, count}});
  return std::move(many[n]);
}

std::map<std::uint64_t, std::vector<FamilyRecord>> WordFamily::materialize_many(
    const std::map<std::uint64_t, std::uint64_t>& demand) const {
  std::map<std::uint64_t, std::vector<FamilyRecord>> out;
  if (config_.kind == FamilyKind::short_words) {
    for (const auto& [n, count] : demand) {
      auto& records = out[n];
      auto words = short_family_words(n, count);
      for (std::size_t r = 0; r < words.size(); ++r) records.push_back({n, 0, r, 0, 0, std::move(words[r])});
    }
    return out;
  }

  // block index -> length n it serves, grouped by k
  std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> wanted;
  for (const auto& [n, count] : demand) {
    out[n];
    if (n < 81) throw Error(ErrorCode::invalid_length, "T(n) is defined for n >= 81, got " + std::to_string(n));
    if (config_.cutoff && n <= lambda_.cutoff_n()) continue;
    const std::uint64_t k = isqrt_u64(n);
    if (k < config_.block.min_k()) continue;
    const std::uint64_t l = n - k * k;
    // the catalog has at most 2^m words, so A_k has fewer than 2^m / k members
    const std::uint64_t m = config_.block.catalog_length(k);
    const std::uint64_t blocks = m < 64 ? (std::uint64_t(1) << m) / k : UINT64_MAX;
    const std::uint64_t reachable = l < blocks ? (blocks - l - 1) / (2 * k + 1) + 1 : 0;
    for (std::uint64_t j = 0; j < std::min(count, reachable); ++j) wanted[k][l + j * (2 * k + 1)] = n;
  }

  const BlockParams& params = config_.block;
  for (const auto& [k, indices] : wanted) {
    AperiodicCatalog catalog(params.catalog_length(k), params.exponent);
    catalog.set_full_check(false);
    std::uint64_t rank = 0;  // words consumed so far
    for (const auto& [i, n] : indices) {
      bool complete = true;
      while (rank < i * k) {
        if (catalog.next() == nullptr) {
          complete = false;
          break;
        }
        ++rank;
      }
      if (!complete) break;
      FamilyRecord rec{n, k, i, part_of(i, k), n - k * k, {}};
      rec.word.reserve(n);
      for (std::uint64_t j = 0; j < k && complete; ++j) {
        const std::string* x = catalog.next();
        if (x == nullptr) {
          complete = false;
          break;
        }
        ++rank;
        if (!is_l_aperiodic(*x, params.exponent)) {
          throw Error(ErrorCode::invalid_word, "catalog word failed recheck");
        }
        append_block(rec.word, params.prefix_run, *x);
      }
      if (!complete) break;
      rec.word.append(rec.pad, 'b');
      out[n].push_back(std::move(rec));
    }
  }
  return out;
}

std::uint64_t WordFamily::first_nonempty_length() const {
  if (config_.kind == FamilyKind::short_words) return 1;
  if (first_nonempty_) return *first_nonempty_;
  const BlockParams& params = config_.block;
  for (std::uint64_t k = std::max<std::uint64_t>(params.min_k(), 9);; ++k) {
    if (count_aperiodic(params.catalog_length(k), params.exponent, k) >= k) {
      first_nonempty_ = k * k;
      return k * k;
    }
    if (k > 4096) throw Error(ErrorCode::bad_config, "block family is empty for every small k");
  }
}

std::vector<FamilyRecord> build_T(const WordFamily& family, std::uint64_t n, std::uint64_t count) {
  if (family.config().kind == FamilyKind::block && n < family.first_nonempty_length()) {
    throw Error(ErrorCode::invalid_length, "no block words shorter than " +
                                               std::to_string(family.first_nonempty_length()) + ", got n = " +
                                               std::to_string(n));
  }
  auto records = family.materialize(n, count);
  if (records.empty() && count > 0) {
    throw Error(ErrorCode::family_empty, "T(" + std::to_string(n) + ") has no members");
  }
  return records;
}

}  // namespace scembed
