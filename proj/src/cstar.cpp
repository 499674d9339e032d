#include "scembed/cstar.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "scembed/error.hpp"
#include "scembed/suffix_automaton.hpp"

namespace scembed {

std::size_t lcf_cyclic(const CyclicWord& u, const CyclicWord& v) {
  if (u.size() == 0 || v.size() == 0) return 0;
  if ((letter_mask(u.representative()) & letter_mask(v.representative())) == 0) return 0;
  return CyclicIndex(u.representative()).common_factor(v.representative()).length;
}

std::size_t repeated_factor_cyclic(const CyclicWord& u) {
  if (u.size() == 0) throw Error(ErrorCode::empty_word, "repeated factor of the empty word");
  return CyclicIndex(u.representative()).repeated_factor();
}

namespace {

struct ClosureEntry {
  std::string word;
  FamilyMember member;
  unsigned mask = 0;
};

struct RowResult {
  std::size_t self_length = 0;
  std::vector<std::size_t> lcf;  // against every later closure entry
};

}  // namespace

CstarReport check_cstar(const std::vector<std::string>& family, const Rational& lambda,
                        const CstarOptions& options) {
  if (family.empty()) throw Error(ErrorCode::family_empty, "C* check of an empty family");
  for (std::size_t i = 0; i < family.size(); ++i) {
    require_group_word(family[i]);
    if (family[i].empty() || !is_cyclically_reduced(family[i])) {
      throw Error(ErrorCode::not_cyclically_reduced,
                  "family member " + std::to_string(i) + " is not a non-empty cyclically reduced word");
    }
  }

  std::vector<ClosureEntry> closure;
  std::unordered_set<std::string> seen;
  auto add = [&](std::string w, FamilyMember m) {
    std::string canon = rotate(w, least_rotation(w));
    if (!seen.insert(std::move(canon)).second) return;
    unsigned mask = letter_mask(w);
    closure.push_back({std::move(w), m, mask});
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    add(family[i], {i, false});
    add(inverse_of(family[i]), {i, true});
  }

  const std::size_t count = closure.size();
  std::vector<RowResult> rows(count);
  auto work = [&](std::size_t r) {
    CyclicIndex index(closure[r].word);
    rows[r].self_length = index.repeated_factor();
    rows[r].lcf.assign(count - r - 1, 0);
    for (std::size_t c = r + 1; c < count; ++c) {
      if ((closure[r].mask & closure[c].mask) == 0) continue;
      rows[r].lcf[c - r - 1] = index.common_factor(closure[c].word).length;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t r = 0; r < count; ++r) work(r);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = cursor++; r < count; r = cursor++) work(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  CstarReport report;
  report.lambda = lambda;
  report.closure_size = count;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t size = closure[r].word.size();
    Rational self_ratio(rows[r].self_length, size);
    if (!report.worst_self || self_ratio > Rational(report.worst_self->length, report.worst_self->size)) {
      report.worst_self = CstarReport::SelfWitness{closure[r].member, rows[r].self_length, size};
    }
    report.worst_ratio = std::max(report.worst_ratio, self_ratio);
    for (std::size_t c = r + 1; c < count; ++c) {
      ++report.pairs_checked;
      const std::size_t len = rows[r].lcf[c - r - 1];
      const std::size_t min_size = std::min(size, closure[c].word.size());
      Rational ratio(len, min_size);
      if (!report.worst_pair ||
          ratio > Rational(report.worst_pair->length, report.worst_pair->min_size)) {
        report.worst_pair = CstarReport::PairWitness{closure[r].member, closure[c].member, len, min_size};
      }
      report.worst_ratio = std::max(report.worst_ratio, ratio);
    }
  }
  report.passed = report.worst_ratio < lambda;
  return report;
}

}  // namespace scembed
