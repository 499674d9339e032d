#pragma once

// The C*(lambda) small-cancellation condition on a family of cyclic words,
// closed under inversion.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scembed/exact.hpp"
#include "scembed/group_word.hpp"

namespace scembed {

std::size_t lcf_cyclic(const CyclicWord& u, const CyclicWord& v);
std::size_t repeated_factor_cyclic(const CyclicWord& u);

/// A member of the inversion-closed family: original index plus orientation.
struct FamilyMember {
  std::size_t index = 0;
  bool inverted = false;
  friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

struct CstarReport {
  bool passed = false;
  Rational lambda;
  Rational worst_ratio{0};

  struct PairWitness {
    FamilyMember first, second;
    std::size_t length = 0;
    std::size_t min_size = 0;
  };
  struct SelfWitness {
    FamilyMember member;
    std::size_t length = 0;
    std::size_t size = 0;
  };
  std::optional<PairWitness> worst_pair;
  std::optional<SelfWitness> worst_self;
  std::size_t closure_size = 0;
  std::size_t pairs_checked = 0;
};

struct CstarOptions {
  unsigned workers = 1;
};

/// Checks C*(lambda) for the family closed under inversion. Members equal as
/// cyclic words count once. Throws NotCyclicallyReduced naming the first bad
/// member, and InvalidLength when the family is empty.
CstarReport check_cstar(const std::vector<std::string>& family, const Rational& lambda,
                        const CstarOptions& options = {});

}  // namespace scembed
