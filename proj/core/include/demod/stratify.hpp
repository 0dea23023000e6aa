#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "demod/syntax.hpp"

namespace demod {

// A level assignment for every variable (bound or free) of a proposition in
// the membership language, in first-appearance order.
struct Stratification {
  std::vector<std::pair<std::string, int>> levels;

  std::optional<int> level_of(const std::string& v) const {
    for (const auto& [name, lvl] : levels)
      if (name == v) return lvl;
    return std::nullopt;
  }
};

// The proposition leaves the language: an atom uses a predicate other than
// the membership predicate, or has a non-variable argument.
struct NotInMembershipLanguage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StratifyResult {
  std::optional<Stratification> stratification;  // empty: unstratifiable
  bool ok() const { return stratification.has_value(); }
};

// Decides stratifiability of A: binders are first renamed apart, then each
// atom u in w contributes the constraint S(w) = S(u) + 1, solved by
// union-find with integer offsets. On success levels are canonical: each
// connected component is shifted so its minimum is 0.
// Throws NotInMembershipLanguage outside the language.
StratifyResult stratify(const Proposition& a, const std::string& membership_pred = "in");

// True iff every atom u in w of A (binders renamed apart the same way)
// satisfies S(w) = S(u) + 1. Throws NotInMembershipLanguage as above, and
// std::runtime_error when S lacks a variable of A.
bool verify_stratification(const Proposition& a, const Stratification& s,
                           const std::string& membership_pred = "in");

}  // namespace demod
