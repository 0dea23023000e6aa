#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "demod/proofterm.hpp"
#include "demod/theory.hpp"

namespace demod {

enum class CheckErrorKind {
  UnboundProofVariable,
  HeadMismatch,       // inferred/goal normal form not headed by the needed connective
  Mismatch,           // inferred proposition not congruent to the goal
  NotInferable,       // introduction form in inference position, no cut type found
  ScopeViolation,     // x not-in FV side condition failed
  ClassicalRuleDisabled,
  FuelExhausted,      // congruence ran out of fuel
};

struct CheckError {
  CheckErrorKind kind;
  std::string message;
  SourcePos pos;          // position of the offending proof subterm, if known
  // For mismatches: the two sides, best-effort normalized, already printed.
  std::string expected;
  std::string found;
};

struct CheckResult {
  std::optional<CheckError> error;  // empty on success
  bool ok() const { return !error.has_value(); }
};

struct CheckOptions {
  long long fuel = 10000;
};

// Thrown by infer() on failure; check() returns the error instead.
struct CheckFailure : std::runtime_error {
  CheckError error;
  explicit CheckFailure(CheckError e) : std::runtime_error(e.message), error(std::move(e)) {}
};

// Synthesizes a proposition B with  context |- pi : B  derivable modulo
// T.rules, for inference forms: proof variables, eliminations, and
// introductions whose parts are inferable. A beta-redex application infers
// through the cut: the argument's type becomes the bound hypothesis.
Proposition infer(const Theory& t, const Context& context, const ProofTerm& pi,
                  const CheckOptions& opts = {});

// Checking mode: introductions are matched against the goal's root-normal
// form; eliminations infer their major premise; inference forms fall back
// to infer + congruence with the goal.
CheckResult check(const Theory& t, const Context& context, const ProofTerm& pi,
                  const Proposition& goal, const CheckOptions& opts = {});

// Goal + proof term as read from a proof file.
struct ProofObject {
  std::string name;
  Proposition goal;
  ProofTerm term;
};

struct CheckReport {
  std::string proof_name;
  CheckResult result;
};

// Checks a proof object against the theory: axioms enter the context as
// named hypotheses.
CheckReport check_sequent(const Theory& t, const ProofObject& proof,
                          const CheckOptions& opts = {});

}  // namespace demod
