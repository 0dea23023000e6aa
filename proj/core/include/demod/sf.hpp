#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "demod/rewrite.hpp"
#include "demod/stratify.hpp"
#include "demod/theory.hpp"

namespace demod {

// A minted comprehension instance: the stratifiable body A over x1..xn+1
// (membership variable last), the fresh function symbol of arity n, its
// rewrite rule  xn+1 in f(x1..xn) -> A  and the skolemized axiom instance.
struct ComprehensionInstance {
  Proposition body;
  std::vector<std::string> vars;
  std::string symbol;
  RewriteRule rule;
  Proposition axiom;  // closed, biconditional desugared
};

struct ComprehendError : std::runtime_error {
  enum class Kind { NotStratifiable, NotPureMembershipLanguage, VariableCoverage } kind;
  ComprehendError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Mints a comprehension symbol for `body` over `vars` and extends the
// theory's signature and rewrite system. The body must be stratifiable and
// in the pure membership language (no Skolem symbols); `vars` must cover
// its free variables, membership variable last. Unused variables become
// dummy arguments. Alpha-equal (body, vars) pairs reuse the same symbol
// (content-addressed names), so the call is idempotent.
// `allow_iterated` lifts the pure-language restriction (beyond the scheme).
ComprehensionInstance comprehend(Theory& t, const Proposition& body,
                                 const std::vector<std::string>& vars,
                                 bool allow_iterated = false);

// The skolemized scheme instance of inst:
//   forall x1 .. forall xn+1 ((xn+1 in f(x1..xn) => A) and (A => xn+1 in f(x1..xn)))
Proposition comprehension_axiom(const ComprehensionInstance& inst);

// The non-skolemized scheme:
//   forall x1 .. forall xn exists z forall xn+1 ((xn+1 in z => A) and (A => xn+1 in z))
Proposition comprehension_scheme(const Proposition& body, const std::vector<std::string>& vars);

// Bundled example theories: "arithmetic", "integral-domain", "crabbe",
// "sf-empty". Fresh copies on every call.
std::map<std::string, Theory> builtin_theories();
Theory builtin_theory(const std::string& name);

}  // namespace demod
