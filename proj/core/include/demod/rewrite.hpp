#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "demod/syntax.hpp"

namespace demod {

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

enum class RuleKind {
  TermRule,  // term pattern -> term
  PropRule,  // atomic proposition pattern -> proposition
};

// One oriented rewrite rule. Pattern variables are Term::meta nodes; plain
// variables in a pattern match only themselves.
struct RewriteRule {
  RuleKind kind;
  std::string name;

  // TermRule
  Term term_lhs;
  Term term_rhs;

  // PropRule: lhs is an atom (pred applied to patterns), rhs any proposition.
  Proposition prop_lhs;
  Proposition prop_rhs;

  static RewriteRule make_term(std::string name, Term lhs, Term rhs);
  static RewriteRule make_prop(std::string name, Proposition lhs, Proposition rhs);

  // Enforces: lhs metavariables cover rhs metavariables; TermRule lhs is an
  // application; PropRule lhs is an atom. Throws std::runtime_error.
  void validate() const;
};

struct RewriteSystem {
  std::vector<RewriteRule> rules;
  long long fuel_default = 10000;

  // Throws on duplicate rule names or invalid rules.
  void add(RewriteRule r);
  bool empty() const { return rules.empty(); }
};

// ---------------------------------------------------------------------------
// Matching and normalization
// ---------------------------------------------------------------------------

using Binding = std::map<std::string, Term>;

// First-order matching of a pattern against a term (no binders in terms).
// Repeated metavariables must match equal terms.
bool match_term(const Term& pattern, const Term& subject, Binding& binding);
// Atom pattern against atom.
bool match_atom(const Proposition& pattern, const Proposition& subject, Binding& binding);

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

// Contracts the first redex in `strategy` order, trying rules in system
// order at each position. Positions cover term redexes inside atoms and
// atom-level PropRule redexes. Returns nullopt when A is a normal form.
std::optional<Proposition> rewrite_once(const Proposition& a, const RewriteSystem& rs,
                                        Strategy strategy = Strategy::LeftmostInnermost);
std::optional<Term> rewrite_once_term(const Term& t, const RewriteSystem& rs,
                                      Strategy strategy = Strategy::LeftmostInnermost);

// Every one-step reduct of A (all positions, all rules), deduplicated up to
// alpha-equivalence, in leftmost-outermost position order.
std::vector<Proposition> all_one_step_reducts(const Proposition& a, const RewriteSystem& rs);

struct NormalizeResult {
  bool exhausted = false;
  Proposition prop;   // normal form, or last proposition reached
  long long steps = 0;
};

// Applies rules until no redex remains or fuel runs out; each rule
// application costs one unit of fuel.
NormalizeResult normalize_prop(const Proposition& a, const RewriteSystem& rs, long long fuel,
                               Strategy strategy = Strategy::LeftmostInnermost);

struct NormalizeTermResult {
  bool exhausted = false;
  Term term;
  long long steps = 0;
};
NormalizeTermResult normalize_term(const Term& t, const RewriteSystem& rs, long long fuel,
                                   Strategy strategy = Strategy::LeftmostInnermost);

// Root normalization: rewrites at the root only (term-normalizing atom
// arguments when that is needed to expose a PropRule redex) until the root
// is a connective or no rule applies. Total under fuel even for
// non-terminating systems; this is what the proof checker matches heads on.
NormalizeResult whnf_prop(const Proposition& a, const RewriteSystem& rs, long long fuel);

// Congruence test. Fast path: alpha-equality. Then normal-form comparison;
// when either side has no normal form within fuel, falls back to a bounded
// breadth-first joinability search (sound for the congruence; complete for
// confluent systems when the search space fits in the budget).
enum class EquivStatus { True, False, FuelExhausted };
EquivStatus equiv(const Proposition& a, const Proposition& b, const RewriteSystem& rs,
                  long long fuel);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct OrthogonalityViolation {
  enum class Kind { NonLeftLinear, Overlap } kind;
  std::string rule_a;
  std::string rule_b;     // empty for NonLeftLinear
  std::string detail;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Left-linearity of every lhs plus absence of critical pairs (including a
// rule overlapped with a renamed copy of itself at a proper non-variable
// position; the trivial root self-overlap is excluded).
OrthogonalityReport check_orthogonality(const RewriteSystem& rs);

// Multiset of per-atom function-symbol counts, sorted ascending.
using AtomMeasure = std::vector<int>;
AtomMeasure atom_measure(const Proposition& a);

// Strict Dershowitz-Manna multiset order on measures.
bool multiset_less(const AtomMeasure& smaller, const AtomMeasure& larger);

// True iff atom_measure(B) < atom_measure(A); replays the termination
// argument for one step of a comprehension-style system.
bool sf_measure_decreases(const Proposition& a, const Proposition& b);

}  // namespace demod
