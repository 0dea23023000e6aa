#pragma once

#include <string>

#include "demod/checker.hpp"
#include "demod/proofterm.hpp"
#include "demod/rewrite.hpp"
#include "demod/stratify.hpp"
#include "demod/syntax.hpp"
#include "demod/theory.hpp"

namespace demod {

// Canonical concrete syntax. When a signature declaring S/1 and 0/0 is
// supplied, ground S-towers print as decimal numerals (the parser accepts
// them back). parse(print(x)) is the identity up to alpha-equivalence;
// print(parse(s)) is the identity on canonically formatted input.

std::string print_term(const Term& t, const Signature* sig = nullptr);
std::string print_prop(const Proposition& p, const Signature* sig = nullptr);
std::string print_proofterm(const ProofTerm& p, const Signature* sig = nullptr);
std::string print_rule(const RewriteRule& r, const Signature* sig = nullptr);

// Whole theory file: (signature ...) (rules ...) (axioms ...), one clause
// per line, two-space indent.
std::string print_theory(const Theory& t);

// (proof name (goal ...) (term ...))
std::string print_proof_object(const ProofObject& p, const Signature* sig = nullptr);

// (levels (v 0) (x 1) ...) in first-appearance order.
std::string print_levels(const Stratification& s);

}  // namespace demod
