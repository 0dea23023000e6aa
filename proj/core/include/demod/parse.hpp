#pragma once

#include <string>

#include "demod/checker.hpp"
#include "demod/proofterm.hpp"
#include "demod/rewrite.hpp"
#include "demod/sexpr.hpp"
#include "demod/syntax.hpp"
#include "demod/theory.hpp"

namespace demod {

// Elaboration of the concrete s-expression syntax. Everything arity-checks
// against the signature and throws ParseError with source positions.
//
//   term   := var | numeral | (fsym term*) | ?meta            [meta: rules only]
//   prop   := (pred term*) | (=> p p) | (and p p) | (or p p) | false
//           | (forall x p) | (exists x p) | (iff p p) | (not p)
//   rule   := (term-rule pattern term) | (prop-rule atom-pattern prop)
//   theory := (signature (fun f n)* (pred p n)* (skolem f (vars x+) (body prop))*)
//             (rules rule*) (axioms (ax name prop)*)
//   proof  := (proof name (goal prop) (term proofterm))
//
// Numerals abbreviate S-towers over 0 when the signature declares S/1 and
// 0/0. (iff a b) and (not a) are surface sugar with no syntax-tree node.

Term parse_term(const SExpr& e, const Signature& sig, bool allow_meta = false);
Proposition parse_prop(const SExpr& e, const Signature& sig, bool allow_meta = false);
ProofTerm parse_proofterm(const SExpr& e, const Signature& sig);

Term parse_term(const std::string& text, const Signature& sig, bool allow_meta = false);
Proposition parse_prop(const std::string& text, const Signature& sig, bool allow_meta = false);
ProofTerm parse_proofterm(const std::string& text, const Signature& sig);

// `name` is a label for error messages (typically the file path).
Theory parse_theory(const std::string& text, const std::string& name = "theory");
ProofObject parse_proof_object(const std::string& text, const Signature& sig);

}  // namespace demod
