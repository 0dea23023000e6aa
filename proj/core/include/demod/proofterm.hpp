#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "demod/syntax.hpp"

namespace demod {

enum class ProofKind {
  Var,      // proof variable (axiom/hypothesis use)
  Lam,      // =>-intro        (lam a pi)
  App,      // =>-elim         (app pi pi')
  Pair,     // /\-intro        (pair pi pi')
  Fst,      // /\-elim left    (fst pi)
  Snd,      // /\-elim right   (snd pi)
  Inl,      // \/-intro left   (inl pi)
  Inr,      // \/-intro right  (inr pi)
  Case,     // \/-elim         (case pi (a pi) (b pi))
  BotElim,  // false-elim      (botelim pi)
  TLam,     // forall-intro    (tlam x pi)
  TApp,     // forall-elim     (tapp pi t)
  Witness,  // exists-intro    (witness t pi)
  ExElim,   // exists-elim     (exelim pi (x a pi'))
  EM,       // excluded middle (em prop); classical leaf, no reduction rule
};

// Immutable proof term. Proof variables and object variables live in
// disjoint namespaces; both kinds of substitution are capture-avoiding.
class ProofTerm {
 public:
  ProofTerm() : ProofTerm(pvar("_")) {}

  static ProofTerm pvar(std::string name, SourcePos pos = {});
  static ProofTerm lam(std::string var, ProofTerm body, SourcePos pos = {});
  static ProofTerm app(ProofTerm fn, ProofTerm arg, SourcePos pos = {});
  static ProofTerm pair(ProofTerm a, ProofTerm b, SourcePos pos = {});
  static ProofTerm fst(ProofTerm a, SourcePos pos = {});
  static ProofTerm snd(ProofTerm a, SourcePos pos = {});
  static ProofTerm inl(ProofTerm a, SourcePos pos = {});
  static ProofTerm inr(ProofTerm a, SourcePos pos = {});
  static ProofTerm case_of(ProofTerm scrut, std::string var_l, ProofTerm left, std::string var_r,
                           ProofTerm right, SourcePos pos = {});
  static ProofTerm botelim(ProofTerm a, SourcePos pos = {});
  static ProofTerm tlam(std::string var, ProofTerm body, SourcePos pos = {});
  static ProofTerm tapp(ProofTerm fn, Term arg, SourcePos pos = {});
  static ProofTerm witness(Term t, ProofTerm proof, SourcePos pos = {});
  static ProofTerm exelim(ProofTerm scrut, std::string term_var, std::string proof_var,
                          ProofTerm body, SourcePos pos = {});
  static ProofTerm em(Proposition b, SourcePos pos = {});

  ProofKind kind() const { return node_->kind; }

  // Var: the proof variable. Lam/Case(left binder)/ExElim(term binder)/
  // TLam: the first binder name.
  const std::string& name() const { return node_->name; }
  // Case: right branch binder. ExElim: proof binder.
  const std::string& name2() const { return node_->name2; }

  const std::vector<ProofTerm>& kids() const { return node_->kids; }
  const ProofTerm& kid(size_t i) const { return node_->kids[i]; }
  const Term& term() const { return *node_->term; }        // TApp / Witness
  const Proposition& prop() const { return *node_->prop; }  // EM
  SourcePos pos() const { return node_->pos; }

  size_t size() const;  // node count

 private:
  struct Node {
    ProofKind kind;
    std::string name;
    std::string name2;
    std::vector<ProofTerm> kids;
    std::optional<Term> term;
    std::optional<Proposition> prop;
    SourcePos pos;
  };
  explicit ProofTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_proof_vars(const ProofTerm& p);
std::set<std::string> free_term_vars_of_proof(const ProofTerm& p);

// [q/alpha]p and [t/x]p, capture-avoiding in both namespaces.
ProofTerm subst_proof_var(const ProofTerm& p, const std::string& alpha, const ProofTerm& q);
ProofTerm subst_term_var_in_proof(const ProofTerm& p, const std::string& x, const Term& t);

bool alpha_eq_proof(const ProofTerm& a, const ProofTerm& b);
std::string proof_canonical_key(const ProofTerm& p);

// All one-step reducts under the cut-elimination rules, closed under every
// context, deduplicated up to alpha-equivalence (leftmost-outermost order).
std::vector<ProofTerm> reduce_step(const ProofTerm& p);

// True iff p is a proof variable or an elimination form; never an
// introduction. EM is introduction-like and counts as non-neutral.
bool is_neutral(const ProofTerm& p);

struct NormalizeProofResult {
  enum class Status { NormalForm, FuelExhausted, LoopDetected } status;
  ProofTerm term;    // normal form / last term / recurring witness
  long long steps = 0;
};

// Leftmost-outermost reduction. LoopDetected fires when a term alpha-equal
// to one of the last `history_window` terms recurs.
NormalizeProofResult normalize_proof(const ProofTerm& p, long long fuel,
                                     size_t history_window = 64);

}  // namespace demod
