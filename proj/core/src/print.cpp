#include "demod/print.hpp"

namespace demod {

namespace {

// n >= 0 when t is a ground tower S^n(0).
int numeral_height(const Term& t) {
  if (!t.is_app()) return -1;
  if (t.head() == "0" && t.args().empty()) return 0;
  if (t.head() == "S" && t.args().size() == 1) {
    int below = numeral_height(t.args()[0]);
    return below < 0 ? -1 : below + 1;
  }
  return -1;
}

}  // namespace

std::string print_term(const Term& t, const Signature* sig) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.head();
    case TermKind::Meta:
      return "?" + t.head();
    case TermKind::App: {
      if (sig && sig->numerals_enabled()) {
        int n = numeral_height(t);
        if (n >= 0) return std::to_string(n);
      }
      if (t.args().empty()) return t.head();
      std::string out = "(" + t.head();
      for (const Term& a : t.args()) out += " " + print_term(a, sig);
      return out + ")";
    }
  }
  return "?";
}

std::string print_prop(const Proposition& p, const Signature* sig) {
  switch (p.kind()) {
    case PropKind::Atom: {
      std::string out = "(" + p.name();
      for (const Term& t : p.terms()) out += " " + print_term(t, sig);
      return out + ")";
    }
    case PropKind::Bottom:
      return "false";
    case PropKind::Implies:
      return "(=> " + print_prop(p.left(), sig) + " " + print_prop(p.right(), sig) + ")";
    case PropKind::And:
      return "(and " + print_prop(p.left(), sig) + " " + print_prop(p.right(), sig) + ")";
    case PropKind::Or:
      return "(or " + print_prop(p.left(), sig) + " " + print_prop(p.right(), sig) + ")";
    case PropKind::Forall:
      return "(forall " + p.name() + " " + print_prop(p.body(), sig) + ")";
    case PropKind::Exists:
      return "(exists " + p.name() + " " + print_prop(p.body(), sig) + ")";
  }
  return "?";
}

std::string print_proofterm(const ProofTerm& p, const Signature* sig) {
  switch (p.kind()) {
    case ProofKind::Var:
      return "(pvar " + p.name() + ")";
    case ProofKind::Lam:
      return "(lam " + p.name() + " " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::App:
      return "(app " + print_proofterm(p.kid(0), sig) + " " + print_proofterm(p.kid(1), sig) +
             ")";
    case ProofKind::Pair:
      return "(pair " + print_proofterm(p.kid(0), sig) + " " + print_proofterm(p.kid(1), sig) +
             ")";
    case ProofKind::Fst:
      return "(fst " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::Snd:
      return "(snd " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::Inl:
      return "(inl " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::Inr:
      return "(inr " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::Case:
      return "(case " + print_proofterm(p.kid(0), sig) + " (" + p.name() + " " +
             print_proofterm(p.kid(1), sig) + ") (" + p.name2() + " " +
             print_proofterm(p.kid(2), sig) + "))";
    case ProofKind::BotElim:
      return "(botelim " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::TLam:
      return "(tlam " + p.name() + " " + print_proofterm(p.kid(0), sig) + ")";
    case ProofKind::TApp:
      return "(tapp " + print_proofterm(p.kid(0), sig) + " " + print_term(p.term(), sig) + ")";
    case ProofKind::Witness:
      return "(witness " + print_term(p.term(), sig) + " " + print_proofterm(p.kid(0), sig) +
             ")";
    case ProofKind::ExElim:
      return "(exelim " + print_proofterm(p.kid(0), sig) + " (" + p.name() + " " + p.name2() +
             " " + print_proofterm(p.kid(1), sig) + "))";
    case ProofKind::EM:
      return "(em " + print_prop(p.prop(), sig) + ")";
  }
  return "?";
}

std::string print_rule(const RewriteRule& r, const Signature* sig) {
  if (r.kind == RuleKind::TermRule)
    return "(term-rule " + print_term(r.term_lhs, sig) + " " + print_term(r.term_rhs, sig) + ")";
  return "(prop-rule " + print_prop(r.prop_lhs, sig) + " " + print_prop(r.prop_rhs, sig) + ")";
}

std::string print_theory(const Theory& t) {
  const Signature* sig = &t.signature;
  std::string out = "(signature\n";
  for (const auto& [name, arity] : t.signature.functions)
    out += "  (fun " + name + " " + std::to_string(arity) + ")\n";
  for (const auto& [name, arity] : t.signature.predicates)
    out += "  (pred " + name + " " + std::to_string(arity) + ")\n";
  for (const auto& [name, tag] : t.signature.skolem_tags) {
    out += "  (skolem " + name + " (vars";
    for (const auto& v : tag.vars) out += " " + v;
    out += ") (body " + print_prop(tag.body, sig) + "))\n";
  }
  out += ")\n(rules\n";
  for (const RewriteRule& r : t.rules.rules) out += "  " + print_rule(r, sig) + "\n";
  out += ")\n(axioms\n";
  for (const auto& [name, prop] : t.axioms)
    out += "  (ax " + name + " " + print_prop(prop, sig) + ")\n";
  out += ")\n";
  return out;
}

std::string print_proof_object(const ProofObject& p, const Signature* sig) {
  return "(proof " + p.name + "\n  (goal " + print_prop(p.goal, sig) + ")\n  (term " +
         print_proofterm(p.term, sig) + "))\n";
}

std::string print_levels(const Stratification& s) {
  std::string out = "(levels";
  for (const auto& [name, lvl] : s.levels) out += " (" + name + " " + std::to_string(lvl) + ")";
  return out + ")";
}

}  // namespace demod
