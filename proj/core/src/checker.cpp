#include "demod/checker.hpp"

#include <algorithm>

#include "demod/print.hpp"

namespace demod {

namespace {

struct CheckException {
  CheckError err;
};

[[noreturn]] void fail(CheckErrorKind kind, const ProofTerm& at, std::string msg,
                       std::string expected = "", std::string found = "") {
  throw CheckException{CheckError{kind, std::move(msg), at.pos(), std::move(expected),
                                  std::move(found)}};
}

const char* connective_name(PropKind k) {
  switch (k) {
    case PropKind::Implies: return "=>";
    case PropKind::And: return "and";
    case PropKind::Or: return "or";
    case PropKind::Forall: return "forall";
    case PropKind::Exists: return "exists";
    case PropKind::Bottom: return "false";
    case PropKind::Atom: return "atom";
  }
  return "?";
}

struct Engine {
  const Theory& t;
  CheckOptions opts;

  std::string show(const Proposition& p) const { return print_prop(p, &t.signature); }

  Proposition whnf(const Proposition& p, const ProofTerm& at) const {
    NormalizeResult r = whnf_prop(p, t.rules, opts.fuel);
    if (r.exhausted)
      fail(CheckErrorKind::FuelExhausted, at, "fuel exhausted while normalizing " + show(p));
    return r.prop;
  }

  // Root-normalizes and insists on a particular connective at the head.
  Proposition expose(const Proposition& p, PropKind want, const ProofTerm& at,
                     const char* who) const {
    Proposition w = whnf(p, at);
    if (w.kind() != want)
      fail(CheckErrorKind::HeadMismatch, at,
           std::string(who) + ": expected a proposition headed by '" + connective_name(want) +
               "', found " + show(w),
           connective_name(want), show(w));
    return w;
  }

  bool equal(const Proposition& a, const Proposition& b, const ProofTerm& at) const {
    switch (equiv(a, b, t.rules, opts.fuel)) {
      case EquivStatus::True: return true;
      case EquivStatus::False: return false;
      case EquivStatus::FuelExhausted:
        fail(CheckErrorKind::FuelExhausted, at,
             "fuel exhausted deciding congruence of " + show(a) + " and " + show(b));
    }
    return false;
  }

  // Free variables of the best-effort normal form. Rewriting can add or
  // remove occurrences, so the side conditions read variables off normal
  // forms; with non-terminating user rules this degrades to the last
  // proposition reached within fuel.
  std::set<std::string> fv_modulo(const Proposition& p) const {
    return free_vars(normalize_prop(p, t.rules, opts.fuel).prop);
  }

  std::set<std::string> fv_context(const Context& ctx) const {
    std::set<std::string> out;
    for (const auto& [name, prop] : ctx.hyps) {
      std::set<std::string> fv = fv_modulo(prop);
      out.insert(fv.begin(), fv.end());
    }
    // Theory axioms are part of the ambient context but are closed.
    return out;
  }

  const Proposition* lookup(const Context& ctx, const std::string& name) const {
    if (const Proposition* p = ctx.lookup(name)) return p;
    auto it = t.axioms.find(name);
    return it == t.axioms.end() ? nullptr : &it->second;
  }

  // Closed proposition-rule left-hand sides double as candidate cut types
  // for introductions stuck in inference position: an annotation-free
  // beta-redex has no synthesizable cut formula, but an atom that rewrites
  // to the introduction's connective is the one shape that can type it.
  // Rules with metavariables in the lhs contribute nothing (the instance is
  // not recoverable); that is the documented limitation of the discipline.
  std::vector<Proposition> candidate_cut_types() const {
    std::vector<Proposition> out;
    for (const RewriteRule& r : t.rules.rules) {
      if (r.kind != RuleKind::PropRule) continue;
      bool closed = true;
      for (const Term& arg : r.prop_lhs.terms()) {
        std::set<std::string> ms;
        collect_term_metas(arg, ms);
        if (!ms.empty()) closed = false;
      }
      if (closed) out.push_back(r.prop_lhs);
    }
    return out;
  }

  Proposition infer_candidates(const Context& ctx, const ProofTerm& pi) const {
    for (const Proposition& cand : candidate_cut_types()) {
      try {
        check(ctx, pi, cand);
        return cand;
      } catch (const CheckException&) {
        // try the next candidate
      }
    }
    fail(CheckErrorKind::NotInferable, pi,
         "introduction form in inference position and no rewrite-rule cut type applies");
  }

  Proposition infer(const Context& ctx, const ProofTerm& pi) const {
    switch (pi.kind()) {
      case ProofKind::Var: {
        if (const Proposition* p = lookup(ctx, pi.name())) return *p;
        fail(CheckErrorKind::UnboundProofVariable, pi,
             "unbound proof variable: " + pi.name());
      }
      case ProofKind::App: {
        const ProofTerm& fn = pi.kid(0);
        if (fn.kind() == ProofKind::Lam) {
          // Beta-redex: type the cut through the argument.
          Proposition d = infer(ctx, pi.kid(1));
          Context extended = ctx;
          extended.push(fn.name(), d);
          return infer(extended, fn.kid(0));
        }
        Proposition w = expose(infer(ctx, fn), PropKind::Implies, pi, "=>-elim");
        check(ctx, pi.kid(1), w.left());
        return w.right();
      }
      case ProofKind::Fst:
        return expose(infer(ctx, pi.kid(0)), PropKind::And, pi, "and-elim").left();
      case ProofKind::Snd:
        return expose(infer(ctx, pi.kid(0)), PropKind::And, pi, "and-elim").right();
      case ProofKind::TApp: {
        Proposition w = expose(infer(ctx, pi.kid(0)), PropKind::Forall, pi, "forall-elim");
        return substitute(w.body(), w.name(), pi.term());
      }
      case ProofKind::Pair: {
        try {
          Proposition a = infer(ctx, pi.kid(0));
          Proposition b = infer(ctx, pi.kid(1));
          return Proposition::conj(std::move(a), std::move(b));
        } catch (const CheckException&) {
          return infer_candidates(ctx, pi);
        }
      }
      case ProofKind::TLam: {
        std::set<std::string> ctx_fv = fv_context(ctx);
        if (ctx_fv.count(pi.name()))
          fail(CheckErrorKind::ScopeViolation, pi,
               "forall-intro: variable " + pi.name() + " occurs free in the context");
        Proposition body = infer(ctx, pi.kid(0));
        return Proposition::forall(pi.name(), std::move(body));
      }
      case ProofKind::EM: {
        if (!t.classical)
          fail(CheckErrorKind::ClassicalRuleDisabled, pi,
               "excluded middle used but the theory is not classical");
        return Proposition::disj(pi.prop(), Proposition::neg(pi.prop()));
      }
      default:
        return infer_candidates(ctx, pi);
    }
  }

  void check(const Context& ctx, const ProofTerm& pi, const Proposition& goal) const {
    switch (pi.kind()) {
      case ProofKind::Lam: {
        Proposition w = expose(goal, PropKind::Implies, pi, "=>-intro");
        Context extended = ctx;
        extended.push(pi.name(), w.left());
        check(extended, pi.kid(0), w.right());
        return;
      }
      case ProofKind::Pair: {
        Proposition w = expose(goal, PropKind::And, pi, "and-intro");
        check(ctx, pi.kid(0), w.left());
        check(ctx, pi.kid(1), w.right());
        return;
      }
      case ProofKind::Witness: {
        Proposition w = expose(goal, PropKind::Exists, pi, "exists-intro");
        check(ctx, pi.kid(0), substitute(w.body(), w.name(), pi.term()));
        return;
      }
      case ProofKind::Inl: {
        Proposition w = expose(goal, PropKind::Or, pi, "or-intro");
        check(ctx, pi.kid(0), w.left());
        return;
      }
      case ProofKind::Inr: {
        Proposition w = expose(goal, PropKind::Or, pi, "or-intro");
        check(ctx, pi.kid(0), w.right());
        return;
      }
      case ProofKind::TLam: {
        Proposition w = expose(goal, PropKind::Forall, pi, "forall-intro");
        std::set<std::string> ctx_fv = fv_context(ctx);
        if (ctx_fv.count(pi.name()))
          fail(CheckErrorKind::ScopeViolation, pi,
               "forall-intro: variable " + pi.name() + " occurs free in the context");
        check(ctx, pi.kid(0), align_binder(w, pi.name(), pi));
        return;
      }
      case ProofKind::Case: {
        Proposition w = expose(infer(ctx, pi.kid(0)), PropKind::Or, pi, "or-elim");
        Context left = ctx;
        left.push(pi.name(), w.left());
        check(left, pi.kid(1), goal);
        Context right = ctx;
        right.push(pi.name2(), w.right());
        check(right, pi.kid(2), goal);
        return;
      }
      case ProofKind::ExElim: {
        Proposition w = expose(infer(ctx, pi.kid(0)), PropKind::Exists, pi, "exists-elim");
        std::set<std::string> forbidden = fv_context(ctx);
        std::set<std::string> goal_fv = fv_modulo(goal);
        forbidden.insert(goal_fv.begin(), goal_fv.end());
        if (forbidden.count(pi.name()))
          fail(CheckErrorKind::ScopeViolation, pi,
               "exists-elim: variable " + pi.name() +
                   " occurs free in the context or the goal");
        Context extended = ctx;
        extended.push(pi.name2(), align_binder(w, pi.name(), pi));
        check(extended, pi.kid(1), goal);
        return;
      }
      case ProofKind::BotElim: {
        Proposition c = infer(ctx, pi.kid(0));
        if (!equal(c, Proposition::bottom(), pi))
          fail(CheckErrorKind::Mismatch, pi,
               "false-elim: premise is not congruent to false, found " + show(c), "false",
               show(c));
        return;  // ex falso: any goal
      }
      case ProofKind::EM: {
        if (!t.classical)
          fail(CheckErrorKind::ClassicalRuleDisabled, pi,
               "excluded middle used but the theory is not classical");
        Proposition want = Proposition::disj(pi.prop(), Proposition::neg(pi.prop()));
        if (!equal(goal, want, pi))
          fail(CheckErrorKind::Mismatch, pi,
               "excluded middle: goal is not congruent to " + show(want), show(want),
               show(goal));
        return;
      }
      case ProofKind::App: {
        const ProofTerm& fn = pi.kid(0);
        if (fn.kind() == ProofKind::Lam) {
          // Beta-redex in checking mode: the argument's type is the cut.
          Proposition d = infer(ctx, pi.kid(1));
          Context extended = ctx;
          extended.push(fn.name(), d);
          check(extended, fn.kid(0), goal);
          return;
        }
        check_via_infer(ctx, pi, goal);
        return;
      }
      default:
        check_via_infer(ctx, pi, goal);
        return;
    }
  }

  // Binder alignment for forall-intro / exists-elim: rewrites the bound
  // proposition to use the proof term's binder name.
  Proposition align_binder(const Proposition& quantified, const std::string& x,
                           const ProofTerm& at) const {
    const std::string& y = quantified.name();
    const Proposition& body = quantified.body();
    if (y == x) return body;
    std::set<std::string> fv = free_vars(body);
    fv.erase(y);
    if (fv.count(x))
      fail(CheckErrorKind::ScopeViolation, at,
           "binder " + x + " occurs free in " + show(quantified));
    return substitute(body, y, Term::var(x));
  }

  void check_via_infer(const Context& ctx, const ProofTerm& pi, const Proposition& goal) const {
    Proposition c = infer(ctx, pi);
    if (!equal(c, goal, pi)) {
      NormalizeResult ng = normalize_prop(goal, t.rules, opts.fuel);
      NormalizeResult nc = normalize_prop(c, t.rules, opts.fuel);
      fail(CheckErrorKind::Mismatch, pi,
           "proposition mismatch: proved " + show(nc.prop) + ", goal needs " + show(ng.prop),
           show(ng.prop), show(nc.prop));
    }
  }
};

}  // namespace

Proposition infer(const Theory& t, const Context& context, const ProofTerm& pi,
                  const CheckOptions& opts) {
  Engine eng{t, opts};
  try {
    return eng.infer(context, pi);
  } catch (const CheckException& e) {
    throw CheckFailure(e.err);
  }
}

CheckResult check(const Theory& t, const Context& context, const ProofTerm& pi,
                  const Proposition& goal, const CheckOptions& opts) {
  Engine eng{t, opts};
  CheckResult res;
  try {
    eng.check(context, pi, goal);
  } catch (const CheckException& e) {
    res.error = e.err;
  }
  return res;
}

CheckReport check_sequent(const Theory& t, const ProofObject& proof, const CheckOptions& opts) {
  CheckReport rep;
  rep.proof_name = proof.name;
  rep.result = check(t, Context{}, proof.term, proof.goal, opts);
  return rep;
}

}  // namespace demod
