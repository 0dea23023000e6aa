#include "demod/proofterm.hpp"

#include <deque>
#include <functional>

namespace demod {

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

#define DEMOD_BUILD() \
  Node n;             \
  n.pos = pos

ProofTerm ProofTerm::pvar(std::string name, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Var;
  n.name = std::move(name);
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::lam(std::string var, ProofTerm body, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Lam;
  n.name = std::move(var);
  n.kids = {std::move(body)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::app(ProofTerm fn, ProofTerm arg, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::App;
  n.kids = {std::move(fn), std::move(arg)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::pair(ProofTerm a, ProofTerm b, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Pair;
  n.kids = {std::move(a), std::move(b)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::fst(ProofTerm a, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Fst;
  n.kids = {std::move(a)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::snd(ProofTerm a, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Snd;
  n.kids = {std::move(a)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::inl(ProofTerm a, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Inl;
  n.kids = {std::move(a)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::inr(ProofTerm a, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Inr;
  n.kids = {std::move(a)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::case_of(ProofTerm scrut, std::string var_l, ProofTerm left,
                             std::string var_r, ProofTerm right, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Case;
  n.name = std::move(var_l);
  n.name2 = std::move(var_r);
  n.kids = {std::move(scrut), std::move(left), std::move(right)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::botelim(ProofTerm a, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::BotElim;
  n.kids = {std::move(a)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::tlam(std::string var, ProofTerm body, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::TLam;
  n.name = std::move(var);
  n.kids = {std::move(body)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::tapp(ProofTerm fn, Term arg, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::TApp;
  n.kids = {std::move(fn)};
  n.term = std::move(arg);
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::witness(Term t, ProofTerm proof, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::Witness;
  n.kids = {std::move(proof)};
  n.term = std::move(t);
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::exelim(ProofTerm scrut, std::string term_var, std::string proof_var,
                            ProofTerm body, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::ExElim;
  n.name = std::move(term_var);
  n.name2 = std::move(proof_var);
  n.kids = {std::move(scrut), std::move(body)};
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}
ProofTerm ProofTerm::em(Proposition b, SourcePos pos) {
  DEMOD_BUILD();
  n.kind = ProofKind::EM;
  n.prop = std::move(b);
  return ProofTerm(std::make_shared<const Node>(std::move(n)));
}

#undef DEMOD_BUILD

size_t ProofTerm::size() const {
  size_t n = 1;
  for (const ProofTerm& k : kids()) n += k.size();
  return n;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace {

void fpv(const ProofTerm& p, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (p.kind()) {
    case ProofKind::Var:
      if (!bound.count(p.name())) out.insert(p.name());
      return;
    case ProofKind::Lam: {
      bool ins = bound.insert(p.name()).second;
      fpv(p.kid(0), bound, out);
      if (ins) bound.erase(p.name());
      return;
    }
    case ProofKind::Case: {
      fpv(p.kid(0), bound, out);
      bool ins_l = bound.insert(p.name()).second;
      fpv(p.kid(1), bound, out);
      if (ins_l) bound.erase(p.name());
      bool ins_r = bound.insert(p.name2()).second;
      fpv(p.kid(2), bound, out);
      if (ins_r) bound.erase(p.name2());
      return;
    }
    case ProofKind::ExElim: {
      fpv(p.kid(0), bound, out);
      bool ins = bound.insert(p.name2()).second;
      fpv(p.kid(1), bound, out);
      if (ins) bound.erase(p.name2());
      return;
    }
    default:
      for (const ProofTerm& k : p.kids()) fpv(k, bound, out);
      return;
  }
}

void ftv(const ProofTerm& p, std::set<std::string>& bound, std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    for (const auto& v : term_vars(t))
      if (!bound.count(v)) out.insert(v);
  };
  switch (p.kind()) {
    case ProofKind::TLam: {
      bool ins = bound.insert(p.name()).second;
      ftv(p.kid(0), bound, out);
      if (ins) bound.erase(p.name());
      return;
    }
    case ProofKind::ExElim: {
      ftv(p.kid(0), bound, out);
      bool ins = bound.insert(p.name()).second;
      ftv(p.kid(1), bound, out);
      if (ins) bound.erase(p.name());
      return;
    }
    case ProofKind::TApp:
      ftv(p.kid(0), bound, out);
      add_term(p.term());
      return;
    case ProofKind::Witness:
      add_term(p.term());
      ftv(p.kid(0), bound, out);
      return;
    case ProofKind::EM: {
      for (const auto& v : free_vars(p.prop()))
        if (!bound.count(v)) out.insert(v);
      return;
    }
    default:
      for (const ProofTerm& k : p.kids()) ftv(k, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_proof_vars(const ProofTerm& p) {
  std::set<std::string> bound, out;
  fpv(p, bound, out);
  return out;
}

std::set<std::string> free_term_vars_of_proof(const ProofTerm& p) {
  std::set<std::string> bound, out;
  ftv(p, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

// Renames the proof binder of a one-binder body when it would capture a free
// proof variable of q. Returns (binder, body).
std::pair<std::string, ProofTerm> avoid_proof_capture(const std::string& binder,
                                                      const ProofTerm& body,
                                                      const ProofTerm& q,
                                                      const std::string& alpha) {
  if (!free_proof_vars(q).count(binder)) return {binder, body};
  std::set<std::string> avoid = free_proof_vars(q);
  std::set<std::string> fb = free_proof_vars(body);
  avoid.insert(fb.begin(), fb.end());
  avoid.insert(alpha);
  std::string fresh = fresh_name(binder, avoid);
  return {fresh, subst_proof_var(body, binder, ProofTerm::pvar(fresh))};
}

std::pair<std::string, ProofTerm> avoid_term_capture_in_proof(const std::string& binder,
                                                              const ProofTerm& body,
                                                              const std::set<std::string>& tvs) {
  if (!tvs.count(binder)) return {binder, body};
  std::set<std::string> avoid = tvs;
  std::set<std::string> fb = free_term_vars_of_proof(body);
  avoid.insert(fb.begin(), fb.end());
  std::string fresh = fresh_name(binder, avoid);
  return {fresh, subst_term_var_in_proof(body, binder, Term::var(fresh))};
}

}  // namespace

ProofTerm subst_proof_var(const ProofTerm& p, const std::string& alpha, const ProofTerm& q) {
  switch (p.kind()) {
    case ProofKind::Var:
      return p.name() == alpha ? q : p;
    case ProofKind::EM:
      return p;
    case ProofKind::Lam: {
      if (p.name() == alpha) return p;
      auto [binder, body] = avoid_proof_capture(p.name(), p.kid(0), q, alpha);
      return ProofTerm::lam(binder, subst_proof_var(body, alpha, q), p.pos());
    }
    case ProofKind::App:
      return ProofTerm::app(subst_proof_var(p.kid(0), alpha, q),
                            subst_proof_var(p.kid(1), alpha, q), p.pos());
    case ProofKind::Pair:
      return ProofTerm::pair(subst_proof_var(p.kid(0), alpha, q),
                             subst_proof_var(p.kid(1), alpha, q), p.pos());
    case ProofKind::Fst:
      return ProofTerm::fst(subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::Snd:
      return ProofTerm::snd(subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::Inl:
      return ProofTerm::inl(subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::Inr:
      return ProofTerm::inr(subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::Case: {
      ProofTerm scrut = subst_proof_var(p.kid(0), alpha, q);
      ProofTerm left = p.kid(1), right = p.kid(2);
      std::string bl = p.name(), br = p.name2();
      if (bl != alpha) {
        auto [nb, nbody] = avoid_proof_capture(bl, left, q, alpha);
        bl = nb;
        left = subst_proof_var(nbody, alpha, q);
      }
      if (br != alpha) {
        auto [nb, nbody] = avoid_proof_capture(br, right, q, alpha);
        br = nb;
        right = subst_proof_var(nbody, alpha, q);
      }
      return ProofTerm::case_of(std::move(scrut), bl, std::move(left), br, std::move(right),
                                p.pos());
    }
    case ProofKind::BotElim:
      return ProofTerm::botelim(subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::TLam: {
      // The term binder can capture free term variables of q.
      auto [binder, body] =
          avoid_term_capture_in_proof(p.name(), p.kid(0), free_term_vars_of_proof(q));
      return ProofTerm::tlam(binder, subst_proof_var(body, alpha, q), p.pos());
    }
    case ProofKind::TApp:
      return ProofTerm::tapp(subst_proof_var(p.kid(0), alpha, q), p.term(), p.pos());
    case ProofKind::Witness:
      return ProofTerm::witness(p.term(), subst_proof_var(p.kid(0), alpha, q), p.pos());
    case ProofKind::ExElim: {
      ProofTerm scrut = subst_proof_var(p.kid(0), alpha, q);
      if (p.name2() == alpha)
        return ProofTerm::exelim(std::move(scrut), p.name(), p.name2(), p.kid(1), p.pos());
      auto [tbinder, body0] =
          avoid_term_capture_in_proof(p.name(), p.kid(1), free_term_vars_of_proof(q));
      auto [pbinder, body1] = avoid_proof_capture(p.name2(), body0, q, alpha);
      return ProofTerm::exelim(std::move(scrut), tbinder, pbinder,
                               subst_proof_var(body1, alpha, q), p.pos());
    }
  }
  return p;
}

ProofTerm subst_term_var_in_proof(const ProofTerm& p, const std::string& x, const Term& t) {
  switch (p.kind()) {
    case ProofKind::Var:
      return p;
    case ProofKind::EM:
      return ProofTerm::em(substitute(p.prop(), x, t), p.pos());
    case ProofKind::Lam:
      return ProofTerm::lam(p.name(), subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::App:
      return ProofTerm::app(subst_term_var_in_proof(p.kid(0), x, t),
                            subst_term_var_in_proof(p.kid(1), x, t), p.pos());
    case ProofKind::Pair:
      return ProofTerm::pair(subst_term_var_in_proof(p.kid(0), x, t),
                             subst_term_var_in_proof(p.kid(1), x, t), p.pos());
    case ProofKind::Fst:
      return ProofTerm::fst(subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::Snd:
      return ProofTerm::snd(subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::Inl:
      return ProofTerm::inl(subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::Inr:
      return ProofTerm::inr(subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::Case:
      return ProofTerm::case_of(subst_term_var_in_proof(p.kid(0), x, t), p.name(),
                                subst_term_var_in_proof(p.kid(1), x, t), p.name2(),
                                subst_term_var_in_proof(p.kid(2), x, t), p.pos());
    case ProofKind::BotElim:
      return ProofTerm::botelim(subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::TLam: {
      if (p.name() == x) return p;
      auto [binder, body] = avoid_term_capture_in_proof(p.name(), p.kid(0), term_vars(t));
      return ProofTerm::tlam(binder, subst_term_var_in_proof(body, x, t), p.pos());
    }
    case ProofKind::TApp:
      return ProofTerm::tapp(subst_term_var_in_proof(p.kid(0), x, t), subst_term(p.term(), x, t),
                             p.pos());
    case ProofKind::Witness:
      return ProofTerm::witness(subst_term(p.term(), x, t),
                                subst_term_var_in_proof(p.kid(0), x, t), p.pos());
    case ProofKind::ExElim: {
      ProofTerm scrut = subst_term_var_in_proof(p.kid(0), x, t);
      if (p.name() == x)
        return ProofTerm::exelim(std::move(scrut), p.name(), p.name2(), p.kid(1), p.pos());
      auto [binder, body] = avoid_term_capture_in_proof(p.name(), p.kid(1), term_vars(t));
      return ProofTerm::exelim(std::move(scrut), binder, p.name2(),
                               subst_term_var_in_proof(body, x, t), p.pos());
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence and canonical keys
// ---------------------------------------------------------------------------

namespace {

struct ProofAlphaEnv {
  std::vector<std::pair<std::string, std::string>> proof_pairs;
  std::vector<std::pair<std::string, std::string>> term_pairs;

  static bool lookup(const std::vector<std::pair<std::string, std::string>>& pairs,
                     const std::string& l, const std::string& r) {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
      if (it->first == l || it->second == r) return it->first == l && it->second == r;
    return l == r;
  }
};

// Substitutes env-bound term variables by unambiguous canonical names so the
// embedded propositions can be compared with plain alpha_eq.
Proposition canon_bound_terms(const Proposition& prop,
                              const std::vector<std::pair<std::string, std::string>>& pairs,
                              bool right_side) {
  Proposition out = prop;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const std::string& name = right_side ? pairs[i].second : pairs[i].first;
    out = substitute(out, name, Term::var("\x01" + std::to_string(i)));
  }
  return out;
}

bool alpha_term_env(const Term& a, const Term& b, const ProofAlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var:
      return ProofAlphaEnv::lookup(env.term_pairs, a.head(), b.head());
    case TermKind::Meta:
      return a.head() == b.head();
    case TermKind::App:
      if (a.head() != b.head() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term_env(a.args()[i], b.args()[i], env)) return false;
      return true;
  }
  return false;
}

bool alpha_proof(const ProofTerm& a, const ProofTerm& b, ProofAlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ProofKind::Var:
      return ProofAlphaEnv::lookup(env.proof_pairs, a.name(), b.name());
    case ProofKind::EM:
      return alpha_eq(canon_bound_terms(a.prop(), env.term_pairs, false),
                      canon_bound_terms(b.prop(), env.term_pairs, true));
    case ProofKind::Lam: {
      env.proof_pairs.emplace_back(a.name(), b.name());
      bool ok = alpha_proof(a.kid(0), b.kid(0), env);
      env.proof_pairs.pop_back();
      return ok;
    }
    case ProofKind::Case: {
      if (!alpha_proof(a.kid(0), b.kid(0), env)) return false;
      env.proof_pairs.emplace_back(a.name(), b.name());
      bool ok_l = alpha_proof(a.kid(1), b.kid(1), env);
      env.proof_pairs.pop_back();
      if (!ok_l) return false;
      env.proof_pairs.emplace_back(a.name2(), b.name2());
      bool ok_r = alpha_proof(a.kid(2), b.kid(2), env);
      env.proof_pairs.pop_back();
      return ok_r;
    }
    case ProofKind::TLam: {
      env.term_pairs.emplace_back(a.name(), b.name());
      bool ok = alpha_proof(a.kid(0), b.kid(0), env);
      env.term_pairs.pop_back();
      return ok;
    }
    case ProofKind::TApp:
      return alpha_proof(a.kid(0), b.kid(0), env) && alpha_term_env(a.term(), b.term(), env);
    case ProofKind::Witness:
      return alpha_term_env(a.term(), b.term(), env) && alpha_proof(a.kid(0), b.kid(0), env);
    case ProofKind::ExElim: {
      if (!alpha_proof(a.kid(0), b.kid(0), env)) return false;
      env.term_pairs.emplace_back(a.name(), b.name());
      env.proof_pairs.emplace_back(a.name2(), b.name2());
      bool ok = alpha_proof(a.kid(1), b.kid(1), env);
      env.proof_pairs.pop_back();
      env.term_pairs.pop_back();
      return ok;
    }
    default: {
      if (a.kids().size() != b.kids().size()) return false;
      for (size_t i = 0; i < a.kids().size(); ++i)
        if (!alpha_proof(a.kid(i), b.kid(i), env)) return false;
      return true;
    }
  }
}

struct KeyEnv {
  std::vector<std::string> proof_binders;
  std::vector<std::string> term_binders;
};

void key_term_env(const Term& t, const KeyEnv& env, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      for (size_t i = env.term_binders.size(); i-- > 0;) {
        if (env.term_binders[i] == t.head()) {
          out += '#';
          out += std::to_string(env.term_binders.size() - 1 - i);
          return;
        }
      }
      out += 'v';
      out += t.head();
      return;
    }
    case TermKind::Meta:
      out += '?';
      out += t.head();
      return;
    case TermKind::App:
      out += '(';
      out += t.head();
      for (const Term& a : t.args()) {
        out += ' ';
        key_term_env(a, env, out);
      }
      out += ')';
      return;
  }
}

void key_proof(const ProofTerm& p, KeyEnv& env, std::string& out) {
  switch (p.kind()) {
    case ProofKind::Var: {
      for (size_t i = env.proof_binders.size(); i-- > 0;) {
        if (env.proof_binders[i] == p.name()) {
          out += '@';
          out += std::to_string(env.proof_binders.size() - 1 - i);
          return;
        }
      }
      out += 'p';
      out += p.name();
      return;
    }
    case ProofKind::EM: {
      Proposition canon = p.prop();
      for (size_t i = 0; i < env.term_binders.size(); ++i)
        canon = substitute(canon, env.term_binders[i], Term::var("\x01" + std::to_string(i)));
      out += "(em ";
      out += alpha_canonical_key(canon);
      out += ')';
      return;
    }
    case ProofKind::Lam:
      out += "(lam ";
      env.proof_binders.push_back(p.name());
      key_proof(p.kid(0), env, out);
      env.proof_binders.pop_back();
      out += ')';
      return;
    case ProofKind::App:
    case ProofKind::Pair:
    case ProofKind::Fst:
    case ProofKind::Snd:
    case ProofKind::Inl:
    case ProofKind::Inr:
    case ProofKind::BotElim: {
      static const char* tags[] = {"app", "pair", "fst", "snd", "inl", "inr", "botelim"};
      int idx = static_cast<int>(p.kind()) - static_cast<int>(ProofKind::App);
      out += '(';
      out += tags[idx];
      for (const ProofTerm& k : p.kids()) {
        out += ' ';
        key_proof(k, env, out);
      }
      out += ')';
      return;
    }
    case ProofKind::Case:
      out += "(case ";
      key_proof(p.kid(0), env, out);
      out += ' ';
      env.proof_binders.push_back(p.name());
      key_proof(p.kid(1), env, out);
      env.proof_binders.pop_back();
      out += ' ';
      env.proof_binders.push_back(p.name2());
      key_proof(p.kid(2), env, out);
      env.proof_binders.pop_back();
      out += ')';
      return;
    case ProofKind::TLam:
      out += "(tlam ";
      env.term_binders.push_back(p.name());
      key_proof(p.kid(0), env, out);
      env.term_binders.pop_back();
      out += ')';
      return;
    case ProofKind::TApp:
      out += "(tapp ";
      key_proof(p.kid(0), env, out);
      out += ' ';
      key_term_env(p.term(), env, out);
      out += ')';
      return;
    case ProofKind::Witness:
      out += "(witness ";
      key_term_env(p.term(), env, out);
      out += ' ';
      key_proof(p.kid(0), env, out);
      out += ')';
      return;
    case ProofKind::ExElim:
      out += "(exelim ";
      key_proof(p.kid(0), env, out);
      out += ' ';
      env.term_binders.push_back(p.name());
      env.proof_binders.push_back(p.name2());
      key_proof(p.kid(1), env, out);
      env.proof_binders.pop_back();
      env.term_binders.pop_back();
      out += ')';
      return;
  }
}

}  // namespace

bool alpha_eq_proof(const ProofTerm& a, const ProofTerm& b) {
  ProofAlphaEnv env;
  return alpha_proof(a, b, env);
}

std::string proof_canonical_key(const ProofTerm& p) {
  KeyEnv env;
  std::string out;
  key_proof(p, env, out);
  return out;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

namespace {

// Root redex contraction, or nullopt.
std::optional<ProofTerm> contract_root(const ProofTerm& p) {
  switch (p.kind()) {
    case ProofKind::App:
      if (p.kid(0).kind() == ProofKind::Lam)
        return subst_proof_var(p.kid(0).kid(0), p.kid(0).name(), p.kid(1));
      return std::nullopt;
    case ProofKind::Fst:
      if (p.kid(0).kind() == ProofKind::Pair) return p.kid(0).kid(0);
      return std::nullopt;
    case ProofKind::Snd:
      if (p.kid(0).kind() == ProofKind::Pair) return p.kid(0).kid(1);
      return std::nullopt;
    case ProofKind::Case: {
      const ProofTerm& scrut = p.kid(0);
      if (scrut.kind() == ProofKind::Inl)
        return subst_proof_var(p.kid(1), p.name(), scrut.kid(0));
      if (scrut.kind() == ProofKind::Inr)
        return subst_proof_var(p.kid(2), p.name2(), scrut.kid(0));
      return std::nullopt;
    }
    case ProofKind::TApp:
      if (p.kid(0).kind() == ProofKind::TLam)
        return subst_term_var_in_proof(p.kid(0).kid(0), p.kid(0).name(), p.term());
      return std::nullopt;
    case ProofKind::ExElim: {
      const ProofTerm& scrut = p.kid(0);
      if (scrut.kind() == ProofKind::Witness) {
        ProofTerm body = subst_term_var_in_proof(p.kid(1), p.name(), scrut.term());
        return subst_proof_var(body, p.name2(), scrut.kid(0));
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// Rebuilds p with kid i replaced.
ProofTerm with_kid(const ProofTerm& p, size_t i, ProofTerm nk) {
  switch (p.kind()) {
    case ProofKind::Lam:
      return ProofTerm::lam(p.name(), std::move(nk), p.pos());
    case ProofKind::App:
      return i == 0 ? ProofTerm::app(std::move(nk), p.kid(1), p.pos())
                    : ProofTerm::app(p.kid(0), std::move(nk), p.pos());
    case ProofKind::Pair:
      return i == 0 ? ProofTerm::pair(std::move(nk), p.kid(1), p.pos())
                    : ProofTerm::pair(p.kid(0), std::move(nk), p.pos());
    case ProofKind::Fst:
      return ProofTerm::fst(std::move(nk), p.pos());
    case ProofKind::Snd:
      return ProofTerm::snd(std::move(nk), p.pos());
    case ProofKind::Inl:
      return ProofTerm::inl(std::move(nk), p.pos());
    case ProofKind::Inr:
      return ProofTerm::inr(std::move(nk), p.pos());
    case ProofKind::Case:
      if (i == 0)
        return ProofTerm::case_of(std::move(nk), p.name(), p.kid(1), p.name2(), p.kid(2), p.pos());
      if (i == 1)
        return ProofTerm::case_of(p.kid(0), p.name(), std::move(nk), p.name2(), p.kid(2), p.pos());
      return ProofTerm::case_of(p.kid(0), p.name(), p.kid(1), p.name2(), std::move(nk), p.pos());
    case ProofKind::BotElim:
      return ProofTerm::botelim(std::move(nk), p.pos());
    case ProofKind::TLam:
      return ProofTerm::tlam(p.name(), std::move(nk), p.pos());
    case ProofKind::TApp:
      return ProofTerm::tapp(std::move(nk), p.term(), p.pos());
    case ProofKind::Witness:
      return ProofTerm::witness(p.term(), std::move(nk), p.pos());
    case ProofKind::ExElim:
      return i == 0 ? ProofTerm::exelim(std::move(nk), p.name(), p.name2(), p.kid(1), p.pos())
                    : ProofTerm::exelim(p.kid(0), p.name(), p.name2(), std::move(nk), p.pos());
    default:
      return p;
  }
}

void collect_reducts(const ProofTerm& p, const std::function<void(ProofTerm)>& emit) {
  if (auto r = contract_root(p)) emit(*r);
  for (size_t i = 0; i < p.kids().size(); ++i)
    collect_reducts(p.kid(i), [&](ProofTerm nk) { emit(with_kid(p, i, std::move(nk))); });
}

std::optional<ProofTerm> step_leftmost_outermost(const ProofTerm& p) {
  if (auto r = contract_root(p)) return r;
  for (size_t i = 0; i < p.kids().size(); ++i)
    if (auto r = step_leftmost_outermost(p.kid(i))) return with_kid(p, i, std::move(*r));
  return std::nullopt;
}

}  // namespace

std::vector<ProofTerm> reduce_step(const ProofTerm& p) {
  std::vector<ProofTerm> out;
  std::set<std::string> seen;
  collect_reducts(p, [&](ProofTerm r) {
    std::string key = proof_canonical_key(r);
    if (seen.insert(key).second) out.push_back(std::move(r));
  });
  return out;
}

bool is_neutral(const ProofTerm& p) {
  switch (p.kind()) {
    case ProofKind::Var:
    case ProofKind::App:
    case ProofKind::Fst:
    case ProofKind::Snd:
    case ProofKind::Case:
    case ProofKind::BotElim:
    case ProofKind::TApp:
    case ProofKind::ExElim:
      return true;
    case ProofKind::Lam:
    case ProofKind::Pair:
    case ProofKind::Inl:
    case ProofKind::Inr:
    case ProofKind::TLam:
    case ProofKind::Witness:
    case ProofKind::EM:
      return false;
  }
  return false;
}

NormalizeProofResult normalize_proof(const ProofTerm& p, long long fuel, size_t history_window) {
  NormalizeProofResult res{NormalizeProofResult::Status::NormalForm, p, 0};
  std::deque<std::string> history;
  history.push_back(proof_canonical_key(p));
  ProofTerm cur = p;
  for (;;) {
    std::optional<ProofTerm> next = step_leftmost_outermost(cur);
    if (!next) {
      res.status = NormalizeProofResult::Status::NormalForm;
      res.term = cur;
      return res;
    }
    if (res.steps >= fuel) {
      res.status = NormalizeProofResult::Status::FuelExhausted;
      res.term = cur;
      return res;
    }
    cur = std::move(*next);
    ++res.steps;
    std::string key = proof_canonical_key(cur);
    for (const std::string& h : history) {
      if (h == key) {
        res.status = NormalizeProofResult::Status::LoopDetected;
        res.term = cur;
        return res;
      }
    }
    history.push_back(std::move(key));
    if (history.size() > history_window) history.pop_front();
  }
}

}  // namespace demod
