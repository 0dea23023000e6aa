#include "demod/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace demod {

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), {}}));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{TermKind::App, std::move(fn), std::move(args)}));
}

Term Term::meta(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Meta, std::move(name), {}}));
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind || node_->head != o.node_->head) return false;
  if (node_->args.size() != o.node_->args.size()) return false;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (node_->args[i] != o.node_->args[i]) return false;
  return true;
}

int Term::function_symbol_count() const {
  int n = is_app() ? 1 : 0;
  for (const Term& a : args()) n += a.function_symbol_count();
  return n;
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.head());
  for (const Term& a : t.args()) collect_term_vars(a, out);
}

void collect_term_metas(const Term& t, std::set<std::string>& out) {
  if (t.is_meta()) out.insert(t.head());
  for (const Term& a : t.args()) collect_term_metas(a, out);
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

bool term_contains_var(const Term& t, const std::string& x) {
  if (t.is_var()) return t.head() == x;
  for (const Term& a : t.args())
    if (term_contains_var(a, x)) return true;
  return false;
}

Term subst_term(const Term& in, const std::string& x, const Term& t) {
  switch (in.kind()) {
    case TermKind::Var:
      return in.head() == x ? t : in;
    case TermKind::Meta:
      return in;
    case TermKind::App: {
      if (!term_contains_var(in, x)) return in;
      std::vector<Term> args;
      args.reserve(in.args().size());
      for (const Term& a : in.args()) args.push_back(subst_term(a, x, t));
      return Term::app(in.head(), std::move(args));
    }
  }
  return in;
}

// ---------------------------------------------------------------------------
// Proposition
// ---------------------------------------------------------------------------

Proposition Proposition::atom(std::string pred, std::vector<Term> args) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::Atom, std::move(pred), std::move(args), {}}));
}

Proposition Proposition::implies(Proposition a, Proposition b) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::Implies, {}, {}, {std::move(a), std::move(b)}}));
}

Proposition Proposition::conj(Proposition a, Proposition b) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::And, {}, {}, {std::move(a), std::move(b)}}));
}

Proposition Proposition::disj(Proposition a, Proposition b) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::Or, {}, {}, {std::move(a), std::move(b)}}));
}

Proposition Proposition::bottom() {
  static const Proposition b(std::make_shared<const Node>(Node{PropKind::Bottom, {}, {}, {}}));
  return b;
}

Proposition Proposition::forall(std::string var, Proposition body) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::Forall, std::move(var), {}, {std::move(body)}}));
}

Proposition Proposition::exists(std::string var, Proposition body) {
  return Proposition(std::make_shared<const Node>(
      Node{PropKind::Exists, std::move(var), {}, {std::move(body)}}));
}

Proposition Proposition::neg(Proposition a) {
  return implies(std::move(a), bottom());
}

bool Proposition::syntactic_eq(const Proposition& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name) return false;
  if (node_->terms.size() != o.node_->terms.size()) return false;
  for (size_t i = 0; i < node_->terms.size(); ++i)
    if (node_->terms[i] != o.node_->terms[i]) return false;
  if (node_->children.size() != o.node_->children.size()) return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!node_->children[i].syntactic_eq(o.node_->children[i])) return false;
  return true;
}

namespace {

void collect_free(const Proposition& a, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (a.kind()) {
    case PropKind::Atom:
      for (const Term& t : a.terms()) {
        std::set<std::string> vs = term_vars(t);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      return;
    case PropKind::Bottom:
      return;
    case PropKind::Implies:
    case PropKind::And:
    case PropKind::Or:
      collect_free(a.left(), bound, out);
      collect_free(a.right(), bound, out);
      return;
    case PropKind::Forall:
    case PropKind::Exists: {
      bool inserted = bound.insert(a.name()).second;
      collect_free(a.body(), bound, out);
      if (inserted) bound.erase(a.name());
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Proposition& a) {
  std::set<std::string> bound, out;
  collect_free(a, bound, out);
  return out;
}

std::set<std::string> prop_metas(const Proposition& a) {
  std::set<std::string> out;
  switch (a.kind()) {
    case PropKind::Atom:
      for (const Term& t : a.terms()) collect_term_metas(t, out);
      return out;
    case PropKind::Bottom:
      return out;
    case PropKind::Forall:
    case PropKind::Exists:
      return prop_metas(a.body());
    default: {
      out = prop_metas(a.left());
      std::set<std::string> r = prop_metas(a.right());
      out.insert(r.begin(), r.end());
      return out;
    }
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string cand = base;
  while (used.count(cand)) cand += '\'';
  return cand;
}

Proposition substitute(const Proposition& a, const std::string& x, const Term& t) {
  switch (a.kind()) {
    case PropKind::Atom: {
      std::vector<Term> args;
      args.reserve(a.terms().size());
      for (const Term& u : a.terms()) args.push_back(subst_term(u, x, t));
      return Proposition::atom(a.name(), std::move(args));
    }
    case PropKind::Bottom:
      return a;
    case PropKind::Implies:
      return Proposition::implies(substitute(a.left(), x, t), substitute(a.right(), x, t));
    case PropKind::And:
      return Proposition::conj(substitute(a.left(), x, t), substitute(a.right(), x, t));
    case PropKind::Or:
      return Proposition::disj(substitute(a.left(), x, t), substitute(a.right(), x, t));
    case PropKind::Forall:
    case PropKind::Exists: {
      const std::string& y = a.name();
      if (y == x) return a;  // x shadowed, nothing free below
      Proposition body = a.body();
      std::string binder = y;
      if (term_contains_var(t, y) && free_vars(body).count(x)) {
        // Incoming term would be captured: rename the binder first.
        std::set<std::string> avoid = term_vars(t);
        std::set<std::string> fv = free_vars(body);
        avoid.insert(fv.begin(), fv.end());
        avoid.insert(x);
        binder = fresh_name(y, avoid);
        body = substitute(body, y, Term::var(binder));
      }
      Proposition nb = substitute(body, x, t);
      return a.kind() == PropKind::Forall ? Proposition::forall(binder, std::move(nb))
                                          : Proposition::exists(binder, std::move(nb));
    }
  }
  return a;
}

namespace {

Term subst_metas_term(const Term& t, const std::map<std::string, Term>& binding) {
  switch (t.kind()) {
    case TermKind::Meta: {
      auto it = binding.find(t.head());
      return it == binding.end() ? t : it->second;
    }
    case TermKind::Var:
      return t;
    case TermKind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(subst_metas_term(a, binding));
      return Term::app(t.head(), std::move(args));
    }
  }
  return t;
}

}  // namespace

Proposition substitute_metas(const Proposition& a, const std::map<std::string, Term>& binding) {
  switch (a.kind()) {
    case PropKind::Atom: {
      std::vector<Term> args;
      args.reserve(a.terms().size());
      for (const Term& u : a.terms()) args.push_back(subst_metas_term(u, binding));
      return Proposition::atom(a.name(), std::move(args));
    }
    case PropKind::Bottom:
      return a;
    case PropKind::Implies:
      return Proposition::implies(substitute_metas(a.left(), binding),
                                  substitute_metas(a.right(), binding));
    case PropKind::And:
      return Proposition::conj(substitute_metas(a.left(), binding),
                               substitute_metas(a.right(), binding));
    case PropKind::Or:
      return Proposition::disj(substitute_metas(a.left(), binding),
                               substitute_metas(a.right(), binding));
    case PropKind::Forall:
    case PropKind::Exists: {
      const std::string& y = a.name();
      // Does any binding image used below contain y free?
      std::set<std::string> metas_below = prop_metas(a.body());
      bool capture = false;
      std::set<std::string> avoid;
      for (const auto& m : metas_below) {
        auto it = binding.find(m);
        if (it == binding.end()) continue;
        std::set<std::string> vs = term_vars(it->second);
        avoid.insert(vs.begin(), vs.end());
        if (vs.count(y)) capture = true;
      }
      Proposition body = a.body();
      std::string binder = y;
      if (capture) {
        std::set<std::string> fv = free_vars(body);
        avoid.insert(fv.begin(), fv.end());
        binder = fresh_name(y, avoid);
        body = substitute(body, y, Term::var(binder));
      }
      Proposition nb = substitute_metas(body, binding);
      return a.kind() == PropKind::Forall ? Proposition::forall(binder, std::move(nb))
                                          : Proposition::exists(binder, std::move(nb));
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence
// ---------------------------------------------------------------------------

namespace {

// Environments map bound names to binder depth indices on each side.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;  // (left name, right name)

  bool var_eq(const std::string& l, const std::string& r) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == l || it->second == r) return it->first == l && it->second == r;
    }
    return l == r;  // both free
  }
};

bool alpha_term(const Term& a, const Term& b, const AlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var:
      return env.var_eq(a.head(), b.head());
    case TermKind::Meta:
      return a.head() == b.head();
    case TermKind::App: {
      if (a.head() != b.head() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], env)) return false;
      return true;
    }
  }
  return false;
}

bool alpha_prop(const Proposition& a, const Proposition& b, AlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PropKind::Atom: {
      if (a.name() != b.name() || a.terms().size() != b.terms().size()) return false;
      for (size_t i = 0; i < a.terms().size(); ++i)
        if (!alpha_term(a.terms()[i], b.terms()[i], env)) return false;
      return true;
    }
    case PropKind::Bottom:
      return true;
    case PropKind::Implies:
    case PropKind::And:
    case PropKind::Or:
      return alpha_prop(a.left(), b.left(), env) && alpha_prop(a.right(), b.right(), env);
    case PropKind::Forall:
    case PropKind::Exists: {
      env.pairs.emplace_back(a.name(), b.name());
      bool ok = alpha_prop(a.body(), b.body(), env);
      env.pairs.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Proposition& a, const Proposition& b) {
  AlphaEnv env;
  return alpha_prop(a, b, env);
}

bool alpha_eq_term(const Term& a, const Term& b) { return a == b; }

namespace {

void key_term(const Term& t, const std::vector<std::string>& binders, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      for (size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == t.head()) {
          out += '#';
          out += std::to_string(binders.size() - 1 - i);
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
    case TermKind::App: {
      out += '(';
      out += t.head();
      for (const Term& a : t.args()) {
        out += ' ';
        key_term(a, binders, out);
      }
      out += ')';
      return;
    }
  }
}

void key_prop(const Proposition& a, std::vector<std::string>& binders, std::string& out) {
  switch (a.kind()) {
    case PropKind::Atom:
      out += '(';
      out += a.name();
      for (const Term& t : a.terms()) {
        out += ' ';
        key_term(t, binders, out);
      }
      out += ')';
      return;
    case PropKind::Bottom:
      out += "F";
      return;
    case PropKind::Implies:
    case PropKind::And:
    case PropKind::Or: {
      out += a.kind() == PropKind::Implies ? "(=> " : (a.kind() == PropKind::And ? "(& " : "(| ");
      key_prop(a.left(), binders, out);
      out += ' ';
      key_prop(a.right(), binders, out);
      out += ')';
      return;
    }
    case PropKind::Forall:
    case PropKind::Exists: {
      out += a.kind() == PropKind::Forall ? "(A " : "(E ";
      binders.push_back(a.name());
      key_prop(a.body(), binders, out);
      binders.pop_back();
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string alpha_canonical_key(const Proposition& a) {
  std::string out;
  std::vector<std::string> binders;
  key_prop(a, binders, out);
  return out;
}

namespace {

Proposition rename_apart(const Proposition& a, std::set<std::string>& used) {
  switch (a.kind()) {
    case PropKind::Atom:
    case PropKind::Bottom:
      return a;
    case PropKind::Implies: {
      Proposition l = rename_apart(a.left(), used);
      Proposition r = rename_apart(a.right(), used);
      return Proposition::implies(std::move(l), std::move(r));
    }
    case PropKind::And: {
      Proposition l = rename_apart(a.left(), used);
      Proposition r = rename_apart(a.right(), used);
      return Proposition::conj(std::move(l), std::move(r));
    }
    case PropKind::Or: {
      Proposition l = rename_apart(a.left(), used);
      Proposition r = rename_apart(a.right(), used);
      return Proposition::disj(std::move(l), std::move(r));
    }
    case PropKind::Forall:
    case PropKind::Exists: {
      std::string binder = a.name();
      Proposition body = a.body();
      if (used.count(binder)) {
        binder = fresh_name(binder, used);
        body = substitute(body, a.name(), Term::var(binder));
      }
      used.insert(binder);
      Proposition nb = rename_apart(body, used);
      return a.kind() == PropKind::Forall ? Proposition::forall(binder, std::move(nb))
                                          : Proposition::exists(binder, std::move(nb));
    }
  }
  return a;
}

}  // namespace

Proposition rename_binders_apart(const Proposition& a) {
  std::set<std::string> used = free_vars(a);
  return rename_apart(a, used);
}

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

void Signature::validate() const {
  for (const auto& [name, arity] : functions) {
    if (arity < 0) throw std::runtime_error("negative arity for function " + name);
    if (predicates.count(name))
      throw std::runtime_error("symbol declared as both function and predicate: " + name);
  }
  for (const auto& [name, arity] : predicates)
    if (arity < 0) throw std::runtime_error("negative arity for predicate " + name);
  for (const auto& [name, tag] : skolem_tags) {
    auto it = functions.find(name);
    if (it == functions.end())
      throw std::runtime_error("skolem tag for undeclared function: " + name);
    if (tag.vars.empty() || it->second != static_cast<int>(tag.vars.size()) - 1)
      throw std::runtime_error("skolem tag arity mismatch for " + name);
  }
}

void Signature::add_function(const std::string& n, int arity) {
  if (predicates.count(n))
    throw std::runtime_error("symbol declared as both function and predicate: " + n);
  auto it = functions.find(n);
  if (it != functions.end() && it->second != arity)
    throw std::runtime_error("conflicting arity for function " + n);
  functions[n] = arity;
}

void Signature::add_predicate(const std::string& n, int arity) {
  if (functions.count(n))
    throw std::runtime_error("symbol declared as both function and predicate: " + n);
  auto it = predicates.find(n);
  if (it != predicates.end() && it->second != arity)
    throw std::runtime_error("conflicting arity for predicate " + n);
  predicates[n] = arity;
}

bool Signature::numerals_enabled() const {
  auto s = functions.find("S");
  auto z = functions.find("0");
  return s != functions.end() && s->second == 1 && z != functions.end() && z->second == 0;
}

void check_term_wf(const Signature& sig, const Term& t, bool allow_meta, SourcePos pos) {
  switch (t.kind()) {
    case TermKind::Var:
      if (sig.has_predicate(t.head()))
        throw ParseError(pos, "predicate symbol used as a term: " + t.head());
      return;
    case TermKind::Meta:
      if (!allow_meta)
        throw ParseError(pos, "metavariable ?" + t.head() + " outside a rewrite rule");
      return;
    case TermKind::App: {
      auto it = sig.functions.find(t.head());
      if (it == sig.functions.end())
        throw ParseError(pos, "unknown function symbol: " + t.head());
      if (it->second != static_cast<int>(t.args().size()))
        throw ParseError(pos, "arity mismatch: function " + t.head() + " expects " +
                                  std::to_string(it->second) + " arguments, got " +
                                  std::to_string(t.args().size()));
      for (const Term& a : t.args()) check_term_wf(sig, a, allow_meta, pos);
      return;
    }
  }
}

void check_prop_wf(const Signature& sig, const Proposition& a, bool allow_meta, SourcePos pos) {
  switch (a.kind()) {
    case PropKind::Atom: {
      auto it = sig.predicates.find(a.name());
      if (it == sig.predicates.end())
        throw ParseError(pos, "unknown predicate symbol: " + a.name());
      if (it->second != static_cast<int>(a.terms().size()))
        throw ParseError(pos, "arity mismatch: predicate " + a.name() + " expects " +
                                  std::to_string(it->second) + " arguments, got " +
                                  std::to_string(a.terms().size()));
      for (const Term& t : a.terms()) check_term_wf(sig, t, allow_meta, pos);
      return;
    }
    case PropKind::Bottom:
      return;
    case PropKind::Forall:
    case PropKind::Exists:
      check_prop_wf(sig, a.body(), allow_meta, pos);
      return;
    default:
      check_prop_wf(sig, a.left(), allow_meta, pos);
      check_prop_wf(sig, a.right(), allow_meta, pos);
      return;
  }
}

}  // namespace demod
