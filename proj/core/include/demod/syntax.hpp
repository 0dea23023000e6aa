#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "demod/sexpr.hpp"

namespace demod {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind {
  Var,   // object variable
  App,   // function symbol applied to arguments (nullary allowed)
  Meta,  // pattern metavariable (?name); only legal inside rewrite rules
};

// Immutable first-order term. Copies are cheap (shared nodes).
class Term {
 public:
  Term() : Term(var("_")) {}

  static Term var(std::string name);
  static Term app(std::string fn, std::vector<Term> args = {});
  static Term meta(std::string name);

  TermKind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == TermKind::Var; }
  bool is_app() const { return node_->kind == TermKind::App; }
  bool is_meta() const { return node_->kind == TermKind::Meta; }

  // Variable/metavariable name, or function symbol for App.
  const std::string& head() const { return node_->head; }
  const std::vector<Term>& args() const { return node_->args; }

  // Structural equality. Terms contain no binders, so this is exact.
  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

  // Total number of App nodes (the "function symbol count" of the
  // termination measure; nullary symbols count).
  int function_symbol_count() const;

 private:
  struct Node {
    TermKind kind;
    std::string head;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

void collect_term_vars(const Term& t, std::set<std::string>& out);
void collect_term_metas(const Term& t, std::set<std::string>& out);
std::set<std::string> term_vars(const Term& t);
bool term_contains_var(const Term& t, const std::string& x);

// [t/x] on terms.
Term subst_term(const Term& in, const std::string& x, const Term& t);

// ---------------------------------------------------------------------------
// Propositions
// ---------------------------------------------------------------------------

enum class PropKind { Atom, Implies, And, Or, Bottom, Forall, Exists };

// Immutable proposition over atoms, => /\ \/ false, forall, exists.
// The biconditional and negation are surface sugar handled by the parser.
class Proposition {
 public:
  Proposition() : Proposition(bottom()) {}

  static Proposition atom(std::string pred, std::vector<Term> args = {});
  static Proposition implies(Proposition a, Proposition b);
  static Proposition conj(Proposition a, Proposition b);
  static Proposition disj(Proposition a, Proposition b);
  static Proposition bottom();
  static Proposition forall(std::string var, Proposition body);
  static Proposition exists(std::string var, Proposition body);
  // not A := A => false
  static Proposition neg(Proposition a);

  PropKind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind == PropKind::Atom; }

  // Atom: predicate name. Forall/Exists: bound variable name.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& terms() const { return node_->terms; }

  const Proposition& left() const { return node_->children[0]; }
  const Proposition& right() const { return node_->children[1]; }
  const Proposition& body() const { return node_->children[0]; }
  const std::vector<Proposition>& children() const { return node_->children; }

  // Raw structural equality including bound names. Alpha-insensitive
  // comparison is alpha_eq below; that is the equality that matters.
  bool syntactic_eq(const Proposition& o) const;

 private:
  struct Node {
    PropKind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Proposition> children;
  };
  explicit Proposition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Free object variables of A.
std::set<std::string> free_vars(const Proposition& a);
// Metavariables occurring anywhere in A (rewrite-rule right-hand sides).
std::set<std::string> prop_metas(const Proposition& a);

// Capture-avoiding [t/x]A. Bound variables are renamed (x -> x', x'', ...)
// whenever they would capture a free variable of t.
Proposition substitute(const Proposition& a, const std::string& x, const Term& t);

// Simultaneous capture-avoiding replacement of metavariables by terms.
Proposition substitute_metas(const Proposition& a, const std::map<std::string, Term>& binding);

// Equality up to renaming of bound variables.
bool alpha_eq(const Proposition& a, const Proposition& b);
bool alpha_eq_term(const Term& a, const Term& b);  // == (no binders)

// Canonical string with bound variables de Bruijn-numbered; alpha-equal
// propositions map to equal strings. Used for hashing and deduplication.
std::string alpha_canonical_key(const Proposition& a);

// A name based on `base` (base, base', base'', ...) not present in `used`.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

// Renames binders so every bound variable is distinct from every other
// binder and from every free variable. Deterministic.
Proposition rename_binders_apart(const Proposition& a);

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

// Comprehension metadata carried by a minted Skolem symbol: the variable
// list x1..xn+1 (membership variable last) and the defining body.
struct SkolemTag {
  std::vector<std::string> vars;
  Proposition body;
};

struct Signature {
  std::map<std::string, int> functions;   // name -> arity
  std::map<std::string, int> predicates;  // name -> arity
  std::map<std::string, SkolemTag> skolem_tags;

  bool has_function(const std::string& n) const { return functions.count(n) > 0; }
  bool has_predicate(const std::string& n) const { return predicates.count(n) > 0; }

  // Throws std::runtime_error when a name is declared as both a function and
  // a predicate, or a skolem tag disagrees with the declared arity.
  void validate() const;

  void add_function(const std::string& n, int arity);
  void add_predicate(const std::string& n, int arity);

  // True when numerals abbreviate S-towers over 0 in this signature.
  bool numerals_enabled() const;
};

// Arity check over a whole term / proposition. Metavariables are accepted
// only when allow_meta is set. Throws ParseError on violation (pos used for
// values built in code, where node positions are unknown).
void check_term_wf(const Signature& sig, const Term& t, bool allow_meta = false,
                   SourcePos pos = {});
void check_prop_wf(const Signature& sig, const Proposition& a, bool allow_meta = false,
                   SourcePos pos = {});

// ---------------------------------------------------------------------------
// Sequents
// ---------------------------------------------------------------------------

// Ordered context of named hypotheses. Later entries shadow earlier ones
// (binders). Top-level hypothesis names must be pairwise distinct.
struct Context {
  std::vector<std::pair<std::string, Proposition>> hyps;

  const Proposition* lookup(const std::string& name) const {
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  void push(std::string name, Proposition p) { hyps.emplace_back(std::move(name), std::move(p)); }
};

struct Sequent {
  Context context;
  Proposition goal;
};

}  // namespace demod
