#include "demod/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace demod {

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

RewriteRule RewriteRule::make_term(std::string name, Term lhs, Term rhs) {
  RewriteRule r;
  r.kind = RuleKind::TermRule;
  r.name = std::move(name);
  r.term_lhs = std::move(lhs);
  r.term_rhs = std::move(rhs);
  r.validate();
  return r;
}

RewriteRule RewriteRule::make_prop(std::string name, Proposition lhs, Proposition rhs) {
  RewriteRule r;
  r.kind = RuleKind::PropRule;
  r.name = std::move(name);
  r.prop_lhs = std::move(lhs);
  r.prop_rhs = std::move(rhs);
  r.validate();
  return r;
}

void RewriteRule::validate() const {
  if (kind == RuleKind::TermRule) {
    if (!term_lhs.is_app())
      throw std::runtime_error("rule " + name + ": term-rule lhs must be an application");
    std::set<std::string> lhs_metas, rhs_metas;
    collect_term_metas(term_lhs, lhs_metas);
    collect_term_metas(term_rhs, rhs_metas);
    for (const auto& m : rhs_metas)
      if (!lhs_metas.count(m))
        throw std::runtime_error("rule " + name + ": rhs metavariable ?" + m + " not in lhs");
  } else {
    if (!prop_lhs.is_atom())
      throw std::runtime_error("rule " + name + ": prop-rule lhs must be atomic");
    std::set<std::string> lhs_metas;
    for (const Term& t : prop_lhs.terms()) collect_term_metas(t, lhs_metas);
    for (const auto& m : prop_metas(prop_rhs))
      if (!lhs_metas.count(m))
        throw std::runtime_error("rule " + name + ": rhs metavariable ?" + m + " not in lhs");
  }
}

void RewriteSystem::add(RewriteRule r) {
  r.validate();
  for (const auto& existing : rules)
    if (existing.name == r.name)
      throw std::runtime_error("duplicate rule name: " + r.name);
  rules.push_back(std::move(r));
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

bool match_term(const Term& pattern, const Term& subject, Binding& binding) {
  switch (pattern.kind()) {
    case TermKind::Meta: {
      auto it = binding.find(pattern.head());
      if (it != binding.end()) return it->second == subject;
      binding.emplace(pattern.head(), subject);
      return true;
    }
    case TermKind::Var:
      return subject.is_var() && subject.head() == pattern.head();
    case TermKind::App: {
      if (!subject.is_app() || subject.head() != pattern.head()) return false;
      if (subject.args().size() != pattern.args().size()) return false;
      for (size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_term(pattern.args()[i], subject.args()[i], binding)) return false;
      return true;
    }
  }
  return false;
}

bool match_atom(const Proposition& pattern, const Proposition& subject, Binding& binding) {
  if (!pattern.is_atom() || !subject.is_atom()) return false;
  if (pattern.name() != subject.name()) return false;
  if (pattern.terms().size() != subject.terms().size()) return false;
  for (size_t i = 0; i < pattern.terms().size(); ++i)
    if (!match_term(pattern.terms()[i], subject.terms()[i], binding)) return false;
  return true;
}

namespace {

Term instantiate_term(const Term& rhs, const Binding& binding) {
  switch (rhs.kind()) {
    case TermKind::Meta: {
      auto it = binding.find(rhs.head());
      return it == binding.end() ? rhs : it->second;
    }
    case TermKind::Var:
      return rhs;
    case TermKind::App: {
      std::vector<Term> args;
      args.reserve(rhs.args().size());
      for (const Term& a : rhs.args()) args.push_back(instantiate_term(a, binding));
      return Term::app(rhs.head(), std::move(args));
    }
  }
  return rhs;
}

// Tries rules in order at the root of a term.
std::optional<Term> root_rewrite_term(const Term& t, const RewriteSystem& rs) {
  if (!t.is_app()) return std::nullopt;
  for (const RewriteRule& r : rs.rules) {
    if (r.kind != RuleKind::TermRule) continue;
    Binding b;
    if (match_term(r.term_lhs, t, b)) return instantiate_term(r.term_rhs, b);
  }
  return std::nullopt;
}

// Tries PropRules in order at an atom.
std::optional<Proposition> root_rewrite_atom(const Proposition& a, const RewriteSystem& rs) {
  if (!a.is_atom()) return std::nullopt;
  for (const RewriteRule& r : rs.rules) {
    if (r.kind != RuleKind::PropRule) continue;
    Binding b;
    if (match_atom(r.prop_lhs, a, b)) {
      std::map<std::string, Term> bind(b.begin(), b.end());
      return substitute_metas(r.prop_rhs, bind);
    }
  }
  return std::nullopt;
}

// One-step rewrite inside a term, strategy-ordered.
std::optional<Term> step_term(const Term& t, const RewriteSystem& rs, Strategy strategy) {
  if (!t.is_app()) return std::nullopt;
  if (strategy == Strategy::LeftmostOutermost) {
    if (auto r = root_rewrite_term(t, rs)) return r;
  }
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (auto r = step_term(t.args()[i], rs, strategy)) {
      std::vector<Term> args = t.args();
      args[i] = std::move(*r);
      return Term::app(t.head(), std::move(args));
    }
  }
  if (strategy == Strategy::LeftmostInnermost) {
    if (auto r = root_rewrite_term(t, rs)) return r;
  }
  return std::nullopt;
}

std::optional<Proposition> step_prop(const Proposition& a, const RewriteSystem& rs,
                                     Strategy strategy) {
  switch (a.kind()) {
    case PropKind::Atom: {
      // Innermost: term redexes below the atom come first; outermost: the
      // atom itself is the outer redex.
      if (strategy == Strategy::LeftmostOutermost) {
        if (auto r = root_rewrite_atom(a, rs)) return r;
      }
      for (size_t i = 0; i < a.terms().size(); ++i) {
        if (auto r = step_term(a.terms()[i], rs, strategy)) {
          std::vector<Term> ts = a.terms();
          ts[i] = std::move(*r);
          return Proposition::atom(a.name(), std::move(ts));
        }
      }
      if (strategy == Strategy::LeftmostInnermost) {
        if (auto r = root_rewrite_atom(a, rs)) return r;
      }
      return std::nullopt;
    }
    case PropKind::Bottom:
      return std::nullopt;
    case PropKind::Implies:
    case PropKind::And:
    case PropKind::Or: {
      if (auto l = step_prop(a.left(), rs, strategy)) {
        switch (a.kind()) {
          case PropKind::Implies: return Proposition::implies(std::move(*l), a.right());
          case PropKind::And: return Proposition::conj(std::move(*l), a.right());
          default: return Proposition::disj(std::move(*l), a.right());
        }
      }
      if (auto r = step_prop(a.right(), rs, strategy)) {
        switch (a.kind()) {
          case PropKind::Implies: return Proposition::implies(a.left(), std::move(*r));
          case PropKind::And: return Proposition::conj(a.left(), std::move(*r));
          default: return Proposition::disj(a.left(), std::move(*r));
        }
      }
      return std::nullopt;
    }
    case PropKind::Forall:
    case PropKind::Exists: {
      if (auto b = step_prop(a.body(), rs, strategy)) {
        return a.kind() == PropKind::Forall ? Proposition::forall(a.name(), std::move(*b))
                                            : Proposition::exists(a.name(), std::move(*b));
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Proposition> rewrite_once(const Proposition& a, const RewriteSystem& rs,
                                        Strategy strategy) {
  return step_prop(a, rs, strategy);
}

std::optional<Term> rewrite_once_term(const Term& t, const RewriteSystem& rs, Strategy strategy) {
  return step_term(t, rs, strategy);
}

namespace {

void collect_term_reducts(const Term& t, const RewriteSystem& rs,
                          const std::function<void(Term)>& emit) {
  if (!t.is_app()) return;
  for (const RewriteRule& r : rs.rules) {
    if (r.kind != RuleKind::TermRule) continue;
    Binding b;
    if (match_term(r.term_lhs, t, b)) emit(instantiate_term(r.term_rhs, b));
  }
  for (size_t i = 0; i < t.args().size(); ++i) {
    collect_term_reducts(t.args()[i], rs, [&](Term nt) {
      std::vector<Term> args = t.args();
      args[i] = std::move(nt);
      emit(Term::app(t.head(), std::move(args)));
    });
  }
}

void collect_prop_reducts(const Proposition& a, const RewriteSystem& rs,
                          const std::function<void(Proposition)>& emit) {
  switch (a.kind()) {
    case PropKind::Atom: {
      for (const RewriteRule& r : rs.rules) {
        if (r.kind != RuleKind::PropRule) continue;
        Binding b;
        if (match_atom(r.prop_lhs, a, b)) {
          std::map<std::string, Term> bind(b.begin(), b.end());
          emit(substitute_metas(r.prop_rhs, bind));
        }
      }
      for (size_t i = 0; i < a.terms().size(); ++i) {
        collect_term_reducts(a.terms()[i], rs, [&](Term nt) {
          std::vector<Term> ts = a.terms();
          ts[i] = std::move(nt);
          emit(Proposition::atom(a.name(), std::move(ts)));
        });
      }
      return;
    }
    case PropKind::Bottom:
      return;
    case PropKind::Implies:
    case PropKind::And:
    case PropKind::Or: {
      collect_prop_reducts(a.left(), rs, [&](Proposition l) {
        switch (a.kind()) {
          case PropKind::Implies: emit(Proposition::implies(std::move(l), a.right())); break;
          case PropKind::And: emit(Proposition::conj(std::move(l), a.right())); break;
          default: emit(Proposition::disj(std::move(l), a.right())); break;
        }
      });
      collect_prop_reducts(a.right(), rs, [&](Proposition r) {
        switch (a.kind()) {
          case PropKind::Implies: emit(Proposition::implies(a.left(), std::move(r))); break;
          case PropKind::And: emit(Proposition::conj(a.left(), std::move(r))); break;
          default: emit(Proposition::disj(a.left(), std::move(r))); break;
        }
      });
      return;
    }
    case PropKind::Forall:
    case PropKind::Exists: {
      collect_prop_reducts(a.body(), rs, [&](Proposition b) {
        emit(a.kind() == PropKind::Forall ? Proposition::forall(a.name(), std::move(b))
                                          : Proposition::exists(a.name(), std::move(b)));
      });
      return;
    }
  }
}

}  // namespace

std::vector<Proposition> all_one_step_reducts(const Proposition& a, const RewriteSystem& rs) {
  std::vector<Proposition> out;
  std::set<std::string> seen;
  collect_prop_reducts(a, rs, [&](Proposition p) {
    std::string key = alpha_canonical_key(p);
    if (seen.insert(key).second) out.push_back(std::move(p));
  });
  return out;
}

NormalizeResult normalize_prop(const Proposition& a, const RewriteSystem& rs, long long fuel,
                               Strategy strategy) {
  NormalizeResult res;
  res.prop = a;
  for (;;) {
    std::optional<Proposition> next = rewrite_once(res.prop, rs, strategy);
    if (!next) return res;
    if (res.steps >= fuel) {
      res.exhausted = true;
      return res;
    }
    res.prop = std::move(*next);
    ++res.steps;
  }
}

NormalizeTermResult normalize_term(const Term& t, const RewriteSystem& rs, long long fuel,
                                   Strategy strategy) {
  NormalizeTermResult res;
  res.term = t;
  for (;;) {
    std::optional<Term> next = rewrite_once_term(res.term, rs, strategy);
    if (!next) return res;
    if (res.steps >= fuel) {
      res.exhausted = true;
      return res;
    }
    res.term = std::move(*next);
    ++res.steps;
  }
}

NormalizeResult whnf_prop(const Proposition& a, const RewriteSystem& rs, long long fuel) {
  NormalizeResult res;
  res.prop = a;
  while (res.prop.is_atom()) {
    if (auto next = root_rewrite_atom(res.prop, rs)) {
      if (res.steps >= fuel) {
        res.exhausted = true;
        return res;
      }
      res.prop = std::move(*next);
      ++res.steps;
      continue;
    }
    // No PropRule matches the atom as-is; normalizing argument terms can
    // expose a redex when a rule lhs has structured arguments.
    bool changed = false;
    std::vector<Term> ts = res.prop.terms();
    for (Term& t : ts) {
      NormalizeTermResult tr = normalize_term(t, rs, fuel - res.steps);
      res.steps += tr.steps;
      if (tr.steps > 0) changed = true;
      t = std::move(tr.term);
      if (tr.exhausted) {
        res.prop = Proposition::atom(res.prop.name(), std::move(ts));
        res.exhausted = true;
        return res;
      }
    }
    if (changed) {
      res.prop = Proposition::atom(res.prop.name(), std::move(ts));
      if (root_rewrite_atom(res.prop, rs)) continue;
    }
    return res;  // irreducible atom
  }
  return res;
}

EquivStatus equiv(const Proposition& a, const Proposition& b, const RewriteSystem& rs,
                  long long fuel) {
  if (alpha_eq(a, b)) return EquivStatus::True;
  if (rs.empty()) return EquivStatus::False;

  NormalizeResult na = normalize_prop(a, rs, fuel);
  NormalizeResult nb = normalize_prop(b, rs, fuel);
  if (!na.exhausted && !nb.exhausted)
    return alpha_eq(na.prop, nb.prop) ? EquivStatus::True : EquivStatus::False;

  // A normal form is out of reach; search for a common reduct instead.
  // Sound for any system (joinable implies congruent); for a confluent
  // system the two are equivalent, so a fully explored disjoint search
  // space decides False.
  std::set<std::string> seen_a, seen_b;
  std::deque<Proposition> frontier_a{a}, frontier_b{b};
  seen_a.insert(alpha_canonical_key(a));
  seen_b.insert(alpha_canonical_key(b));
  if (seen_b.count(alpha_canonical_key(a)) && alpha_eq(a, b)) return EquivStatus::True;

  long long budget = fuel;
  auto expand = [&](std::deque<Proposition>& frontier, std::set<std::string>& seen_self,
                    const std::set<std::string>& seen_other) -> std::optional<bool> {
    size_t level = frontier.size();
    for (size_t i = 0; i < level; ++i) {
      Proposition cur = std::move(frontier.front());
      frontier.pop_front();
      for (Proposition& red : all_one_step_reducts(cur, rs)) {
        if (budget-- <= 0) return std::nullopt;
        std::string key = alpha_canonical_key(red);
        if (seen_other.count(key)) return true;
        if (seen_self.insert(key).second) frontier.push_back(std::move(red));
      }
    }
    return false;
  };

  while (!frontier_a.empty() || !frontier_b.empty()) {
    if (!frontier_a.empty()) {
      auto r = expand(frontier_a, seen_a, seen_b);
      if (!r) return EquivStatus::FuelExhausted;
      if (*r) return EquivStatus::True;
    }
    if (!frontier_b.empty()) {
      auto r = expand(frontier_b, seen_b, seen_a);
      if (!r) return EquivStatus::FuelExhausted;
      if (*r) return EquivStatus::True;
    }
  }
  return EquivStatus::False;
}

// ---------------------------------------------------------------------------
// Orthogonality
// ---------------------------------------------------------------------------

namespace {

Term rename_metas(const Term& t, const std::string& suffix) {
  switch (t.kind()) {
    case TermKind::Meta:
      return Term::meta(t.head() + suffix);
    case TermKind::Var:
      return t;
    case TermKind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(rename_metas(a, suffix));
      return Term::app(t.head(), std::move(args));
    }
  }
  return t;
}

bool occurs(const std::string& m, const Term& t, const Binding& sub) {
  switch (t.kind()) {
    case TermKind::Meta: {
      if (t.head() == m) return true;
      auto it = sub.find(t.head());
      return it != sub.end() && occurs(m, it->second, sub);
    }
    case TermKind::Var:
      return false;
    case TermKind::App:
      for (const Term& a : t.args())
        if (occurs(m, a, sub)) return true;
      return false;
  }
  return false;
}

Term walk(const Term& t, const Binding& sub) {
  Term cur = t;
  while (cur.is_meta()) {
    auto it = sub.find(cur.head());
    if (it == sub.end()) return cur;
    cur = it->second;
  }
  return cur;
}

// Robinson unification over metavariables; plain variables behave as
// constants.
bool unify_terms(const Term& a, const Term& b, Binding& sub) {
  Term x = walk(a, sub), y = walk(b, sub);
  if (x.is_meta()) {
    if (y.is_meta() && y.head() == x.head()) return true;
    if (occurs(x.head(), y, sub)) return false;
    sub.emplace(x.head(), y);
    return true;
  }
  if (y.is_meta()) return unify_terms(y, x, sub);
  if (x.kind() != y.kind() || x.head() != y.head()) return false;
  if (x.args().size() != y.args().size()) return false;
  for (size_t i = 0; i < x.args().size(); ++i)
    if (!unify_terms(x.args()[i], y.args()[i], sub)) return false;
  return true;
}

bool unify_atoms(const Proposition& a, const Proposition& b, Binding& sub) {
  if (a.name() != b.name() || a.terms().size() != b.terms().size()) return false;
  for (size_t i = 0; i < a.terms().size(); ++i)
    if (!unify_terms(a.terms()[i], b.terms()[i], sub)) return false;
  return true;
}

// Non-variable subterm positions of t, as (path string, subterm).
void nonvar_positions(const Term& t, const std::string& path,
                      std::vector<std::pair<std::string, Term>>& out) {
  if (!t.is_app()) return;
  out.emplace_back(path, t);
  for (size_t i = 0; i < t.args().size(); ++i)
    nonvar_positions(t.args()[i], path + "." + std::to_string(i + 1), out);
}

bool left_linear_terms(const std::vector<Term>& ts) {
  std::set<std::string> seen;
  bool ok = true;
  for (const Term& t : ts) {
    std::set<std::string> ms;
    collect_term_metas(t, ms);
    // count occurrences, not just presence
    std::function<void(const Term&)> walk_fn = [&](const Term& u) {
      if (u.is_meta()) {
        if (!seen.insert(u.head()).second) ok = false;
      }
      for (const Term& a : u.args()) walk_fn(a);
    };
    walk_fn(t);
  }
  return ok;
}

}  // namespace

OrthogonalityReport check_orthogonality(const RewriteSystem& rs) {
  OrthogonalityReport rep;

  for (const RewriteRule& r : rs.rules) {
    std::vector<Term> lhs_terms;
    if (r.kind == RuleKind::TermRule)
      lhs_terms.push_back(r.term_lhs);
    else
      lhs_terms = r.prop_lhs.terms();
    if (!left_linear_terms(lhs_terms))
      rep.violations.push_back({OrthogonalityViolation::Kind::NonLeftLinear, r.name, "",
                                "repeated metavariable in lhs"});
  }

  // Candidate overlap positions per rule: for a TermRule, the non-variable
  // subterms of its lhs; for a PropRule, the non-variable subterms of the
  // lhs atom's arguments (the atom itself is handled separately).
  for (size_t i = 0; i < rs.rules.size(); ++i) {
    const RewriteRule& outer = rs.rules[i];
    std::vector<std::pair<std::string, Term>> positions;
    if (outer.kind == RuleKind::TermRule) {
      nonvar_positions(outer.term_lhs, "1", positions);
    } else {
      for (size_t k = 0; k < outer.prop_lhs.terms().size(); ++k)
        nonvar_positions(outer.prop_lhs.terms()[k], std::to_string(k + 1), positions);
    }

    for (size_t j = 0; j < rs.rules.size(); ++j) {
      const RewriteRule& inner = rs.rules[j];
      if (inner.kind == RuleKind::TermRule) {
        Term inner_lhs = rename_metas(inner.term_lhs, "#r");
        for (const auto& [path, sub] : positions) {
          bool root_pos = outer.kind == RuleKind::TermRule && path == "1";
          if (i == j && root_pos) continue;  // trivial self-overlap
          Binding s;
          if (unify_terms(sub, inner_lhs, s))
            rep.violations.push_back({OrthogonalityViolation::Kind::Overlap, outer.name,
                                      inner.name, "at position " + path});
        }
      } else if (outer.kind == RuleKind::PropRule) {
        if (i == j) continue;  // trivial self-overlap at the atom root
        Proposition inner_lhs = outer.prop_lhs;  // placeholder to keep types; replaced below
        // rename inner rule's metas
        std::vector<Term> renamed;
        renamed.reserve(inner.prop_lhs.terms().size());
        for (const Term& t : inner.prop_lhs.terms()) renamed.push_back(rename_metas(t, "#r"));
        Proposition inner_atom = Proposition::atom(inner.prop_lhs.name(), std::move(renamed));
        Binding s;
        if (unify_atoms(outer.prop_lhs, inner_atom, s))
          rep.violations.push_back({OrthogonalityViolation::Kind::Overlap, outer.name,
                                    inner.name, "at the atom root"});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Termination measure
// ---------------------------------------------------------------------------

namespace {

void collect_measure(const Proposition& a, AtomMeasure& out) {
  switch (a.kind()) {
    case PropKind::Atom: {
      int n = 0;
      for (const Term& t : a.terms()) n += t.function_symbol_count();
      out.push_back(n);
      return;
    }
    case PropKind::Bottom:
      return;
    case PropKind::Forall:
    case PropKind::Exists:
      collect_measure(a.body(), out);
      return;
    default:
      collect_measure(a.left(), out);
      collect_measure(a.right(), out);
      return;
  }
}

}  // namespace

AtomMeasure atom_measure(const Proposition& a) {
  AtomMeasure m;
  collect_measure(a, m);
  std::sort(m.begin(), m.end());
  return m;
}

bool multiset_less(const AtomMeasure& smaller, const AtomMeasure& larger) {
  // Cancel common elements, then every residual element of `smaller` must be
  // dominated by some residual element of `larger`, which must be nonempty.
  AtomMeasure s = smaller, l = larger;  // both sorted
  AtomMeasure rs_, rl_;
  size_t i = 0, j = 0;
  while (i < s.size() && j < l.size()) {
    if (s[i] == l[j]) {
      ++i;
      ++j;
    } else if (s[i] < l[j]) {
      rs_.push_back(s[i++]);
    } else {
      rl_.push_back(l[j++]);
    }
  }
  while (i < s.size()) rs_.push_back(s[i++]);
  while (j < l.size()) rl_.push_back(l[j++]);

  if (rl_.empty()) return false;
  int max_l = rl_.back();
  for (int v : rs_)
    if (v >= max_l) return false;
  return true;
}

bool sf_measure_decreases(const Proposition& a, const Proposition& b) {
  return multiset_less(atom_measure(b), atom_measure(a));
}

}  // namespace demod
