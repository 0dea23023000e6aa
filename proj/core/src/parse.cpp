#include "demod/parse.hpp"

#include <cctype>
#include <set>

namespace demod {

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "=>", "and", "or", "iff", "not", "false", "forall", "exists",
      "term-rule", "prop-rule", "signature", "rules", "axioms", "fun", "pred",
      "skolem", "vars", "body", "ax", "proof", "goal", "term",
      "pvar", "lam", "app", "pair", "fst", "snd", "inl", "inr", "case",
      "botelim", "tlam", "tapp", "witness", "exelim", "em", "levels",
      "unstratifiable"};
  return words;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Term numeral(long long n) {
  Term t = Term::app("0");
  for (long long i = 0; i < n; ++i) t = Term::app("S", {std::move(t)});
  return t;
}

// A binder or plain variable position: a fresh name, not a declared symbol,
// keyword or numeral.
std::string parse_var_name(const SExpr& e, const Signature& sig) {
  if (!e.is_atom) throw ParseError(e.pos, "expected a variable name");
  const std::string& n = e.atom;
  if (reserved_words().count(n)) throw ParseError(e.pos, "reserved word used as variable: " + n);
  if (all_digits(n)) throw ParseError(e.pos, "numeral used as variable: " + n);
  if (n[0] == '?') throw ParseError(e.pos, "metavariable used as variable: " + n);
  if (sig.has_function(n)) throw ParseError(e.pos, "function symbol used as variable: " + n);
  if (sig.has_predicate(n)) throw ParseError(e.pos, "predicate symbol used as variable: " + n);
  return n;
}

}  // namespace

Term parse_term(const SExpr& e, const Signature& sig, bool allow_meta) {
  if (e.is_atom) {
    const std::string& tok = e.atom;
    if (tok[0] == '?') {
      if (!allow_meta)
        throw ParseError(e.pos, "metavariable " + tok + " outside a rewrite rule");
      if (tok.size() == 1) throw ParseError(e.pos, "empty metavariable name");
      return Term::meta(tok.substr(1));
    }
    if (sig.has_predicate(tok))
      throw ParseError(e.pos, "predicate symbol used as a term: " + tok);
    auto it = sig.functions.find(tok);
    if (it != sig.functions.end()) {
      if (it->second != 0)
        throw ParseError(e.pos, "function " + tok + " of arity " + std::to_string(it->second) +
                                    " used without arguments");
      return Term::app(tok);
    }
    if (all_digits(tok)) {
      if (!sig.numerals_enabled())
        throw ParseError(e.pos, "numeral " + tok + " needs S/1 and 0/0 in the signature");
      return numeral(std::stoll(tok));
    }
    if (reserved_words().count(tok))
      throw ParseError(e.pos, "reserved word used as a term: " + tok);
    return Term::var(tok);
  }
  if (e.items.empty()) throw ParseError(e.pos, "empty term");
  const SExpr& head = e.items[0];
  if (!head.is_atom) throw ParseError(head.pos, "term head must be a symbol");
  auto it = sig.functions.find(head.atom);
  if (it == sig.functions.end())
    throw ParseError(head.pos, "unknown function symbol: " + head.atom);
  int argc = static_cast<int>(e.items.size()) - 1;
  if (it->second != argc)
    throw ParseError(e.pos, "arity mismatch: function " + head.atom + " expects " +
                                std::to_string(it->second) + " arguments, got " +
                                std::to_string(argc));
  std::vector<Term> args;
  args.reserve(argc);
  for (size_t i = 1; i < e.items.size(); ++i)
    args.push_back(parse_term(e.items[i], sig, allow_meta));
  return Term::app(head.atom, std::move(args));
}

Proposition parse_prop(const SExpr& e, const Signature& sig, bool allow_meta) {
  if (e.is_atom) {
    if (e.atom == "false") return Proposition::bottom();
    throw ParseError(e.pos, "expected a proposition, found '" + e.atom + "'");
  }
  if (e.items.empty()) throw ParseError(e.pos, "empty proposition");
  const SExpr& head = e.items[0];
  if (!head.is_atom) throw ParseError(head.pos, "proposition head must be a symbol");
  const std::string& h = head.atom;

  auto binary = [&](const char* what) -> std::pair<Proposition, Proposition> {
    if (e.items.size() != 3)
      throw ParseError(e.pos, std::string(what) + " takes exactly two propositions");
    return {parse_prop(e.items[1], sig, allow_meta), parse_prop(e.items[2], sig, allow_meta)};
  };

  if (h == "=>") {
    auto [a, b] = binary("=>");
    return Proposition::implies(std::move(a), std::move(b));
  }
  if (h == "and") {
    auto [a, b] = binary("and");
    return Proposition::conj(std::move(a), std::move(b));
  }
  if (h == "or") {
    auto [a, b] = binary("or");
    return Proposition::disj(std::move(a), std::move(b));
  }
  if (h == "iff") {
    auto [a, b] = binary("iff");
    return Proposition::conj(Proposition::implies(a, b), Proposition::implies(b, a));
  }
  if (h == "not") {
    if (e.items.size() != 2) throw ParseError(e.pos, "not takes exactly one proposition");
    return Proposition::neg(parse_prop(e.items[1], sig, allow_meta));
  }
  if (h == "forall" || h == "exists") {
    if (e.items.size() != 3)
      throw ParseError(e.pos, h + " takes a variable and a proposition");
    std::string var = parse_var_name(e.items[1], sig);
    Proposition body = parse_prop(e.items[2], sig, allow_meta);
    return h == "forall" ? Proposition::forall(std::move(var), std::move(body))
                         : Proposition::exists(std::move(var), std::move(body));
  }

  auto it = sig.predicates.find(h);
  if (it == sig.predicates.end()) throw ParseError(head.pos, "unknown predicate symbol: " + h);
  int argc = static_cast<int>(e.items.size()) - 1;
  if (it->second != argc)
    throw ParseError(e.pos, "arity mismatch: predicate " + h + " expects " +
                                std::to_string(it->second) + " arguments, got " +
                                std::to_string(argc));
  std::vector<Term> args;
  args.reserve(argc);
  for (size_t i = 1; i < e.items.size(); ++i)
    args.push_back(parse_term(e.items[i], sig, allow_meta));
  return Proposition::atom(h, std::move(args));
}

ProofTerm parse_proofterm(const SExpr& e, const Signature& sig) {
  if (e.is_atom) throw ParseError(e.pos, "expected a proof term, found '" + e.atom + "'");
  if (e.items.empty()) throw ParseError(e.pos, "empty proof term");
  const SExpr& head = e.items[0];
  if (!head.is_atom) throw ParseError(head.pos, "proof term head must be a symbol");
  const std::string& h = head.atom;
  const SourcePos pos = e.pos;

  auto want = [&](size_t n, const char* shape) {
    if (e.items.size() != n + 1)
      throw ParseError(e.pos, std::string("malformed ") + h + ", expected " + shape);
  };
  auto binder = [&](const SExpr& x) {
    if (!x.is_atom) throw ParseError(x.pos, "expected a binder name");
    return x.atom;
  };

  if (h == "pvar") {
    want(1, "(pvar a)");
    return ProofTerm::pvar(binder(e.items[1]), pos);
  }
  if (h == "lam") {
    want(2, "(lam a pi)");
    return ProofTerm::lam(binder(e.items[1]), parse_proofterm(e.items[2], sig), pos);
  }
  if (h == "app") {
    want(2, "(app pi pi)");
    return ProofTerm::app(parse_proofterm(e.items[1], sig), parse_proofterm(e.items[2], sig),
                          pos);
  }
  if (h == "pair") {
    want(2, "(pair pi pi)");
    return ProofTerm::pair(parse_proofterm(e.items[1], sig), parse_proofterm(e.items[2], sig),
                           pos);
  }
  if (h == "fst") {
    want(1, "(fst pi)");
    return ProofTerm::fst(parse_proofterm(e.items[1], sig), pos);
  }
  if (h == "snd") {
    want(1, "(snd pi)");
    return ProofTerm::snd(parse_proofterm(e.items[1], sig), pos);
  }
  if (h == "inl") {
    want(1, "(inl pi)");
    return ProofTerm::inl(parse_proofterm(e.items[1], sig), pos);
  }
  if (h == "inr") {
    want(1, "(inr pi)");
    return ProofTerm::inr(parse_proofterm(e.items[1], sig), pos);
  }
  if (h == "case") {
    want(3, "(case pi (a pi) (b pi))");
    auto parse_branch = [&](const SExpr& br) -> std::pair<std::string, ProofTerm> {
      if (br.is_atom || br.items.size() != 2)
        throw ParseError(br.pos, "case branch must be (binder proofterm)");
      return {binder(br.items[0]), parse_proofterm(br.items[1], sig)};
    };
    auto [bl, l] = parse_branch(e.items[2]);
    auto [br, r] = parse_branch(e.items[3]);
    return ProofTerm::case_of(parse_proofterm(e.items[1], sig), bl, std::move(l), br,
                              std::move(r), pos);
  }
  if (h == "botelim") {
    want(1, "(botelim pi)");
    return ProofTerm::botelim(parse_proofterm(e.items[1], sig), pos);
  }
  if (h == "tlam") {
    want(2, "(tlam x pi)");
    std::string var = parse_var_name(e.items[1], sig);
    return ProofTerm::tlam(std::move(var), parse_proofterm(e.items[2], sig), pos);
  }
  if (h == "tapp") {
    want(2, "(tapp pi t)");
    return ProofTerm::tapp(parse_proofterm(e.items[1], sig), parse_term(e.items[2], sig), pos);
  }
  if (h == "witness") {
    want(2, "(witness t pi)");
    return ProofTerm::witness(parse_term(e.items[1], sig), parse_proofterm(e.items[2], sig),
                              pos);
  }
  if (h == "exelim") {
    want(2, "(exelim pi (x a pi))");
    const SExpr& body = e.items[2];
    if (body.is_atom || body.items.size() != 3)
      throw ParseError(body.pos, "exelim body must be (x a proofterm)");
    std::string tvar = parse_var_name(body.items[0], sig);
    return ProofTerm::exelim(parse_proofterm(e.items[1], sig), std::move(tvar),
                             binder(body.items[1]), parse_proofterm(body.items[2], sig), pos);
  }
  if (h == "em") {
    want(1, "(em prop)");
    return ProofTerm::em(parse_prop(e.items[1], sig), pos);
  }
  throw ParseError(head.pos, "unknown proof term form: " + h);
}

Term parse_term(const std::string& text, const Signature& sig, bool allow_meta) {
  return parse_term(read_sexpr(text), sig, allow_meta);
}
Proposition parse_prop(const std::string& text, const Signature& sig, bool allow_meta) {
  return parse_prop(read_sexpr(text), sig, allow_meta);
}
ProofTerm parse_proofterm(const std::string& text, const Signature& sig) {
  return parse_proofterm(read_sexpr(text), sig);
}

namespace {

RewriteRule parse_rule(const SExpr& e, const Signature& sig, const std::string& name) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom)
    throw ParseError(e.pos, "expected (term-rule lhs rhs) or (prop-rule lhs rhs)");
  const std::string& h = e.items[0].atom;
  if (e.items.size() != 3)
    throw ParseError(e.pos, h + " takes exactly a left- and a right-hand side");
  try {
    if (h == "term-rule")
      return RewriteRule::make_term(name, parse_term(e.items[1], sig, true),
                                    parse_term(e.items[2], sig, true));
    if (h == "prop-rule")
      return RewriteRule::make_prop(name, parse_prop(e.items[1], sig, true),
                                    parse_prop(e.items[2], sig, true));
  } catch (const std::runtime_error& err) {
    if (dynamic_cast<const ParseError*>(&err)) throw;
    throw ParseError(e.pos, err.what());
  }
  throw ParseError(e.items[0].pos, "unknown rule kind: " + h);
}

void expect_clause(const SExpr& e, const char* what) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom || e.items[0].atom != what)
    throw ParseError(e.pos, std::string("expected a (") + what + " ...) clause");
}

}  // namespace

Theory parse_theory(const std::string& text, const std::string& name) {
  std::vector<SExpr> top = read_sexprs(text);
  if (top.empty()) throw ParseError({1, 1}, "empty theory file");

  Theory t;
  t.name = name;

  expect_clause(top[0], "signature");
  const SExpr& sig_clause = top[0];

  // First pass: function and predicate declarations.
  for (size_t i = 1; i < sig_clause.items.size(); ++i) {
    const SExpr& d = sig_clause.items[i];
    if (d.is_atom || d.items.empty() || !d.items[0].is_atom)
      throw ParseError(d.pos, "malformed signature entry");
    const std::string& kind = d.items[0].atom;
    if (kind == "skolem") continue;
    if (kind != "fun" && kind != "pred")
      throw ParseError(d.items[0].pos, "unknown signature entry: " + kind);
    if (d.items.size() != 3 || !d.items[1].is_atom || !d.items[2].is_atom)
      throw ParseError(d.pos, "expected (" + kind + " name arity)");
    const std::string& sym = d.items[1].atom;
    if (reserved_words().count(sym))
      throw ParseError(d.items[1].pos, "reserved word declared as symbol: " + sym);
    if (sym[0] == '?') throw ParseError(d.items[1].pos, "symbol may not start with '?'");
    if (!all_digits(d.items[2].atom))
      throw ParseError(d.items[2].pos, "arity must be a natural number");
    int arity = std::stoi(d.items[2].atom);
    try {
      if (kind == "fun")
        t.signature.add_function(sym, arity);
      else
        t.signature.add_predicate(sym, arity);
    } catch (const std::runtime_error& err) {
      throw ParseError(d.pos, err.what());
    }
  }

  // Second pass: skolem tags (their bodies may mention any declared symbol).
  for (size_t i = 1; i < sig_clause.items.size(); ++i) {
    const SExpr& d = sig_clause.items[i];
    if (!d.is_atom && !d.items.empty() && d.items[0].is_atom && d.items[0].atom == "skolem") {
      if (d.items.size() != 4 || !d.items[1].is_atom)
        throw ParseError(d.pos, "expected (skolem name (vars x...) (body prop))");
      const std::string& sym = d.items[1].atom;
      const SExpr& vars_clause = d.items[2];
      const SExpr& body_clause = d.items[3];
      expect_clause(vars_clause, "vars");
      expect_clause(body_clause, "body");
      if (body_clause.items.size() != 2)
        throw ParseError(body_clause.pos, "expected (body prop)");
      SkolemTag tag;
      for (size_t k = 1; k < vars_clause.items.size(); ++k)
        tag.vars.push_back(parse_var_name(vars_clause.items[k], t.signature));
      tag.body = parse_prop(body_clause.items[1], t.signature);
      t.signature.skolem_tags.emplace(sym, std::move(tag));
    }
  }

  size_t next = 1;
  if (next < top.size() && !top[next].is_atom && !top[next].items.empty() &&
      top[next].items[0].is_atom && top[next].items[0].atom == "rules") {
    int counter = 0;
    for (size_t i = 1; i < top[next].items.size(); ++i)
      t.rules.add(parse_rule(top[next].items[i], t.signature, "r" + std::to_string(++counter)));
    ++next;
  }
  if (next < top.size() && !top[next].is_atom && !top[next].items.empty() &&
      top[next].items[0].is_atom && top[next].items[0].atom == "axioms") {
    for (size_t i = 1; i < top[next].items.size(); ++i) {
      const SExpr& ax = top[next].items[i];
      if (ax.is_atom || ax.items.size() != 3 || !ax.items[0].is_atom ||
          ax.items[0].atom != "ax" || !ax.items[1].is_atom)
        throw ParseError(ax.pos, "expected (ax name prop)");
      if (t.axioms.count(ax.items[1].atom))
        throw ParseError(ax.items[1].pos, "duplicate axiom name: " + ax.items[1].atom);
      t.axioms.emplace(ax.items[1].atom, parse_prop(ax.items[2], t.signature));
    }
    ++next;
  }
  if (next < top.size())
    throw ParseError(top[next].pos, "unexpected clause after the theory definition");

  try {
    t.validate();
  } catch (const std::runtime_error& err) {
    if (dynamic_cast<const ParseError*>(&err)) throw;
    throw ParseError({1, 1}, err.what());
  }
  return t;
}

ProofObject parse_proof_object(const std::string& text, const Signature& sig) {
  SExpr e = read_sexpr(text);
  if (e.is_atom || e.items.size() != 4 || !e.items[0].is_atom || e.items[0].atom != "proof" ||
      !e.items[1].is_atom)
    throw ParseError(e.pos, "expected (proof name (goal prop) (term proofterm))");
  expect_clause(e.items[2], "goal");
  expect_clause(e.items[3], "term");
  if (e.items[2].items.size() != 2) throw ParseError(e.items[2].pos, "expected (goal prop)");
  if (e.items[3].items.size() != 2)
    throw ParseError(e.items[3].pos, "expected (term proofterm)");
  ProofObject p;
  p.name = e.items[1].atom;
  p.goal = parse_prop(e.items[2].items[1], sig);
  p.term = parse_proofterm(e.items[3].items[1], sig);
  return p;
}

}  // namespace demod
