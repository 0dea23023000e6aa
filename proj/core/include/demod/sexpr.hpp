#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace demod {

// Source position, 1-based. line == 0 means "unknown" (value built in code).
struct SourcePos {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
  std::string str() const;
};

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(SourcePos p, const std::string& msg)
      : std::runtime_error(p.str() + ": " + msg), pos(p) {}
};

// Generic s-expression: an atom token or a list. All concrete formats
// (terms, propositions, proof terms, theory files) elaborate from this.
struct SExpr {
  bool is_atom = true;
  std::string atom;          // valid when is_atom
  std::vector<SExpr> items;  // valid when !is_atom
  SourcePos pos;

  static SExpr make_atom(std::string s, SourcePos p = {});
  static SExpr make_list(std::vector<SExpr> xs, SourcePos p = {});

  bool is_list() const { return !is_atom; }
  std::string str() const;  // canonical single-line form
};

// Reads every top-level s-expression in `text`. Atoms are maximal runs of
// characters outside whitespace, parens and ';'. A ';' starts a comment
// running to end of line. Throws ParseError on unbalanced input.
std::vector<SExpr> read_sexprs(const std::string& text);

// Reads exactly one s-expression (trailing whitespace/comments allowed).
SExpr read_sexpr(const std::string& text);

}  // namespace demod
