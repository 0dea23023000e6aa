#include "demod/sexpr.hpp"

#include <cctype>

namespace demod {

std::string SourcePos::str() const {
  if (!known()) return "<input>";
  return std::to_string(line) + ":" + std::to_string(col);
}

SExpr SExpr::make_atom(std::string s, SourcePos p) {
  SExpr e;
  e.is_atom = true;
  e.atom = std::move(s);
  e.pos = p;
  return e;
}

SExpr SExpr::make_list(std::vector<SExpr> xs, SourcePos p) {
  SExpr e;
  e.is_atom = false;
  e.items = std::move(xs);
  e.pos = p;
  return e;
}

std::string SExpr::str() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  out += ')';
  return out;
}

namespace {

struct Reader {
  const std::string& text;
  size_t i = 0;
  int line = 1, col = 1;

  explicit Reader(const std::string& t) : text(t) {}

  bool eof() const { return i >= text.size(); }
  char peek() const { return text[i]; }

  SourcePos here() const { return {line, col}; }

  void advance() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
  }

  SExpr read() {
    skip_ws();
    if (eof()) throw ParseError(here(), "unexpected end of input");
    SourcePos p = here();
    char c = peek();
    if (c == ')') throw ParseError(p, "unexpected ')'");
    if (c == '(') {
      advance();
      std::vector<SExpr> items;
      for (;;) {
        skip_ws();
        if (eof()) throw ParseError(p, "unterminated '('");
        if (peek() == ')') {
          advance();
          break;
        }
        items.push_back(read());
      }
      return SExpr::make_list(std::move(items), p);
    }
    std::string tok;
    while (!eof() && atom_char(peek())) {
      tok += peek();
      advance();
    }
    if (tok.empty()) throw ParseError(p, "empty token");
    return SExpr::make_atom(std::move(tok), p);
  }
};

}  // namespace

std::vector<SExpr> read_sexprs(const std::string& text) {
  Reader r(text);
  std::vector<SExpr> out;
  for (;;) {
    r.skip_ws();
    if (r.eof()) break;
    out.push_back(r.read());
  }
  return out;
}

SExpr read_sexpr(const std::string& text) {
  Reader r(text);
  SExpr e = r.read();
  r.skip_ws();
  if (!r.eof()) throw ParseError(r.here(), "trailing input after s-expression");
  return e;
}

}  // namespace demod
