#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gqe/formula.hpp"
#include "gqe/term.hpp"

// Problem file syntax. Four section headers, each introducing a run of
// period-terminated items:
//
//   theory.   formulas, free variables universally closed
//   query.    formulas, free variables existentially closed
//   data.     ground atoms
//   clauses.  literal disjunctions `l1 | l2 | ...` with `~` negation,
//             `false` for the empty clause
//
// Connectives ~ & | -> <-> bind in that order; -> associates right.
// Quantifiers `forall X,Y . F` and `exists X . F` extend as far right as
// possible. Identifiers starting with an upper-case letter are variables,
// all others are predicate, constant or function symbols by position.
// `%` starts a line comment. theory, query, data, clauses, forall, exists,
// true and false are reserved.

namespace gqe {

struct ParseError : InputError {
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                   msg),
        line(line),
        col(col) {}
};

struct ProblemFile {
  Signature sig;
  std::vector<FormulaPtr> theory;
  std::vector<FormulaPtr> queries;
  std::vector<Atom> data;
  std::vector<Clause> clauses;
};

namespace parse_detail {

struct Token {
  enum Kind { Ident, Var, LPar, RPar, Comma, Dot, Tilde, Amp, Bar, Arrow, Iff, Eof } kind;
  std::string text;
  int line = 1, col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.text = src.substr(i, j - i);
      t.kind = std::isupper(static_cast<unsigned char>(c)) ? Token::Var : Token::Ident;
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '(': t.kind = Token::LPar; bump(1); break;
      case ')': t.kind = Token::RPar; bump(1); break;
      case ',': t.kind = Token::Comma; bump(1); break;
      case '.': t.kind = Token::Dot; bump(1); break;
      case '~': t.kind = Token::Tilde; bump(1); break;
      case '&': t.kind = Token::Amp; bump(1); break;
      case '|': t.kind = Token::Bar; bump(1); break;
      case '-':
        if (i + 1 >= src.size() || src[i + 1] != '>') throw ParseError("expected '->'", line, col);
        t.kind = Token::Arrow;
        bump(2);
        break;
      case '<':
        if (i + 2 >= src.size() || src[i + 1] != '-' || src[i + 2] != '>')
          throw ParseError("expected '<->'", line, col);
        t.kind = Token::Iff;
        bump(3);
        break;
      default:
        throw ParseError(std::string("stray character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = Token::Eof;
  eof.line = line;
  eof.col = col;
  out.push_back(std::move(eof));
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ProblemFile parse() {
    ProblemFile pf;
    enum { None, Theory, Query, Data, Clauses } section = None;
    while (peek().kind != Token::Eof) {
      if (peek().kind == Token::Ident && toks_[pos_ + 1].kind == Token::Dot) {
        const std::string& w = peek().text;
        if (w == "theory" || w == "query" || w == "data" || w == "clauses") {
          section = w == "theory" ? Theory : w == "query" ? Query : w == "data" ? Data : Clauses;
          pos_ += 2;
          continue;
        }
      }
      switch (section) {
        case None:
          throw ParseError("expected a section header: theory., query., data. or clauses.",
                           peek().line, peek().col);
        case Theory:
        case Query: {
          next_var_ = 0;
          free_.clear();
          FormulaPtr f = parse_formula(pf.sig);
          expect(Token::Dot, "'.' after formula");
          std::vector<int> fv;
          for (auto& [name, id] : free_) fv.push_back(id);
          if (!fv.empty()) f = mk_quant(section == Theory ? FormulaKind::Forall : FormulaKind::Exists, fv, f);
          (section == Theory ? pf.theory : pf.queries).push_back(std::move(f));
          break;
        }
        case Data: {
          Atom a = parse_atom(pf.sig, true);
          expect(Token::Dot, "'.' after atom");
          pf.data.push_back(std::move(a));
          break;
        }
        case Clauses: {
          pf.clauses.push_back(parse_clause(pf.sig));
          break;
        }
      }
    }
    return pf;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int next_var_ = 0;
  std::vector<std::pair<std::string, int>> free_;
  std::vector<std::vector<std::pair<std::string, int>>> scopes_;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().line, peek().col);
    ++pos_;
  }

  static bool reserved(const std::string& w) {
    return w == "true" || w == "false" || w == "forall" || w == "exists";
  }

  int var_id(const std::string& name) {
    for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s)
      for (auto e = s->rbegin(); e != s->rend(); ++e)
        if (e->first == name) return e->second;
    for (auto& [n, id] : free_)
      if (n == name) return id;
    free_.emplace_back(name, next_var_++);
    return free_.back().second;
  }

  template <class F>
  SymbolId intern_at(const Token& t, F&& f) {
    try {
      return f();
    } catch (const InputError& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
  }

  Term parse_term(Signature& sig, bool ground) {
    Token t = take();
    if (t.kind == Token::Var) {
      if (ground) throw ParseError("variable '" + t.text + "' in a ground atom", t.line, t.col);
      return Term::var(var_id(t.text));
    }
    if (t.kind != Token::Ident) throw ParseError("expected a term", t.line, t.col);
    if (reserved(t.text)) throw ParseError("reserved word '" + t.text + "'", t.line, t.col);
    if (peek().kind != Token::LPar)
      return Term::constant(intern_at(t, [&] { return sig.constant(t.text); }));
    ++pos_;
    std::vector<Term> args;
    args.push_back(parse_term(sig, ground));
    while (peek().kind == Token::Comma) {
      ++pos_;
      args.push_back(parse_term(sig, ground));
    }
    expect(Token::RPar, "')'");
    SymbolId f = intern_at(t, [&] { return sig.function(t.text, static_cast<int>(args.size())); });
    return Term::fun(f, std::move(args));
  }

  Atom parse_atom(Signature& sig, bool ground) {
    Token t = take();
    if (t.kind != Token::Ident)
      throw ParseError("expected a predicate symbol", t.line, t.col);
    if (reserved(t.text)) throw ParseError("reserved word '" + t.text + "'", t.line, t.col);
    Atom a;
    std::vector<Term> args;
    if (peek().kind == Token::LPar) {
      ++pos_;
      args.push_back(parse_term(sig, ground));
      while (peek().kind == Token::Comma) {
        ++pos_;
        args.push_back(parse_term(sig, ground));
      }
      expect(Token::RPar, "')'");
    }
    a.pred = intern_at(t, [&] { return sig.predicate(t.text, static_cast<int>(args.size())); });
    a.args = std::move(args);
    return a;
  }

  FormulaPtr parse_formula(Signature& sig) { return parse_iff(sig); }

  FormulaPtr parse_iff(Signature& sig) {
    FormulaPtr a = parse_impl(sig);
    while (peek().kind == Token::Iff) {
      ++pos_;
      a = mk_iff(std::move(a), parse_impl(sig));
    }
    return a;
  }

  FormulaPtr parse_impl(Signature& sig) {
    FormulaPtr a = parse_or(sig);
    if (peek().kind == Token::Arrow) {
      ++pos_;
      return mk_implies(std::move(a), parse_impl(sig));
    }
    return a;
  }

  FormulaPtr parse_or(Signature& sig) {
    std::vector<FormulaPtr> parts{parse_and(sig)};
    while (peek().kind == Token::Bar) {
      ++pos_;
      parts.push_back(parse_and(sig));
    }
    return parts.size() == 1 ? parts[0] : mk_or(std::move(parts));
  }

  FormulaPtr parse_and(Signature& sig) {
    std::vector<FormulaPtr> parts{parse_unary(sig)};
    while (peek().kind == Token::Amp) {
      ++pos_;
      parts.push_back(parse_unary(sig));
    }
    return parts.size() == 1 ? parts[0] : mk_and(std::move(parts));
  }

  FormulaPtr parse_unary(Signature& sig) {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Tilde:
        ++pos_;
        return mk_not(parse_unary(sig));
      case Token::LPar: {
        ++pos_;
        FormulaPtr f = parse_iff(sig);
        expect(Token::RPar, "')'");
        return f;
      }
      case Token::Ident: {
        if (t.text == "true" || t.text == "false") {
          ++pos_;
          return mk_const(t.text == "true");
        }
        if (t.text == "forall" || t.text == "exists") {
          bool univ = t.text == "forall";
          ++pos_;
          std::vector<std::pair<std::string, int>> scope;
          std::vector<int> ids;
          for (;;) {
            Token v = take();
            if (v.kind != Token::Var)
              throw ParseError("expected a variable after quantifier", v.line, v.col);
            scope.emplace_back(v.text, next_var_);
            ids.push_back(next_var_++);
            if (peek().kind != Token::Comma) break;
            ++pos_;
          }
          expect(Token::Dot, "'.' after quantified variables");
          scopes_.push_back(std::move(scope));
          FormulaPtr body = parse_iff(sig);
          scopes_.pop_back();
          return mk_quant(univ ? FormulaKind::Forall : FormulaKind::Exists, std::move(ids),
                          std::move(body));
        }
        return mk_atom(parse_atom(sig, false));
      }
      default:
        throw ParseError("expected a formula", t.line, t.col);
    }
  }

  Clause parse_clause(Signature& sig) {
    next_var_ = 0;
    free_.clear();
    Clause c;
    if (peek().kind == Token::Ident && peek().text == "false" &&
        toks_[pos_ + 1].kind == Token::Dot) {
      pos_ += 2;
      return c;
    }
    for (;;) {
      bool positive = true;
      if (peek().kind == Token::Tilde) {
        ++pos_;
        positive = false;
      }
      c.lits.push_back({positive, parse_atom(sig, false)});
      if (peek().kind != Token::Bar) break;
      ++pos_;
    }
    expect(Token::Dot, "'.' after clause");
    return c;
  }
};

}  // namespace parse_detail

inline ProblemFile parse_problem(const std::string& text) {
  return parse_detail::Parser(text).parse();
}

// Grammar-conforming printer; parsing its output reproduces the same text.
inline std::string print_formula(const FormulaPtr& f, const Signature& sig) {
  // Binding strength viewed from the parent; quantifiers reach right as far
  // as possible, so they are as weak as the weakest operator.
  auto level = [](const FormulaPtr& g) {
    switch (g->kind) {
      case FormulaKind::Iff: return 0;
      case FormulaKind::Forall:
      case FormulaKind::Exists: return 0;
      case FormulaKind::Implies: return 1;
      case FormulaKind::Or: return 2;
      case FormulaKind::And: return 3;
      case FormulaKind::Not: return 4;
      default: return 5;
    }
  };
  std::function<std::string(const FormulaPtr&, int)> go = [&](const FormulaPtr& g,
                                                              int need) -> std::string {
    std::string s;
    switch (g->kind) {
      case FormulaKind::Atom: s = to_string(g->atom, sig); break;
      case FormulaKind::Top: s = "true"; break;
      case FormulaKind::Bottom: s = "false"; break;
      case FormulaKind::Not: s = "~" + go(g->children[0], 4); break;
      case FormulaKind::And:
      case FormulaKind::Or: {
        const char* op = g->kind == FormulaKind::And ? " & " : " | ";
        int sub = g->kind == FormulaKind::And ? 4 : 3;
        for (size_t i = 0; i < g->children.size(); ++i) {
          if (i) s += op;
          s += go(g->children[i], sub);
        }
        break;
      }
      case FormulaKind::Implies:
        s = go(g->children[0], 2) + " -> " + go(g->children[1], 1);
        break;
      case FormulaKind::Iff:
        s = go(g->children[0], 1) + " <-> " + go(g->children[1], 1);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        s = g->kind == FormulaKind::Forall ? "forall " : "exists ";
        for (size_t i = 0; i < g->vars.size(); ++i) {
          if (i) s += ',';
          s += "X" + std::to_string(g->vars[i]);
        }
        s += " . " + go(g->children[0], 0);
        break;
      }
    }
    return level(g) < need ? "(" + s + ")" : s;
  };
  return go(f, 0);
}

inline std::string print_clause_item(const Clause& c, const Signature& sig) {
  if (c.lits.empty()) return "false";
  std::string s;
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += " | ";
    if (!c.lits[i].positive) s += '~';
    s += to_string(c.lits[i].atom, sig);
  }
  return s;
}

inline std::string print_problem(const ProblemFile& pf) {
  std::string s;
  if (!pf.theory.empty()) {
    s += "theory.\n";
    for (const FormulaPtr& f : pf.theory) s += print_formula(f, pf.sig) + ".\n";
  }
  if (!pf.queries.empty()) {
    s += "query.\n";
    for (const FormulaPtr& f : pf.queries) s += print_formula(f, pf.sig) + ".\n";
  }
  if (!pf.data.empty()) {
    s += "data.\n";
    for (const Atom& a : pf.data) s += to_string(a, pf.sig) + ".\n";
  }
  if (!pf.clauses.empty()) {
    s += "clauses.\n";
    for (const Clause& c : pf.clauses) s += print_clause_item(c, pf.sig) + ".\n";
  }
  return s;
}

}  // namespace gqe
