#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "gqe/term.hpp"

namespace gqe {

enum class FormulaKind { Atom, Top, Bottom, Not, And, Or, Implies, Iff, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Binder variable ids are unique per tree
// (the parser and all transformations maintain this).
struct Formula {
  FormulaKind kind;
  Atom atom;                        // Atom only
  std::vector<FormulaPtr> children;  // Not: 1, Implies/Iff: 2, And/Or: n, quantifiers: 1
  std::vector<int> vars;             // quantifiers only
};

inline FormulaPtr mk_atom(Atom a) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atom;
  f->atom = std::move(a);
  return f;
}

inline FormulaPtr mk_const(bool top) {
  auto f = std::make_shared<Formula>();
  f->kind = top ? FormulaKind::Top : FormulaKind::Bottom;
  return f;
}

inline FormulaPtr mk_not(FormulaPtr c) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->children = {std::move(c)};
  return f;
}

inline FormulaPtr mk_nary(FormulaKind kind, std::vector<FormulaPtr> cs) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->children = std::move(cs);
  return f;
}

inline FormulaPtr mk_and(std::vector<FormulaPtr> cs) { return mk_nary(FormulaKind::And, std::move(cs)); }
inline FormulaPtr mk_or(std::vector<FormulaPtr> cs) { return mk_nary(FormulaKind::Or, std::move(cs)); }

inline FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return mk_nary(FormulaKind::Implies, {std::move(a), std::move(b)});
}

inline FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  return mk_nary(FormulaKind::Iff, {std::move(a), std::move(b)});
}

inline FormulaPtr mk_quant(FormulaKind kind, std::vector<int> vars, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->vars = std::move(vars);
  f->children = {std::move(body)};
  return f;
}

inline FormulaPtr mk_forall(std::vector<int> vars, FormulaPtr body) {
  return mk_quant(FormulaKind::Forall, std::move(vars), std::move(body));
}
inline FormulaPtr mk_exists(std::vector<int> vars, FormulaPtr body) {
  return mk_quant(FormulaKind::Exists, std::move(vars), std::move(body));
}

namespace detail {
inline void free_vars_rec(const FormulaPtr& f, std::vector<int>& bound, std::vector<int>& out) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      std::vector<int> vs;
      collect_vars(f->atom, vs);
      for (int v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.push_back(v);
      break;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      size_t n = bound.size();
      for (int v : f->vars) bound.push_back(v);
      free_vars_rec(f->children[0], bound, out);
      bound.resize(n);
      break;
    }
    default:
      for (const FormulaPtr& c : f->children) free_vars_rec(c, bound, out);
  }
}
}  // namespace detail

// Free variables in first-occurrence order.
inline std::vector<int> free_vars(const FormulaPtr& f) {
  std::vector<int> bound, raw, out;
  detail::free_vars_rec(f, bound, raw);
  for (int v : raw)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

inline bool has_functions(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Atom) {
    for (const Term& t : f->atom.args)
      if (t.is_compound()) return true;
    return false;
  }
  for (const FormulaPtr& c : f->children)
    if (has_functions(c)) return true;
  return false;
}

inline std::string to_string(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case FormulaKind::Atom: return to_string(f->atom, sig);
    case FormulaKind::Top: return "true";
    case FormulaKind::Bottom: return "false";
    case FormulaKind::Not: return "~" + to_string(f->children[0], sig);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      const char* op = f->kind == FormulaKind::And       ? " & "
                       : f->kind == FormulaKind::Or      ? " | "
                       : f->kind == FormulaKind::Implies ? " -> "
                                                         : " <-> ";
      std::string s = "(";
      for (size_t i = 0; i < f->children.size(); ++i) {
        if (i) s += op;
        s += to_string(f->children[i], sig);
      }
      return s + ")";
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string s = f->kind == FormulaKind::Forall ? "forall " : "exists ";
      for (size_t i = 0; i < f->vars.size(); ++i) {
        if (i) s += ' ';
        s += "X" + std::to_string(f->vars[i]);
      }
      return s + " (" + to_string(f->children[0], sig) + ")";
    }
  }
  return "?";
}

inline void and_flatten(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FormulaKind::And)
    for (const FormulaPtr& c : f->children) and_flatten(c, out);
  else
    out.push_back(f);
}

inline void or_flatten(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FormulaKind::Or)
    for (const FormulaPtr& c : f->children) or_flatten(c, out);
  else
    out.push_back(f);
}

}  // namespace gqe
