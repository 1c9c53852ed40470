#pragma once

#include <random>
#include <vector>

#include "gqe/subst.hpp"
#include "gqe/symbols.hpp"
#include "gqe/term.hpp"

namespace gqe::testgen {

struct TermPool {
  Signature* sig = nullptr;
  std::vector<SymbolId> constants;
  std::vector<SymbolId> functions;  // mixed arities
  std::vector<SymbolId> predicates;
  int num_vars = 4;
};

inline TermPool make_pool(Signature& sig) {
  TermPool p;
  p.sig = &sig;
  p.constants = {sig.constant("a"), sig.constant("b"), sig.constant("c")};
  p.functions = {sig.function("f", 1), sig.function("g", 1), sig.function("h", 2)};
  p.predicates = {sig.predicate("P", 1), sig.predicate("Q", 2), sig.predicate("R", 3)};
  return p;
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

inline Term random_term(std::mt19937& rng, const TermPool& p, int depth, bool ground = false) {
  int hi = depth > 0 ? 2 : 1;
  int k = std::uniform_int_distribution<int>(0, hi)(rng);
  if (k == 0 && !ground)
    return Term::var(std::uniform_int_distribution<int>(0, p.num_vars - 1)(rng));
  if (k <= 1) return Term::constant(pick(rng, p.constants));
  SymbolId f = pick(rng, p.functions);
  std::vector<Term> args;
  for (int i = 0; i < p.sig->arity(f); ++i) args.push_back(random_term(rng, p, depth - 1, ground));
  return Term::fun(f, std::move(args));
}

inline Atom random_atom(std::mt19937& rng, const TermPool& p, int depth, bool ground = false) {
  SymbolId pr = pick(rng, p.predicates);
  Atom a;
  a.pred = pr;
  for (int i = 0; i < p.sig->arity(pr); ++i) a.args.push_back(random_term(rng, p, depth, ground));
  return a;
}

// Function-free atom over a small shared variable space.
inline Atom random_flat_atom(std::mt19937& rng, const TermPool& p, bool ground = false) {
  SymbolId pr = pick(rng, p.predicates);
  Atom a;
  a.pred = pr;
  for (int i = 0; i < p.sig->arity(pr); ++i) {
    if (!ground && std::uniform_int_distribution<int>(0, 1)(rng) == 0)
      a.args.push_back(Term::var(std::uniform_int_distribution<int>(0, p.num_vars - 1)(rng)));
    else
      a.args.push_back(Term::constant(pick(rng, p.constants)));
  }
  return a;
}

}  // namespace gqe::testgen
