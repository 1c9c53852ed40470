#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "gqe/clausify.hpp"
#include "gqe/formula.hpp"
#include "gqe/term.hpp"

namespace gqe {

namespace detail {

// Union-find over literal indices, used to group literals that must stay
// under one existential block because they share a compound term.
struct uf {
  std::vector<int> p;
  explicit uf(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

using term_map = std::vector<std::pair<Term, int>>;

inline Term abstract_term(const Term& t, const term_map& repl) {
  for (const auto& [from, v] : repl)
    if (from == t) return Term::var(v);
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(abstract_term(a, repl));
  return Term::fun(t.sym(), std::move(args));
}

// Skolem constants anywhere in t, skipping subterms already mapped whole.
inline void collect_skolem_constants(const Term& t, const Signature& sig,
                                     const term_map& repl, std::vector<Term>& out) {
  for (const auto& [from, v] : repl)
    if (from == t) return;
  if (t.is_constant()) {
    if (sig[t.sym()].is_skolem && std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
  } else if (t.is_compound()) {
    for (const Term& a : t.args()) collect_skolem_constants(a, sig, repl, out);
  }
}

inline FormulaPtr literal_formula(const Literal& l, const term_map& repl) {
  Atom a = l.atom;
  for (Term& t : a.args) t = abstract_term(t, repl);
  FormulaPtr f = mk_atom(a);
  return l.positive ? f : mk_not(f);
}

inline FormulaPtr one_or(std::vector<FormulaPtr> fs) {
  return fs.size() == 1 ? fs[0] : mk_or(std::move(fs));
}

}  // namespace detail

// Turns a clause back into the universally closed sentence it stands for,
// replacing each variable-bearing compound term by a fresh existentially
// quantified variable.  Literals that share a compound term are kept under
// a single existential block; the blocks of unrelated literals distribute
// over the disjunction.  Skolem constants depend on nothing and lift to one
// existential block outside the universal closure, wherever they occur.
// Other ground terms are ordinary terms and stay.
//
// Compound terms with variables must be non-nested and must carry exactly
// the clause's variables, which the saturation closure guarantees; anything
// else is rejected.
inline FormulaPtr unskolemise_clause(const Clause& c, const Signature& sig) {
  if (c.lits.empty()) return mk_const(false);

  std::vector<int> cvars = clause_vars(c);

  // Distinct variable-bearing compound terms, in first-occurrence order.
  std::vector<Term> comps;
  std::vector<std::vector<size_t>> lit_comps(c.lits.size());
  for (size_t i = 0; i < c.lits.size(); ++i) {
    for (const Term& t : c.lits[i].atom.args) {
      if (!t.is_compound()) continue;
      std::vector<int> tv = term_vars(t);
      if (tv.empty()) continue;
      for (const Term& a : t.args())
        if (a.is_compound())
          throw InputError("cannot rewrite nested compound term " + to_string(t, sig));
      if (tv != cvars)
        throw InputError("cannot rewrite non-covering compound term " + to_string(t, sig));
      size_t k = 0;
      while (k < comps.size() && !(comps[k] == t)) ++k;
      if (k == comps.size()) comps.push_back(t);
      if (std::find(lit_comps[i].begin(), lit_comps[i].end(), k) == lit_comps[i].end())
        lit_comps[i].push_back(k);
    }
  }

  int next_var = cvars.empty() ? 0 : cvars.back() + 1;
  detail::term_map repl;
  for (const Term& t : comps) repl.emplace_back(t, next_var++);

  std::vector<int> outer;
  {
    std::vector<Term> sks;
    for (const Literal& l : c.lits)
      for (const Term& t : l.atom.args)
        detail::collect_skolem_constants(t, sig, repl, sks);
    for (const Term& t : sks) {
      repl.emplace_back(t, next_var);
      outer.push_back(next_var++);
    }
  }

  // Group literals connected through shared compound terms.
  detail::uf groups(c.lits.size());
  std::vector<int> owner(comps.size(), -1);
  for (size_t i = 0; i < c.lits.size(); ++i)
    for (size_t k : lit_comps[i]) {
      if (owner[k] < 0)
        owner[k] = static_cast<int>(i);
      else
        groups.join(owner[k], static_cast<int>(i));
    }

  std::vector<FormulaPtr> disjuncts;
  std::vector<char> done(c.lits.size(), 0);
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (done[i]) continue;
    if (lit_comps[i].empty()) {
      done[i] = 1;
      disjuncts.push_back(detail::literal_formula(c.lits[i], repl));
      continue;
    }
    std::vector<FormulaPtr> members;
    std::vector<int> bound;
    for (size_t j = i; j < c.lits.size(); ++j) {
      if (done[j] || groups.find(static_cast<int>(j)) != groups.find(static_cast<int>(i)))
        continue;
      done[j] = 1;
      members.push_back(detail::literal_formula(c.lits[j], repl));
      for (size_t k : lit_comps[j]) {
        int v = repl[k].second;
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
      }
    }
    std::sort(bound.begin(), bound.end());
    disjuncts.push_back(mk_exists(bound, detail::one_or(std::move(members))));
  }

  FormulaPtr body = detail::one_or(std::move(disjuncts));
  if (!cvars.empty()) body = mk_forall(cvars, body);
  return outer.empty() ? body : mk_exists(outer, body);
}

// Rewrites a saturated clause set into first-order sentences: each clause is
// unskolemised and negated, so the result reads as a union of queries.  The
// set is unsatisfiable together with ground data exactly when some returned
// sentence holds in that data.
inline std::vector<FormulaPtr> unskolemise_rewrite(const std::vector<Clause>& s,
                                                   const Signature& sig) {
  std::vector<FormulaPtr> out;
  out.reserve(s.size());
  for (const Clause& c : s) out.push_back(detail::nnf(unskolemise_clause(c, sig), false));
  return out;
}

}  // namespace gqe
