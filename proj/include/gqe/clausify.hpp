#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

#include "gqe/formula.hpp"
#include "gqe/guardedness.hpp"
#include "gqe/subst.hpp"

namespace gqe {

struct ClausifyResult {
  std::vector<Clause> clauses;
  int definers_introduced = 0;
  int universal_subformulas = 0;
};

namespace detail {

inline FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Not: {
      FormulaPtr c = simplify(f->children[0]);
      if (c->kind == FormulaKind::Top) return mk_const(false);
      if (c->kind == FormulaKind::Bottom) return mk_const(true);
      return mk_not(c);
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool is_and = f->kind == FormulaKind::And;
      std::vector<FormulaPtr> kept;
      for (const FormulaPtr& ch : f->children) {
        FormulaPtr c = simplify(ch);
        if (c->kind == f->kind) {
          for (const FormulaPtr& cc : c->children) kept.push_back(cc);
          continue;
        }
        if (c->kind == FormulaKind::Top) {
          if (!is_and) return mk_const(true);
          continue;
        }
        if (c->kind == FormulaKind::Bottom) {
          if (is_and) return mk_const(false);
          continue;
        }
        kept.push_back(c);
      }
      if (kept.empty()) return mk_const(is_and);
      if (kept.size() == 1) return kept[0];
      return mk_nary(f->kind, std::move(kept));
    }
    case FormulaKind::Implies: {
      FormulaPtr a = simplify(f->children[0]);
      FormulaPtr b = simplify(f->children[1]);
      if (a->kind == FormulaKind::Bottom || b->kind == FormulaKind::Top) return mk_const(true);
      if (a->kind == FormulaKind::Top) return b;
      if (b->kind == FormulaKind::Bottom) return simplify(mk_not(a));
      return mk_implies(a, b);
    }
    case FormulaKind::Iff: {
      FormulaPtr a = simplify(f->children[0]);
      FormulaPtr b = simplify(f->children[1]);
      if (a->kind == FormulaKind::Top) return b;
      if (b->kind == FormulaKind::Top) return a;
      if (a->kind == FormulaKind::Bottom) return simplify(mk_not(b));
      if (b->kind == FormulaKind::Bottom) return simplify(mk_not(a));
      return mk_iff(a, b);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      FormulaPtr c = simplify(f->children[0]);
      if (c->kind == FormulaKind::Top || c->kind == FormulaKind::Bottom) return c;
      return mk_quant(f->kind, f->vars, c);
    }
  }
  return f;
}

inline FormulaPtr nnf(const FormulaPtr& f, bool pos) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return pos ? f : mk_not(f);
    case FormulaKind::Top:
      return mk_const(pos);
    case FormulaKind::Bottom:
      return mk_const(!pos);
    case FormulaKind::Not:
      return nnf(f->children[0], !pos);
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool keep = (f->kind == FormulaKind::And) == pos;
      std::vector<FormulaPtr> cs;
      for (const FormulaPtr& c : f->children) cs.push_back(nnf(c, pos));
      return mk_nary(keep ? FormulaKind::And : FormulaKind::Or, std::move(cs));
    }
    case FormulaKind::Implies: {
      if (pos) return mk_or({nnf(f->children[0], false), nnf(f->children[1], true)});
      return mk_and({nnf(f->children[0], true), nnf(f->children[1], false)});
    }
    case FormulaKind::Iff: {
      const FormulaPtr& a = f->children[0];
      const FormulaPtr& b = f->children[1];
      if (pos)
        return mk_and({mk_or({nnf(a, false), nnf(b, true)}), mk_or({nnf(b, false), nnf(a, true)})});
      return mk_or({mk_and({nnf(a, true), nnf(b, false)}), mk_and({nnf(b, true), nnf(a, false)})});
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool univ = (f->kind == FormulaKind::Forall) == pos;
      return mk_quant(univ ? FormulaKind::Forall : FormulaKind::Exists, f->vars,
                      nnf(f->children[0], pos));
    }
  }
  return f;
}

inline int count_universals(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Forall) {
    std::vector<int> vs;
    FormulaPtr inner = merge_chain(f, vs);
    return 1 + count_universals(inner);
  }
  int n = 0;
  for (const FormulaPtr& c : f->children) n += count_universals(c);
  return n;
}

inline FormulaPtr subst_formula(const FormulaPtr& f, const VarMap& m) {
  if (m.empty()) return f;
  switch (f->kind) {
    case FormulaKind::Atom:
      return mk_atom(apply_map(f->atom, m));
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      VarMap inner = m;
      for (int v : f->vars) inner.erase(v);
      return mk_quant(f->kind, f->vars, subst_formula(f->children[0], inner));
    }
    default: {
      auto g = std::make_shared<Formula>(*f);
      for (FormulaPtr& c : g->children) c = subst_formula(c, m);
      return g;
    }
  }
}

// Replaces every universal subformula below the root prefix by a definer
// atom over its free variables and queues the defining formula, whose root
// prefix absorbs the replaced quantifier.
inline FormulaPtr rename_universals(const FormulaPtr& f, Signature& sig,
                                    std::deque<FormulaPtr>& queue, int& definers) {
  switch (f->kind) {
    case FormulaKind::Forall: {
      std::vector<int> zs;
      FormulaPtr inner = merge_chain(f, zs);
      std::vector<int> ys = free_vars(f);
      SymbolId d = sig.fresh_definer(static_cast<int>(ys.size()));
      ++definers;
      Atom da;
      da.pred = d;
      for (int y : ys) da.args.push_back(Term::var(y));
      FormulaPtr body =
          mk_or({mk_not(mk_atom(da)), rename_universals(inner, sig, queue, definers)});
      std::vector<int> prefix = ys;
      prefix.insert(prefix.end(), zs.begin(), zs.end());
      queue.push_back(prefix.empty() ? body : mk_forall(std::move(prefix), body));
      return mk_atom(da);
    }
    case FormulaKind::Exists:
      return mk_exists(f->vars, rename_universals(f->children[0], sig, queue, definers));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const FormulaPtr& c : f->children)
        cs.push_back(rename_universals(c, sig, queue, definers));
      return mk_nary(f->kind, std::move(cs));
    }
    default:
      return f;
  }
}

// The remaining quantifiers are existential; each variable is replaced by a
// Skolem term over the full root universal prefix.
inline FormulaPtr skolemize(const FormulaPtr& f, const std::vector<int>& prefix,
                            Signature& sig) {
  switch (f->kind) {
    case FormulaKind::Exists: {
      VarMap m;
      for (int u : f->vars) {
        SymbolId sk = sig.fresh_skolem(static_cast<int>(prefix.size()));
        if (prefix.empty()) {
          m.emplace(u, Term::constant(sk));
        } else {
          std::vector<Term> args;
          for (int x : prefix) args.push_back(Term::var(x));
          m.emplace(u, Term::fun(sk, std::move(args)));
        }
      }
      return skolemize(subst_formula(f->children[0], m), prefix, sig);
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const FormulaPtr& c : f->children) cs.push_back(skolemize(c, prefix, sig));
      return mk_nary(f->kind, std::move(cs));
    }
    case FormulaKind::Forall:
      throw std::logic_error("universal quantifier survived renaming");
    default:
      return f;
  }
}

inline std::vector<std::vector<Literal>> cnf(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return {{Literal{true, f->atom}}};
    case FormulaKind::Not:
      return {{Literal{false, f->children[0]->atom}}};
    case FormulaKind::Top:
      return {};
    case FormulaKind::Bottom:
      return {{}};
    case FormulaKind::And: {
      std::vector<std::vector<Literal>> out;
      for (const FormulaPtr& c : f->children) {
        auto cs = cnf(c);
        out.insert(out.end(), cs.begin(), cs.end());
      }
      return out;
    }
    case FormulaKind::Or: {
      std::vector<std::vector<Literal>> acc{{}};
      for (const FormulaPtr& c : f->children) {
        auto cs = cnf(c);
        std::vector<std::vector<Literal>> next;
        for (const auto& a : acc)
          for (const auto& b : cs) {
            std::vector<Literal> merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
          }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw std::logic_error("quantifier reached clause extraction");
  }
}

}  // namespace detail

// Clausal normal form for one closed or open formula: existential closure,
// negation normal form, renaming of non-prefix universal subformulas,
// prenex Skolemisation over the full universal prefix, then distribution.
inline void clausify_into(const FormulaPtr& input, Signature& sig, ClausifyResult& out) {
  using namespace detail;
  FormulaPtr f = simplify(nnf(simplify(input), true));
  std::vector<int> fv = free_vars(f);
  if (!fv.empty()) f = mk_exists(fv, f);
  out.universal_subformulas += count_universals(f);
  std::deque<FormulaPtr> queue{f};
  while (!queue.empty()) {
    FormulaPtr g = prune_vacuous(queue.front());
    queue.pop_front();
    if (g->kind == FormulaKind::And) {
      for (const FormulaPtr& c : g->children) queue.push_back(c);
      continue;
    }
    std::vector<int> prefix;
    FormulaPtr body = g;
    if (g->kind == FormulaKind::Forall) body = merge_chain(g, prefix);
    if (body->kind == FormulaKind::And) {
      for (const FormulaPtr& c : body->children)
        queue.push_back(prefix.empty() ? c : mk_forall(prefix, c));
      continue;
    }
    body = rename_universals(body, sig, queue, out.definers_introduced);
    body = skolemize(body, prefix, sig);
    for (auto& lits : cnf(body)) {
      Clause c;
      for (const Literal& l : lits) {
        bool dup = false;
        for (const Literal& k : c.lits) dup = dup || k == l;
        if (!dup) c.lits.push_back(l);
      }
      out.clauses.push_back(std::move(c));
    }
  }
}

inline ClausifyResult clausify(const std::vector<FormulaPtr>& formulas, Signature& sig) {
  ClausifyResult out;
  for (const FormulaPtr& f : formulas) clausify_into(f, sig, out);
  return out;
}

// A query is an existentially closed conjunction of function-free atoms;
// its negation is a query clause.
inline Clause negate_bcq(const FormulaPtr& q, Signature& sig) {
  FormulaPtr body = q;
  while (body->kind == FormulaKind::Exists) body = body->children[0];
  std::vector<FormulaPtr> conj;
  and_flatten(body, conj);
  Clause out;
  for (const FormulaPtr& c : conj) {
    if (c->kind != FormulaKind::Atom)
      throw InputError("query must be a conjunction of atoms: offending part " +
                       to_string(c, sig));
    for (const Term& t : c->atom.args)
      if (t.is_compound()) throw InputError("query atoms must be function-free");
    out.lits.push_back({false, c->atom});
  }
  if (out.lits.empty()) throw InputError("query must contain at least one atom");
  return out;
}

}  // namespace gqe
