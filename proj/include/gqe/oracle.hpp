#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gqe/term.hpp"

// Brute-force ground reasoner used to cross-check the saturation engine.
// It deliberately shares no unification, ordering or rewriting code with
// the engine: clauses are instantiated over an explicit finite universe
// and handed to a tiny DPLL solver.

namespace gqe {

struct GroundUniverse {
  std::vector<SymbolId> constants;
  int max_term_depth = 0;
  size_t max_ground_atoms = 100000;
  size_t max_ground_clauses = 1000000;
};

namespace oracle_detail {

inline Term instantiate(const Term& t, const std::vector<int>& vars,
                        const std::vector<const Term*>& tuple) {
  if (t.is_var()) {
    size_t i = std::lower_bound(vars.begin(), vars.end(), t.var_id()) - vars.begin();
    return *tuple[i];
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(instantiate(a, vars, tuple));
  return Term::fun(t.sym(), std::move(args));
}

inline void term_key(const Term& t, std::string& out) {
  if (t.is_constant()) {
    out += 'c';
    out += std::to_string(t.sym());
    return;
  }
  out += 'f';
  out += std::to_string(t.sym());
  out += '(';
  for (const Term& a : t.args()) term_key(a, out);
  out += ')';
}

inline std::string atom_key(const Atom& a) {
  std::string s = std::to_string(a.pred);
  s += ':';
  for (const Term& t : a.args) term_key(t, s);
  return s;
}

inline std::vector<std::vector<int>> assign(const std::vector<std::vector<int>>& cls, int lit) {
  std::vector<std::vector<int>> out;
  out.reserve(cls.size());
  for (const auto& c : cls) {
    if (std::find(c.begin(), c.end(), lit) != c.end()) continue;
    std::vector<int> r;
    r.reserve(c.size());
    for (int l : c)
      if (l != -lit) r.push_back(l);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool dpll(std::vector<std::vector<int>> cls) {
  for (;;) {
    int unit = 0;
    for (const auto& c : cls) {
      if (c.empty()) return false;
      if (c.size() == 1) unit = c[0];
    }
    if (!unit) break;
    cls = assign(cls, unit);
  }
  if (cls.empty()) return true;
  int lit = cls[0][0];
  return dpll(assign(cls, lit)) || dpll(assign(cls, -lit));
}

}  // namespace oracle_detail

// Propositional satisfiability of the full ground instantiation of cs over
// the universe's terms: the constants, plus depth-one function terms over
// them when max_term_depth is 1.  Universes whose instantiation exceeds the
// configured caps are rejected.
inline bool ground_sat(const std::vector<Clause>& cs, const GroundUniverse& u) {
  using namespace oracle_detail;

  std::vector<Term> terms;
  for (SymbolId c : u.constants) terms.push_back(Term::constant(c));
  if (u.max_term_depth >= 1 && !u.constants.empty()) {
    std::vector<std::pair<SymbolId, size_t>> fns;
    for (const Clause& c : cs)
      for (const Literal& l : c.lits) {
        std::vector<const Term*> work;
        for (const Term& t : l.atom.args) work.push_back(&t);
        while (!work.empty()) {
          const Term* t = work.back();
          work.pop_back();
          if (!t->is_compound()) continue;
          std::pair<SymbolId, size_t> fn{t->sym(), t->args().size()};
          if (std::find(fns.begin(), fns.end(), fn) == fns.end()) fns.push_back(fn);
          for (const Term& a : t->args()) work.push_back(&a);
        }
      }
    size_t nconst = u.constants.size();
    for (auto [f, arity] : fns) {
      std::vector<size_t> idx(arity, 0);
      for (;;) {
        std::vector<Term> args;
        for (size_t i : idx) args.push_back(Term::constant(u.constants[i]));
        terms.push_back(Term::fun(f, std::move(args)));
        if (terms.size() > u.max_ground_atoms)
          throw ResourceError("ground term universe exceeds the cap");
        size_t p = 0;
        while (p < arity && ++idx[p] == nconst) idx[p++] = 0;
        if (p == arity) break;
      }
    }
  }

  double budget = 0;
  for (const Clause& c : cs) {
    double n = 1;
    for (size_t i = 0; i < clause_vars(c).size(); ++i) n *= static_cast<double>(terms.size());
    budget += n;
    if (budget > static_cast<double>(u.max_ground_clauses))
      throw ResourceError("ground instantiation exceeds the cap");
  }

  std::map<std::string, int> atom_ids;
  auto intern = [&](const Atom& a) {
    auto [it, fresh] = atom_ids.emplace(atom_key(a), static_cast<int>(atom_ids.size()) + 1);
    if (fresh && atom_ids.size() > u.max_ground_atoms)
      throw ResourceError("ground atom base exceeds the cap");
    return it->second;
  };

  std::vector<std::vector<int>> ground;
  for (const Clause& c : cs) {
    std::vector<int> vars = clause_vars(c);
    if (!vars.empty() && terms.empty()) throw InputError("ground universe has no terms");
    std::vector<size_t> idx(vars.size(), 0);
    for (;;) {
      std::vector<const Term*> tuple;
      for (size_t i : idx) tuple.push_back(&terms[i]);
      std::vector<int> lits;
      bool taut = false;
      for (const Literal& l : c.lits) {
        Atom a = l.atom;
        for (Term& t : a.args) t = instantiate(t, vars, tuple);
        int v = intern(a);
        int lit = l.positive ? v : -v;
        if (std::find(lits.begin(), lits.end(), -lit) != lits.end()) {
          taut = true;
          break;
        }
        if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
      }
      if (!taut) {
        if (lits.empty()) return false;
        ground.push_back(std::move(lits));
      }
      size_t p = 0;
      while (p < idx.size() && ++idx[p] == terms.size()) idx[p++] = 0;
      if (p == idx.size()) break;
    }
  }

  return dpll(std::move(ground));
}

// Hypergraph acyclicity of a query clause by ear removal: literals are
// hyperedges over their variables; vertices in a single edge are pruned,
// edges contained in another edge are absorbed.  Acyclic iff nothing is
// left.
inline bool gyo_acyclic(const Clause& q) {
  std::vector<std::vector<int>> edges;
  for (const Literal& l : q.lits) edges.push_back(literal_vars(l));

  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < edges.size(); ++i) {
      bool drop = edges[i].empty();
      for (size_t j = 0; !drop && j < edges.size(); ++j)
        drop = i != j && std::includes(edges[j].begin(), edges[j].end(), edges[i].begin(),
                                       edges[i].end());
      if (drop) {
        edges.erase(edges.begin() + i);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    std::map<int, int> occ;
    for (const auto& e : edges)
      for (int v : e) ++occ[v];
    for (auto& e : edges) {
      size_t before = e.size();
      e.erase(std::remove_if(e.begin(), e.end(), [&](int v) { return occ[v] == 1; }), e.end());
      if (e.size() != before) changed = true;
    }
  }
  return edges.empty();
}

}  // namespace gqe
