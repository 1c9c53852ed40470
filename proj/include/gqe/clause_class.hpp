#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gqe/term.hpp"

namespace gqe {

inline bool is_flat(const Literal& l) {
  for (const Term& t : l.atom.args)
    if (t.is_compound()) return false;
  return true;
}

inline bool is_flat(const Clause& c) {
  for (const Literal& l : c.lits)
    if (!is_flat(l)) return false;
  return true;
}

// Simple: arguments are variables, constants, or compounds whose own
// arguments are variables or constants (term depth at most 1).
inline bool is_simple(const Literal& l) {
  for (const Term& t : l.atom.args)
    if (t.is_compound())
      for (const Term& u : t.args())
        if (u.is_compound()) return false;
  return true;
}

inline bool is_simple(const Clause& c) {
  for (const Literal& l : c.lits)
    if (!is_simple(l)) return false;
  return true;
}

inline bool is_ground(const Clause& c) { return clause_vars(c).empty(); }

namespace detail {

inline void collect_compounds(const Term& t, std::vector<Term>& out) {
  if (!t.is_compound()) return;
  out.push_back(t);
  for (const Term& a : t.args()) collect_compounds(a, out);
}

inline bool strict_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Covering: every compound term has exactly the clause's variables.
inline bool is_covering(const Clause& c) {
  std::vector<int> cv = clause_vars(c);
  std::vector<Term> comps;
  for (const Literal& l : c.lits)
    for (const Term& t : l.atom.args) detail::collect_compounds(t, comps);
  for (const Term& t : comps)
    if (term_vars(t) != cv) return false;
  return true;
}

// Query clause: nonempty, flat, all literals negative. The empty clause is
// a terminal object, not a query clause.
inline bool is_query_clause(const Clause& c) {
  if (c.lits.empty() || !is_flat(c)) return false;
  for (const Literal& l : c.lits)
    if (l.positive) return false;
  return true;
}

enum class ClauseCategory { Ground, Guarded, LooselyGuarded, Query, Other };

struct ClauseClass {
  bool ground = false;
  bool flat = false;
  bool simple = false;
  bool covering = false;
  bool query = false;
  int guard_index = -1;                 // first guard if guarded
  std::vector<size_t> loose_guards;     // witness set if loosely guarded
  ClauseCategory category = ClauseCategory::Other;
};

// A guard is a negative flat literal containing all clause variables.
inline int find_guard(const Clause& c) {
  std::vector<int> cv = clause_vars(c);
  for (size_t i = 0; i < c.lits.size(); ++i) {
    const Literal& l = c.lits[i];
    if (!l.positive && is_flat(l) && literal_vars(l) == cv) return static_cast<int>(i);
  }
  return -1;
}

// Loose guards: a set of negative flat literals covering every pair of
// clause variables (including each variable with itself, so every variable
// must occur in the set). Returns a greedily minimized witness.
inline bool find_loose_guards(const Clause& c, std::vector<size_t>& witness) {
  witness.clear();
  std::vector<int> cv = clause_vars(c);
  if (cv.empty()) return true;
  std::vector<size_t> cands;
  std::vector<std::vector<int>> cand_vars;
  for (size_t i = 0; i < c.lits.size(); ++i)
    if (!c.lits[i].positive && is_flat(c.lits[i])) {
      cands.push_back(i);
      cand_vars.push_back(literal_vars(c.lits[i]));
    }
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < cv.size(); ++i)
    for (size_t j = i; j < cv.size(); ++j) pairs.push_back({cv[i], cv[j]});
  auto covers = [&](size_t k, std::pair<int, int> p) {
    const std::vector<int>& vs = cand_vars[k];
    return std::binary_search(vs.begin(), vs.end(), p.first) &&
           std::binary_search(vs.begin(), vs.end(), p.second);
  };
  for (const auto& p : pairs) {
    bool found = false;
    for (size_t k = 0; k < cands.size() && !found; ++k) found = covers(k, p);
    if (!found) return false;
  }
  // Greedy cover: repeatedly take the candidate covering most open pairs.
  std::vector<bool> open(pairs.size(), true);
  size_t remaining = pairs.size();
  while (remaining > 0) {
    size_t best = cands.size();
    size_t best_count = 0;
    for (size_t k = 0; k < cands.size(); ++k) {
      size_t count = 0;
      for (size_t p = 0; p < pairs.size(); ++p)
        if (open[p] && covers(k, pairs[p])) ++count;
      if (count > best_count) {
        best_count = count;
        best = k;
      }
    }
    witness.push_back(cands[best]);
    for (size_t p = 0; p < pairs.size(); ++p)
      if (open[p] && covers(best, pairs[p])) {
        open[p] = false;
        --remaining;
      }
  }
  std::sort(witness.begin(), witness.end());
  return true;
}

inline ClauseClass classify(const Clause& c) {
  ClauseClass k;
  k.ground = is_ground(c);
  k.flat = is_flat(c);
  k.simple = is_simple(c);
  k.covering = is_covering(c);
  k.query = is_query_clause(c);
  if (k.simple && k.covering) {
    if (k.ground && !c.lits.empty()) {
      k.category = ClauseCategory::Ground;
      return k;
    }
    k.guard_index = find_guard(c);
    if (k.guard_index >= 0) {
      k.category = ClauseCategory::Guarded;
      return k;
    }
    if (!c.lits.empty() && find_loose_guards(c, k.loose_guards)) {
      k.category = ClauseCategory::LooselyGuarded;
      return k;
    }
  }
  k.category = k.query ? ClauseCategory::Query : ClauseCategory::Other;
  return k;
}

struct VariableAnalysis {
  std::vector<size_t> surface;  // surface literal indices
  std::vector<int> chained;
  std::vector<int> isolated;
};

// Surface literal: its variable set is not a strict subset of any other
// literal's. Chained variables link surface literals with different
// variable sets; the rest of the clause's variables are isolated.
inline VariableAnalysis variable_analysis(const Clause& c) {
  VariableAnalysis va;
  std::vector<std::vector<int>> vsets;
  for (const Literal& l : c.lits) vsets.push_back(literal_vars(l));
  for (size_t i = 0; i < c.lits.size(); ++i) {
    bool strict = false;
    for (size_t j = 0; j < c.lits.size() && !strict; ++j)
      if (j != i && detail::strict_subset(vsets[i], vsets[j])) strict = true;
    if (!strict) va.surface.push_back(i);
  }
  std::vector<int> chained;
  for (size_t a = 0; a < va.surface.size(); ++a)
    for (size_t b = a + 1; b < va.surface.size(); ++b) {
      const auto& va_ = vsets[va.surface[a]];
      const auto& vb_ = vsets[va.surface[b]];
      if (va_ == vb_) continue;
      std::set_intersection(va_.begin(), va_.end(), vb_.begin(), vb_.end(),
                            std::back_inserter(chained));
    }
  std::sort(chained.begin(), chained.end());
  chained.erase(std::unique(chained.begin(), chained.end()), chained.end());
  va.chained = chained;
  for (int v : clause_vars(c))
    if (!std::binary_search(chained.begin(), chained.end(), v)) va.isolated.push_back(v);
  return va;
}

// Variable-disjoint components; ground literals are singleton components.
inline std::vector<Clause> split_components(const Clause& c) {
  size_t n = c.lits.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> vsets;
  for (const Literal& l : c.lits) vsets.push_back(literal_vars(l));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<int> inter;
      std::set_intersection(vsets[i].begin(), vsets[i].end(), vsets[j].begin(), vsets[j].end(),
                            std::back_inserter(inter));
      if (!inter.empty()) parent[find(i)] = find(j);
    }
  std::map<size_t, Clause> comps;
  for (size_t i = 0; i < n; ++i) comps[find(i)].lits.push_back(c.lits[i]);
  std::vector<Clause> out;
  for (auto& [root, cl] : comps) out.push_back(std::move(cl));
  return out;
}

}  // namespace gqe
