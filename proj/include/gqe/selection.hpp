#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "gqe/clause_class.hpp"
#include "gqe/ordering.hpp"
#include "gqe/subst.hpp"

namespace gqe {

enum class SelectionMode { Max, SelectNC, SelectG, SelectT };

inline const char* to_string(SelectionMode m) {
  switch (m) {
    case SelectionMode::Max: return "max";
    case SelectionMode::SelectNC: return "select-nc";
    case SelectionMode::SelectG: return "select-g";
    case SelectionMode::SelectT: return "select-t";
  }
  return "?";
}

struct Eligible {
  SelectionMode mode = SelectionMode::Max;
  std::vector<int> lits;
};

namespace detail {

inline bool has_compound_arg(const Literal& l) {
  for (const Term& t : l.atom.args)
    if (t.is_compound()) return true;
  return false;
}

inline std::vector<int> to_int_indices(const std::vector<size_t>& xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (size_t x : xs) out.push_back(static_cast<int>(x));
  return out;
}

}  // namespace detail

// Literal dispatch: ordering-maximal literals for ground and positively
// compound clauses, a fixed selection otherwise. SelectT stands for
// "all negative literals"; the top-variable narrowing happens per side
// premise tuple in compute_top.
inline Eligible select_literals(const Clause& c, const ClauseClass& k, const Precedence& prec) {
  Eligible e;
  if (k.ground) {
    e.mode = SelectionMode::Max;
    e.lits = detail::to_int_indices(maximal_literals(c, prec));
    return e;
  }
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (!c.lits[i].positive && detail::has_compound_arg(c.lits[i])) {
      e.mode = SelectionMode::SelectNC;
      e.lits = {static_cast<int>(i)};
      return e;
    }
  }
  bool pos_compound = false;
  bool has_negative = false;
  for (const Literal& l : c.lits) {
    if (l.positive && detail::has_compound_arg(l)) pos_compound = true;
    if (!l.positive) has_negative = true;
  }
  if (pos_compound) {
    e.mode = SelectionMode::Max;
    e.lits = detail::to_int_indices(maximal_literals(c, prec));
    return e;
  }
  bool has_positive = false;
  for (const Literal& l : c.lits)
    if (l.positive) has_positive = true;
  if (k.category == ClauseCategory::Guarded && has_positive && k.guard_index >= 0) {
    e.mode = SelectionMode::SelectG;
    e.lits = {k.guard_index};
    return e;
  }
  if (!has_negative) {
    e.mode = SelectionMode::Max;
    e.lits = detail::to_int_indices(maximal_literals(c, prec));
    return e;
  }
  e.mode = SelectionMode::SelectT;
  for (size_t i = 0; i < c.lits.size(); ++i)
    if (!c.lits[i].positive) e.lits.push_back(static_cast<int>(i));
  return e;
}

// A clause can donate literal i as the resolved-away head of a multi-premise
// resolution step iff nothing in it is selected and the literal is a strictly
// maximal positive literal.
inline bool side_head_usable(const Clause& c, const ClauseClass& k, const Precedence& prec,
                             int i) {
  if (!c.lits[i].positive) return false;
  Eligible e = select_literals(c, k, prec);
  if (e.mode != SelectionMode::Max) return false;
  return strictly_maximal(c, static_cast<size_t>(i), prec);
}

struct SidePremise {
  const Clause* clause = nullptr;
  int head = -1;
};

struct TopAnalysis {
  std::vector<int> neg_lits;
  std::vector<int> offsets;
  Substitution probe;
  std::map<int, int> var_depth;
  std::vector<int> top_vars;
  std::vector<int> top_lits;
  std::vector<std::vector<int>> closed_sets;
};

inline std::vector<int> negative_literal_indices(const Clause& c) {
  std::vector<int> out;
  for (size_t i = 0; i < c.lits.size(); ++i)
    if (!c.lits[i].positive) out.push_back(static_cast<int>(i));
  return out;
}

namespace detail {

inline int max_var_id(const Clause& c) {
  int m = -1;
  for (int v : clause_vars(c)) m = std::max(m, v);
  return m;
}

}  // namespace detail

// Worklist closure: starting from one top variable, repeatedly pull in the
// top variables of every literal touched by the set so far.
inline std::vector<std::vector<int>> closed_top_variable_sets(const std::vector<Literal>& lits,
                                                              const std::vector<int>& top_vars) {
  std::vector<std::vector<int>> out;
  std::vector<int> remaining = top_vars;
  std::sort(remaining.begin(), remaining.end());
  auto contains = [](const std::vector<int>& xs, int v) {
    return std::find(xs.begin(), xs.end(), v) != xs.end();
  };
  while (!remaining.empty()) {
    std::vector<int> sx;
    std::vector<int> temp{remaining.front()};
    while (!temp.empty()) {
      for (int v : temp)
        if (!contains(sx, v)) sx.push_back(v);
      std::vector<int> pulled;
      for (const Literal& l : lits) {
        std::vector<int> lv = literal_vars(l);
        bool touched = false;
        for (int v : temp)
          if (contains(lv, v)) touched = true;
        if (!touched) continue;
        for (int v : lv)
          if (contains(top_vars, v) && !contains(sx, v) && !contains(pulled, v))
            pulled.push_back(v);
      }
      temp = pulled;
    }
    std::sort(sx.begin(), sx.end());
    std::vector<int> rest;
    for (int v : remaining)
      if (!contains(sx, v)) rest.push_back(v);
    remaining = rest;
    out.push_back(std::move(sx));
  }
  return out;
}

inline std::vector<std::vector<int>> closed_top_variable_sets(const Clause& q,
                                                              const std::vector<int>& top_vars) {
  return closed_top_variable_sets(q.lits, top_vars);
}

// Probe unification of every negative literal of the main premise against its
// side premise head, then the depth-maximal variables of the instantiation.
// sides[j] pairs with the j-th negative literal. Connectivity for the closed
// sets runs over the negative literals only.
inline std::optional<TopAnalysis> compute_top(const std::vector<SidePremise>& sides,
                                              const Clause& main) {
  TopAnalysis ta;
  ta.neg_lits = negative_literal_indices(main);
  if (sides.size() != ta.neg_lits.size()) return std::nullopt;
  int next_free = detail::max_var_id(main) + 1;
  for (size_t j = 0; j < sides.size(); ++j) {
    const Clause& sc = *sides[j].clause;
    ta.offsets.push_back(next_free);
    next_free += detail::max_var_id(sc) + 1;
    Literal head = sides[j].head >= 0 ? sc.lits[sides[j].head] : Literal{};
    if (!head.positive) return std::nullopt;
    Atom renamed = rename_apart_atom(head.atom, ta.offsets[j]);
    if (!mgu_extend(ta.probe, main.lits[ta.neg_lits[j]].atom, renamed)) return std::nullopt;
  }
  std::vector<int> qvars;
  for (int li : ta.neg_lits)
    for (int v : literal_vars(main.lits[li]))
      if (std::find(qvars.begin(), qvars.end(), v) == qvars.end()) qvars.push_back(v);
  int best = -1;
  for (int v : qvars) {
    int d = ta.probe.apply(Term::var(v)).depth();
    ta.var_depth[v] = d;
    best = std::max(best, d);
  }
  for (int v : qvars)
    if (ta.var_depth[v] == best) ta.top_vars.push_back(v);
  std::sort(ta.top_vars.begin(), ta.top_vars.end());
  for (int li : ta.neg_lits) {
    std::vector<int> lv = literal_vars(main.lits[li]);
    for (int v : ta.top_vars)
      if (std::find(lv.begin(), lv.end(), v) != lv.end()) {
        ta.top_lits.push_back(li);
        break;
      }
  }
  std::vector<Literal> neg;
  for (int li : ta.neg_lits) neg.push_back(main.lits[li]);
  ta.closed_sets = closed_top_variable_sets(neg, ta.top_vars);
  return ta;
}

struct TupleLimits {
  int max_tuples = 64;
  long max_steps = 200000;
};

// Depth-first search for complete side premise tuples: one candidate per
// negative literal, pruned by incremental unification. Candidates are tried
// in the given order, so the enumeration is deterministic. A hit limit sets
// *truncated; callers that need the full set must treat that as a resource
// failure, not an answer.
inline std::vector<std::vector<SidePremise>> find_side_tuples(
    const Clause& main, const std::vector<std::vector<SidePremise>>& candidates,
    const TupleLimits& lim = {}, bool* truncated = nullptr) {
  std::vector<int> neg = negative_literal_indices(main);
  std::vector<std::vector<SidePremise>> out;
  if (neg.size() != candidates.size()) return out;
  std::vector<SidePremise> path(neg.size());
  long steps = 0;
  auto cut = [&] {
    if (truncated) *truncated = true;
    return true;
  };
  auto rec = [&](auto&& self, size_t j, const Substitution& sub, int next_free) -> bool {
    if (static_cast<int>(out.size()) >= lim.max_tuples) return cut();
    if (++steps > lim.max_steps) return cut();
    if (j == neg.size()) {
      out.push_back(path);
      if (static_cast<int>(out.size()) >= lim.max_tuples) return cut();
      return false;
    }
    for (const SidePremise& cand : candidates[j]) {
      const Literal& head = cand.clause->lits[cand.head];
      if (!head.positive) continue;
      if (head.atom.pred != main.lits[neg[j]].atom.pred) continue;
      Substitution ext = sub;
      Atom renamed = rename_apart_atom(head.atom, next_free);
      if (!mgu_extend(ext, main.lits[neg[j]].atom, renamed)) continue;
      path[j] = cand;
      int nf = next_free + detail::max_var_id(*cand.clause) + 1;
      if (self(self, j + 1, ext, nf)) return true;
    }
    return false;
  };
  rec(rec, 0, Substitution{}, detail::max_var_id(main) + 1);
  return out;
}

}  // namespace gqe
