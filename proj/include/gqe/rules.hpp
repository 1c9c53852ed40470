#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "clause_class.hpp"
#include "selection.hpp"
#include "subst.hpp"
#include "symbols.hpp"
#include "term.hpp"

namespace gqe {

inline Clause dedupe_literals(const Clause& c) {
  Clause out;
  out.id = c.id;
  for (const Literal& l : c.lits) {
    bool dup = false;
    for (const Literal& k : out.lits)
      if (k == l) { dup = true; break; }
    if (!dup) out.lits.push_back(l);
  }
  return out;
}

inline bool is_tautology(const Clause& c) {
  for (size_t i = 0; i < c.lits.size(); ++i)
    for (size_t j = i + 1; j < c.lits.size(); ++j)
      if (c.lits[i].positive != c.lits[j].positive && c.lits[i].atom == c.lits[j].atom)
        return true;
  return false;
}

namespace detail {

// Set-based theta-subsumption: some substitution maps every literal of c onto
// a literal of d (repeats allowed, d's variables rigid).
inline bool subsume_from(const Clause& c, const Clause& d, size_t i, VarMap& m) {
  if (i == c.lits.size()) return true;
  for (const Literal& dl : d.lits) {
    if (dl.positive != c.lits[i].positive) continue;
    VarMap saved = m;
    if (match_atom(c.lits[i].atom, dl.atom, m) && subsume_from(c, d, i + 1, m)) return true;
    m = std::move(saved);
  }
  return false;
}

inline bool subsumes_classical(const Clause& c, const Clause& d) {
  VarMap m;
  return subsume_from(c, d, 0, m);
}

}  // namespace detail

// Smallest equivalent subclause: drop a literal whenever the clause
// theta-subsumes the remainder, to fixpoint.
inline Clause condense(const Clause& c) {
  Clause cur = dedupe_literals(c);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cur.lits.size() && !changed; ++i) {
      if (cur.lits.size() <= 1) break;
      Clause d;
      d.id = cur.id;
      for (size_t j = 0; j < cur.lits.size(); ++j)
        if (j != i) d.lits.push_back(cur.lits[j]);
      if (detail::subsumes_classical(cur, d)) {
        cur = std::move(d);
        changed = true;
      }
    }
  }
  return cur;
}

inline bool is_variant_redundant(const Clause& c, const std::vector<Clause>& set) {
  for (const Clause& d : set)
    if (is_variant(c, d)) return true;
  return false;
}

// Positive factoring: unify lits i and j (both positive), drop j.
inline std::optional<Clause> factor(const Clause& c, int i, int j) {
  if (i == j) return std::nullopt;
  const Literal& a = c.lits[i];
  const Literal& b = c.lits[j];
  if (!a.positive || !b.positive) return std::nullopt;
  auto s = mgu(a.atom, b.atom);
  if (!s) return std::nullopt;
  Clause out;
  out.id = -1;
  for (size_t k = 0; k < c.lits.size(); ++k)
    if ((int)k != j) out.lits.push_back(s->apply(c.lits[k]));
  return dedupe_literals(out);
}

// Binary resolution, premises renamed apart; pi positive in pos, ni negative in neg.
inline std::optional<Clause> resolve(const Clause& pos, int pi, const Clause& neg, int ni) {
  if (!pos.lits[pi].positive || neg.lits[ni].positive) return std::nullopt;
  int off = detail::max_var_id(pos) + 1;
  Clause rn = rename_apart(neg, off);
  auto s = mgu(pos.lits[pi].atom, rn.lits[ni].atom);
  if (!s) return std::nullopt;
  Clause out;
  out.id = -1;
  for (size_t k = 0; k < pos.lits.size(); ++k)
    if ((int)k != pi) out.lits.push_back(s->apply(pos.lits[k]));
  for (size_t k = 0; k < rn.lits.size(); ++k)
    if ((int)k != ni) out.lits.push_back(s->apply(rn.lits[k]));
  return dedupe_literals(out);
}

struct TResult {
  Clause resolvent;
  Substitution sigma;          // mgu over the top pairs only
  std::vector<int> top_slots;  // slot indices (into ta.neg_lits / sides) resolved away
};

// Resolve the top-variable literals of main against their side heads; the
// probe in ta guarantees full simultaneous unifiability, but sigma here binds
// only what the top pairs require.
inline std::optional<TResult> t_res(const std::vector<SidePremise>& sides, const Clause& main,
                                    const TopAnalysis& ta) {
  TResult r;
  for (size_t j = 0; j < ta.neg_lits.size(); ++j)
    if (std::find(ta.top_lits.begin(), ta.top_lits.end(), ta.neg_lits[j]) != ta.top_lits.end())
      r.top_slots.push_back((int)j);
  if (r.top_slots.empty()) return std::nullopt;
  for (int j : r.top_slots) {
    const Clause& sc = *sides[j].clause;
    Atom head = rename_apart_atom(sc.lits[sides[j].head].atom, ta.offsets[j]);
    if (!mgu_extend(r.sigma, main.lits[ta.neg_lits[j]].atom, head)) return std::nullopt;
  }
  Clause out;
  out.id = -1;
  for (int j : r.top_slots) {
    Clause rn = rename_apart(*sides[j].clause, ta.offsets[j]);
    for (size_t k = 0; k < rn.lits.size(); ++k)
      if ((int)k != sides[j].head) out.lits.push_back(r.sigma.apply(rn.lits[k]));
  }
  for (size_t j = 0; j < ta.neg_lits.size(); ++j) {
    if (std::find(r.top_slots.begin(), r.top_slots.end(), (int)j) != r.top_slots.end()) continue;
    out.lits.push_back(r.sigma.apply(main.lits[ta.neg_lits[j]]));
  }
  for (const Literal& l : main.lits)
    if (l.positive) out.lits.push_back(r.sigma.apply(l));
  r.resolvent = dedupe_literals(out);
  return r;
}

// Split the t_res resolvent by closed top-variable sets: each group's side
// remainders become a clause closed by a fresh positive definer, and the
// leftover part of main becomes a shorter query over the negated definers.
inline std::vector<Clause> t_trans(const TResult& tr, const TopAnalysis& ta,
                                   const std::vector<SidePremise>& sides, const Clause& main,
                                   Signature& sig) {
  std::vector<Clause> out;
  Clause query;
  query.id = -1;
  for (size_t j = 0; j < ta.neg_lits.size(); ++j) {
    if (std::find(tr.top_slots.begin(), tr.top_slots.end(), (int)j) != tr.top_slots.end()) continue;
    query.lits.push_back(tr.sigma.apply(main.lits[ta.neg_lits[j]]));
  }
  for (const Literal& l : main.lits)
    if (l.positive) query.lits.push_back(tr.sigma.apply(l));
  for (const auto& xset : ta.closed_sets) {
    Clause rem;
    rem.id = -1;
    for (int j : tr.top_slots) {
      std::vector<int> lv = literal_vars(main.lits[ta.neg_lits[j]]);
      bool touches = false;
      for (int v : lv)
        if (std::binary_search(xset.begin(), xset.end(), v)) { touches = true; break; }
      if (!touches) continue;
      Clause rn = rename_apart(*sides[j].clause, ta.offsets[j]);
      for (size_t k = 0; k < rn.lits.size(); ++k)
        if ((int)k != sides[j].head) rem.lits.push_back(tr.sigma.apply(rn.lits[k]));
    }
    rem = dedupe_literals(rem);
    if (rem.lits.empty()) continue;
    std::vector<int> av = clause_vars(rem);
    SymbolId dt = sig.fresh_definer((int)av.size(), "dt");
    std::vector<Term> args;
    for (int v : av) args.push_back(Term::var(v));
    Clause guarded = rem;
    guarded.lits.push_back(Literal{true, Atom{dt, args}});
    out.push_back(dedupe_literals(guarded));
    query.lits.push_back(Literal{false, Atom{dt, args}});
  }
  out.push_back(dedupe_literals(query));
  return out;
}

struct SepOutcome {
  Clause kept;     // picked literal, its absorbed companions, positive definer
  Clause emitted;  // the rest, negative definer appended
  SymbolId definer = -1;
};

// One query-directed separation step: pick the literal with the most isolated
// variables (ties by literal order) among those touching both an isolated and
// a chained variable; cut it off behind a fresh definer over the shared vars.
inline std::optional<SepOutcome> separate_query(const Clause& q, Signature& sig) {
  if (!is_query_clause(q)) return std::nullopt;
  VariableAnalysis va = variable_analysis(q);
  if (va.chained.empty() || va.isolated.empty()) return std::nullopt;
  int best = -1;
  size_t best_iso = 0;
  for (size_t i = 0; i < q.lits.size(); ++i) {
    std::vector<int> lv = literal_vars(q.lits[i]);
    size_t iso = 0, ch = 0;
    for (int v : lv) {
      if (std::binary_search(va.isolated.begin(), va.isolated.end(), v)) ++iso;
      if (std::binary_search(va.chained.begin(), va.chained.end(), v)) ++ch;
    }
    if (iso == 0 || ch == 0) continue;
    if (best < 0 || iso > best_iso) {
      best = (int)i;
      best_iso = iso;
    }
  }
  if (best < 0) return std::nullopt;
  std::vector<int> avars = literal_vars(q.lits[best]);
  std::vector<size_t> cpart, dpart;
  for (size_t j = 0; j < q.lits.size(); ++j) {
    if ((int)j == best) continue;
    std::vector<int> lv = literal_vars(q.lits[j]);
    bool sub = std::includes(avars.begin(), avars.end(), lv.begin(), lv.end());
    (sub ? cpart : dpart).push_back(j);
  }
  if (dpart.empty()) return std::nullopt;
  std::vector<int> dvars;
  for (size_t j : dpart)
    for (int v : literal_vars(q.lits[j])) dvars.push_back(v);
  std::sort(dvars.begin(), dvars.end());
  dvars.erase(std::unique(dvars.begin(), dvars.end()), dvars.end());
  std::vector<int> xbar;
  std::set_intersection(avars.begin(), avars.end(), dvars.begin(), dvars.end(),
                        std::back_inserter(xbar));
  SepOutcome s;
  s.definer = sig.fresh_definer((int)xbar.size(), "ds");
  std::vector<Term> args;
  for (int v : xbar) args.push_back(Term::var(v));
  s.kept.id = -1;
  for (size_t j = 0; j < q.lits.size(); ++j)
    if ((int)j == best || std::find(cpart.begin(), cpart.end(), j) != cpart.end())
      s.kept.lits.push_back(q.lits[j]);
  s.kept.lits.push_back(Literal{true, Atom{s.definer, args}});
  s.emitted.id = -1;
  for (size_t j : dpart) s.emitted.lits.push_back(q.lits[j]);
  s.emitted.lits.push_back(Literal{false, Atom{s.definer, args}});
  return s;
}

struct SepExhaustive {
  std::vector<Clause> guarded;   // Horn guarded outputs, plus any non-query residue
  std::optional<Clause> residual;  // chained-only residue, if it stays a query
  std::vector<SymbolId> definers;
  int steps = 0;
};

inline SepExhaustive separate_exhaustive(Clause q, Signature& sig) {
  SepExhaustive out;
  int cap = 4 * (int)q.lits.size() * (int)q.lits.size() + 16;
  while (true) {
    auto s = separate_query(q, sig);
    if (!s) break;
    if (++out.steps > cap) throw std::logic_error("separation did not terminate");
    out.guarded.push_back(s->kept);
    out.definers.push_back(s->definer);
    q = s->emitted;
  }
  ClauseClass k = classify(q);
  if (k.category == ClauseCategory::Query)
    out.residual = q;
  else
    out.guarded.push_back(q);
  return out;
}

// Generic separation for non-query clauses: find a literal whose variable set
// absorbs one part of the clause such that neither part's variables contain
// the other's; the absorbing part keeps the positive definer.
inline std::optional<SepOutcome> separate_generic(const Clause& c, Signature& sig) {
  for (size_t i = 0; i < c.lits.size(); ++i) {
    std::vector<int> avars = literal_vars(c.lits[i]);
    if (avars.empty()) continue;
    std::vector<size_t> part1, part2;
    for (size_t j = 0; j < c.lits.size(); ++j) {
      std::vector<int> lv = literal_vars(c.lits[j]);
      bool sub = std::includes(avars.begin(), avars.end(), lv.begin(), lv.end());
      (sub ? part1 : part2).push_back(j);
    }
    if (part2.empty()) continue;
    std::vector<int> v2;
    for (size_t j : part2)
      for (int v : literal_vars(c.lits[j])) v2.push_back(v);
    std::sort(v2.begin(), v2.end());
    v2.erase(std::unique(v2.begin(), v2.end()), v2.end());
    if (std::includes(v2.begin(), v2.end(), avars.begin(), avars.end())) continue;
    std::vector<int> xbar;
    std::set_intersection(avars.begin(), avars.end(), v2.begin(), v2.end(),
                          std::back_inserter(xbar));
    if (xbar.empty()) continue;
    SepOutcome s;
    s.definer = sig.fresh_definer((int)xbar.size(), "ds");
    std::vector<Term> args;
    for (int v : xbar) args.push_back(Term::var(v));
    s.kept.id = -1;
    for (size_t j : part1) s.kept.lits.push_back(c.lits[j]);
    s.kept.lits.push_back(Literal{true, Atom{s.definer, args}});
    s.emitted.id = -1;
    s.emitted.lits.push_back(Literal{false, Atom{s.definer, args}});
    for (size_t j : part2) s.emitted.lits.push_back(c.lits[j]);
    return s;
  }
  return std::nullopt;
}

}  // namespace gqe
