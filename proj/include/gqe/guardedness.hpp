#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gqe/formula.hpp"

namespace gqe {

enum class GuardVerdict { Guarded, LooselyGuarded, NotGuarded };

struct GuardCheck {
  GuardVerdict verdict = GuardVerdict::NotGuarded;
  std::string witness;  // first violating quantified subformula when not guarded
};

namespace detail {

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  for (int v : a)
    if (std::find(b.begin(), b.end(), v) == b.end()) return false;
  return true;
}

// Drops binder variables that do not occur free in the body; a quantifier
// left with no variables dissolves into its body.
inline FormulaPtr prune_vacuous(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists) {
    FormulaPtr body = prune_vacuous(f->children[0]);
    std::vector<int> fv = free_vars(body);
    std::vector<int> kept;
    for (int v : f->vars)
      if (std::find(fv.begin(), fv.end(), v) != fv.end()) kept.push_back(v);
    if (kept.empty()) return body;
    return mk_quant(f->kind, std::move(kept), std::move(body));
  }
  if (f->children.empty()) return f;
  std::vector<FormulaPtr> cs;
  cs.reserve(f->children.size());
  for (const FormulaPtr& c : f->children) cs.push_back(prune_vacuous(c));
  auto g = std::make_shared<Formula>(*f);
  g->children = std::move(cs);
  return g;
}

// Merges a chain of same-kind quantifiers into one variable list.
inline FormulaPtr merge_chain(const FormulaPtr& f, std::vector<int>& vars) {
  FormulaPtr cur = f;
  while (cur->kind == f->kind) {
    vars.insert(vars.end(), cur->vars.begin(), cur->vars.end());
    cur = cur->children[0];
  }
  return cur;
}

struct GuardScan {
  const Signature* sig;
  bool loose;  // loosely guarded check when true
  std::string witness;

  bool atoms_cover(const std::vector<FormulaPtr>& delta, int x, int y) const {
    for (const FormulaPtr& a : delta) {
      std::vector<int> vs = atom_vars(a->atom);
      if (std::find(vs.begin(), vs.end(), x) != vs.end() &&
          std::find(vs.begin(), vs.end(), y) != vs.end())
        return true;
    }
    return false;
  }

  bool pair_condition(const std::vector<FormulaPtr>& delta, const std::vector<int>& bound) const {
    std::vector<int> dvars;
    for (const FormulaPtr& a : delta)
      for (int v : atom_vars(a->atom))
        if (std::find(dvars.begin(), dvars.end(), v) == dvars.end()) dvars.push_back(v);
    for (int x : bound)
      for (int y : dvars)
        if (x != y && !atoms_cover(delta, x, y)) return false;
    return true;
  }

  bool guard_ok(const std::vector<FormulaPtr>& delta, const std::vector<FormulaPtr>& rest,
                const std::vector<int>& bound) const {
    std::vector<int> dvars;
    for (const FormulaPtr& a : delta)
      for (int v : atom_vars(a->atom)) dvars.push_back(v);
    for (const FormulaPtr& r : rest)
      if (!subset_of(free_vars(r), dvars)) return false;
    if (loose) return pair_condition(delta, bound);
    return true;
  }

  // Searches single guards, or in the loose case all candidate subsets.
  bool find_guards(const std::vector<FormulaPtr>& cands, const std::vector<FormulaPtr>& others,
                   const std::vector<int>& bound) {
    size_t n = cands.size();
    if (n == 0) return false;
    if (!loose) {
      for (size_t i = 0; i < n; ++i) {
        std::vector<FormulaPtr> rest = others;
        for (size_t j = 0; j < n; ++j)
          if (j != i) rest.push_back(cands[j]);
        if (guard_ok({cands[i]}, rest, bound)) {
          for (const FormulaPtr& r : rest)
            if (!check(r)) return false;
          return true;
        }
      }
      return false;
    }
    if (n > 16) return false;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
      std::vector<FormulaPtr> delta, rest = others;
      for (size_t j = 0; j < n; ++j)
        (mask >> j & 1 ? delta : rest).push_back(cands[j]);
      if (guard_ok(delta, rest, bound)) {
        bool ok = true;
        for (const FormulaPtr& r : rest)
          if (!check(r)) {
            ok = false;
            break;
          }
        if (ok) return true;
      }
    }
    return false;
  }

  void fail(const FormulaPtr& f) {
    if (witness.empty()) witness = to_string(f, *sig);
  }

  bool check(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Atom:
      case FormulaKind::Top:
      case FormulaKind::Bottom:
        return true;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        for (const FormulaPtr& c : f->children)
          if (!check(c)) return false;
        return true;
      case FormulaKind::Exists: {
        std::vector<int> bound;
        FormulaPtr body = merge_chain(f, bound);
        std::vector<FormulaPtr> conj;
        and_flatten(body, conj);
        std::vector<FormulaPtr> cands, others;
        for (const FormulaPtr& c : conj)
          (c->kind == FormulaKind::Atom ? cands : others).push_back(c);
        if (find_guards(cands, others, bound)) return true;
        fail(f);
        return false;
      }
      case FormulaKind::Forall: {
        std::vector<int> bound;
        FormulaPtr body = merge_chain(f, bound);
        // view the body as a disjunction; negated atoms are guard candidates
        std::vector<FormulaPtr> disj;
        if (body->kind == FormulaKind::Implies) {
          std::vector<FormulaPtr> lhs;
          and_flatten(body->children[0], lhs);
          for (const FormulaPtr& a : lhs) disj.push_back(mk_not(a));
          or_flatten(body->children[1], disj);
        } else {
          or_flatten(body, disj);
        }
        std::vector<FormulaPtr> cands, others;
        for (const FormulaPtr& d : disj) {
          if (d->kind == FormulaKind::Not && d->children[0]->kind == FormulaKind::Atom)
            cands.push_back(d->children[0]);
          else
            others.push_back(d);
        }
        if (find_guards(cands, others, bound)) return true;
        fail(f);
        return false;
      }
    }
    return false;
  }
};

}  // namespace detail

inline GuardCheck check_guardedness(const FormulaPtr& f, const Signature& sig) {
  GuardCheck out;
  if (has_functions(f)) {
    out.verdict = GuardVerdict::NotGuarded;
    out.witness = "function symbols are not allowed";
    return out;
  }
  FormulaPtr pruned = detail::prune_vacuous(f);
  detail::GuardScan gf{&sig, false, {}};
  if (gf.check(pruned)) {
    out.verdict = GuardVerdict::Guarded;
    return out;
  }
  detail::GuardScan lgf{&sig, true, {}};
  if (lgf.check(pruned)) {
    out.verdict = GuardVerdict::LooselyGuarded;
    return out;
  }
  out.verdict = GuardVerdict::NotGuarded;
  out.witness = lgf.witness;
  return out;
}

}  // namespace gqe
