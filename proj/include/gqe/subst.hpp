#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gqe/term.hpp"

namespace gqe {

// Idempotent substitution: no bound variable occurs in any binding's
// right-hand side, so apply() is a single pass.
class Substitution {
 public:
  const std::map<int, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }

  const Term* lookup(int v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
  }

  Term apply(const Term& t) const {
    if (t.is_var()) {
      const Term* b = lookup(t.var_id());
      return b ? *b : t;
    }
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply(a));
    return Term::fun(t.sym(), std::move(args));
  }

  Atom apply(const Atom& a) const {
    Atom out;
    out.pred = a.pred;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    return out;
  }

  Literal apply(const Literal& l) const { return {l.positive, apply(l.atom)}; }

  Clause apply(const Clause& c) const {
    Clause out;
    out.id = c.id;
    out.lits.reserve(c.lits.size());
    for (const Literal& l : c.lits) out.lits.push_back(apply(l));
    return out;
  }

  // Binds v to t (resolved against the current bindings). Fails on occurs
  // check. Keeps idempotence by substituting into existing right-hand sides.
  bool bind(int v, const Term& t) {
    Term r = apply(t);
    if (r.is_var() && r.var_id() == v) return true;
    if (occurs_in(v, r)) return false;
    Substitution one;
    one.map_.emplace(v, r);
    for (auto& [key, val] : map_) val = one.apply(val);
    map_.emplace(v, std::move(r));
    return true;
  }

  std::string to_string(const Signature& sig) const {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, t] : map_) {
      if (!first) s += ", ";
      first = false;
      s += "X" + std::to_string(v) + " -> " + gqe::to_string(t, sig);
    }
    return s + "}";
  }

 private:
  std::map<int, Term> map_;
};

inline bool mgu_extend(Substitution& s, const Term& a, const Term& b) {
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = s.apply(x);
    y = s.apply(y);
    if (x == y) continue;
    if (x.is_var()) {
      if (!s.bind(x.var_id(), y)) return false;
    } else if (y.is_var()) {
      if (!s.bind(y.var_id(), x)) return false;
    } else {
      if (x.sym() != y.sym() || x.args().size() != y.args().size()) return false;
      for (size_t i = 0; i < x.args().size(); ++i) work.push_back({x.args()[i], y.args()[i]});
    }
  }
  return true;
}

inline bool mgu_extend(Substitution& s, const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!mgu_extend(s, a.args[i], b.args[i])) return false;
  return true;
}

inline std::optional<Substitution> mgu(const Term& a, const Term& b) {
  Substitution s;
  if (!mgu_extend(s, a, b)) return std::nullopt;
  return s;
}

inline std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  Substitution s;
  if (!mgu_extend(s, a, b)) return std::nullopt;
  return s;
}

using VarMap = std::map<int, Term>;

inline Term apply_map(const Term& t, const VarMap& m) {
  if (t.is_var()) {
    auto it = m.find(t.var_id());
    return it == m.end() ? t : it->second;
  }
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_map(a, m));
  return Term::fun(t.sym(), std::move(args));
}

inline Atom apply_map(const Atom& a, const VarMap& m) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply_map(t, m));
  return out;
}

// One-sided match: pattern variables bind to target subterms, target is
// rigid. Bindings are exact subterms (no resolution), applied in one pass.
inline bool match_term(const Term& pattern, const Term& target, VarMap& m) {
  if (pattern.is_var()) {
    auto it = m.find(pattern.var_id());
    if (it != m.end()) return it->second == target;
    m.emplace(pattern.var_id(), target);
    return true;
  }
  if (target.is_var()) return false;
  if (pattern.sym() != target.sym() || pattern.args().size() != target.args().size()) return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], target.args()[i], m)) return false;
  return true;
}

inline bool match_atom(const Atom& pattern, const Atom& target, VarMap& m) {
  if (pattern.pred != target.pred || pattern.args.size() != target.args.size()) return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], target.args[i], m)) return false;
  return true;
}

inline Atom rename_apart_atom(const Atom& a, int offset) {
  VarMap m;
  for (int v : atom_vars(a)) m.emplace(v, Term::var(v + offset));
  return apply_map(a, m);
}

inline Clause rename_apart(const Clause& c, int offset) {
  Clause out;
  out.id = c.id;
  out.lits.reserve(c.lits.size());
  VarMap m;
  for (int v : clause_vars(c)) m.emplace(v, Term::var(v + offset));
  for (const Literal& l : c.lits) out.lits.push_back({l.positive, apply_map(l.atom, m)});
  return out;
}

namespace detail {

inline bool variant_term(const Term& a, const Term& b, std::map<int, int>& fwd,
                         std::map<int, int>& bwd) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto f = fwd.find(a.var_id());
    auto g = bwd.find(b.var_id());
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.var_id()] = b.var_id();
      bwd[b.var_id()] = a.var_id();
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.var_id() &&
           g->second == a.var_id();
  }
  if (a.sym() != b.sym() || a.args().size() != b.args().size()) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!variant_term(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}

inline bool variant_literal(const Literal& a, const Literal& b, std::map<int, int>& fwd,
                            std::map<int, int>& bwd) {
  if (a.positive != b.positive || a.atom.pred != b.atom.pred ||
      a.atom.args.size() != b.atom.args.size())
    return false;
  for (size_t i = 0; i < a.atom.args.size(); ++i)
    if (!variant_term(a.atom.args[i], b.atom.args[i], fwd, bwd)) return false;
  return true;
}

inline bool variant_perm(const Clause& a, const Clause& b, size_t i, std::vector<bool>& used,
                         std::map<int, int>& fwd, std::map<int, int>& bwd) {
  if (i == a.lits.size()) return true;
  for (size_t j = 0; j < b.lits.size(); ++j) {
    if (used[j]) continue;
    auto fwd2 = fwd;
    auto bwd2 = bwd;
    if (variant_literal(a.lits[i], b.lits[j], fwd2, bwd2)) {
      used[j] = true;
      if (variant_perm(a, b, i + 1, used, fwd2, bwd2)) {
        fwd = fwd2;
        bwd = bwd2;
        return true;
      }
      used[j] = false;
    }
  }
  return false;
}

inline bool subsume_perm(const Clause& c, const Clause& d, size_t i, std::vector<bool>& used,
                         VarMap& m) {
  if (i == c.lits.size()) return true;
  for (size_t j = 0; j < d.lits.size(); ++j) {
    if (used[j]) continue;
    if (c.lits[i].positive != d.lits[j].positive) continue;
    VarMap m2 = m;
    if (match_atom(c.lits[i].atom, d.lits[j].atom, m2)) {
      used[j] = true;
      if (subsume_perm(c, d, i + 1, used, m2)) {
        m = m2;
        return true;
      }
      used[j] = false;
    }
  }
  return false;
}

}  // namespace detail

// Equality up to variable renaming (bijective), literals as a multiset.
inline bool is_variant(const Clause& a, const Clause& b) {
  if (a.lits.size() != b.lits.size()) return false;
  std::vector<bool> used(b.lits.size(), false);
  std::map<int, int> fwd, bwd;
  return detail::variant_perm(a, b, 0, used, fwd, bwd);
}

// Multiset subsumption: some substitution maps c injectively into d.
// Assumes c and d have disjoint variables (callers rename apart).
inline bool subsumes(const Clause& c, const Clause& d) {
  if (c.lits.size() > d.lits.size()) return false;
  std::vector<bool> used(d.lits.size(), false);
  VarMap m;
  return detail::subsume_perm(c, d, 0, used, m);
}

}  // namespace gqe
