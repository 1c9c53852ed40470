#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gqe/symbols.hpp"

namespace gqe {

// Immutable first-order term. Exactly one of: variable (var_id >= 0),
// constant (sym set, no args), compound (sym set, args nonempty).
class Term {
 public:
  static Term var(int v) {
    Term t;
    t.var_ = v;
    return t;
  }
  static Term constant(SymbolId c) {
    Term t;
    t.sym_ = c;
    return t;
  }
  static Term fun(SymbolId f, std::vector<Term> args) {
    Term t;
    t.sym_ = f;
    t.args_ = std::make_shared<const std::vector<Term>>(std::move(args));
    return t;
  }

  bool is_var() const { return var_ >= 0; }
  bool is_constant() const { return var_ < 0 && !args_; }
  bool is_compound() const { return static_cast<bool>(args_); }
  int var_id() const { return var_; }
  SymbolId sym() const { return sym_; }
  const std::vector<Term>& args() const {
    static const std::vector<Term> none;
    return args_ ? *args_ : none;
  }

  int depth() const {
    if (!args_) return 0;
    int d = 0;
    for (const Term& a : *args_) d = std::max(d, a.depth());
    return d + 1;
  }

  bool operator==(const Term& o) const {
    if (var_ != o.var_ || sym_ != o.sym_) return false;
    if (!args_ && !o.args_) return true;
    if (!args_ || !o.args_) return false;
    if (args_ == o.args_) return true;
    return *args_ == *o.args_;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  int var_ = -1;
  SymbolId sym_ = -1;
  std::shared_ptr<const std::vector<Term>> args_;
};

struct Atom {
  SymbolId pred = -1;
  std::vector<Term> args;

  bool operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
  bool operator!=(const Atom& o) const { return !(*this == o); }
};

struct Literal {
  bool positive = true;
  Atom atom;

  Literal negated() const { return {!positive, atom}; }
  bool operator==(const Literal& o) const { return positive == o.positive && atom == o.atom; }
  bool operator!=(const Literal& o) const { return !(*this == o); }
};

struct Clause {
  std::vector<Literal> lits;
  int64_t id = -1;

  bool empty() const { return lits.empty(); }
  size_t size() const { return lits.size(); }
};

inline bool occurs_in(int v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  for (const Term& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

inline void collect_vars(const Term& t, std::vector<int>& out) {
  if (t.is_var()) {
    out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, std::vector<int>& out) {
  for (const Term& t : a.args) collect_vars(t, out);
}

// Sorted, duplicate-free variable list.
inline std::vector<int> term_vars(const Term& t) {
  std::vector<int> v;
  collect_vars(t, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<int> atom_vars(const Atom& a) {
  std::vector<int> v;
  collect_vars(a, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<int> literal_vars(const Literal& l) { return atom_vars(l.atom); }

inline std::vector<int> clause_vars(const Clause& c) {
  std::vector<int> v;
  for (const Literal& l : c.lits) collect_vars(l.atom, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline int weight(const Term& t) {
  if (t.is_var()) return 1;
  int w = 1;
  for (const Term& a : t.args()) w += weight(a);
  return w;
}

inline int weight(const Atom& a) {
  int w = 1;
  for (const Term& t : a.args) w += weight(t);
  return w;
}

inline int weight(const Clause& c) {
  int w = 0;
  for (const Literal& l : c.lits) w += weight(l.atom);
  return w;
}

// Structure key that blanks out variable identity; used to bucket literals
// for sorting and variant matching.
inline void skeleton(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += '*';
    return;
  }
  out += 's';
  out += std::to_string(t.sym());
  if (t.is_compound()) {
    out += '(';
    for (const Term& a : t.args()) {
      skeleton(a, out);
      out += ',';
    }
    out += ')';
  }
}

inline std::string skeleton(const Literal& l) {
  std::string out;
  out += l.positive ? '+' : '-';
  out += std::to_string(l.atom.pred);
  out += '(';
  for (const Term& t : l.atom.args) {
    skeleton(t, out);
    out += ',';
  }
  out += ')';
  return out;
}

inline Term apply_var_map(const Term& t, const std::vector<int>& var_map) {
  if (t.is_var()) return Term::var(var_map[t.var_id()]);
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_var_map(a, var_map));
  return Term::fun(t.sym(), std::move(args));
}

// Deterministic form: literals sorted by variable-blind skeleton (stable),
// variables renumbered 0.. by first occurrence. Variants need not normalize
// to identical clauses; equality of normal forms implies variance only.
inline Clause normalize_clause(const Clause& c) {
  Clause out;
  out.id = c.id;
  out.lits = c.lits;
  std::stable_sort(out.lits.begin(), out.lits.end(),
                   [](const Literal& a, const Literal& b) { return skeleton(a) < skeleton(b); });
  std::vector<int> order;
  for (const Literal& l : out.lits) collect_vars(l.atom, order);
  int max_var = -1;
  for (int v : order) max_var = std::max(max_var, v);
  std::vector<int> var_map(max_var + 1, -1);
  int next = 0;
  for (int v : order)
    if (var_map[v] < 0) var_map[v] = next++;
  for (Literal& l : out.lits)
    for (Term& t : l.atom.args) t = apply_var_map(t, var_map);
  return out;
}

inline std::string to_string(const Term& t, const Signature& sig) {
  if (t.is_var()) return "X" + std::to_string(t.var_id());
  std::string s = sig.name(t.sym());
  if (t.is_compound()) {
    s += '(';
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) s += ',';
      s += to_string(t.args()[i], sig);
    }
    s += ')';
  }
  return s;
}

inline std::string to_string(const Atom& a, const Signature& sig) {
  std::string s = sig.name(a.pred);
  if (!a.args.empty()) {
    s += '(';
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ',';
      s += to_string(a.args[i], sig);
    }
    s += ')';
  }
  return s;
}

inline std::string to_string(const Literal& l, const Signature& sig) {
  return (l.positive ? "" : "~") + to_string(l.atom, sig);
}

inline std::string to_string(const Clause& c, const Signature& sig) {
  if (c.lits.empty()) return "false";
  std::string s;
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += " | ";
    s += to_string(c.lits[i], sig);
  }
  return s;
}

}  // namespace gqe
