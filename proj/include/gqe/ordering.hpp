#pragma once

#include <vector>

#include "gqe/symbols.hpp"
#include "gqe/term.hpp"

namespace gqe {

// Atoms are compared as terms rooted at the predicate symbol.
inline Term atom_term(const Atom& a) {
  return a.args.empty() ? Term::constant(a.pred) : Term::fun(a.pred, a.args);
}

// Lexicographic path order. Total on ground terms, stable under
// substitution, compatible with the subterm relation.
inline bool lpo_greater(const Term& s, const Term& t, const Precedence& prec) {
  if (s == t) return false;
  if (s.is_var()) return false;
  if (t.is_var()) return occurs_in(t.var_id(), s);
  for (const Term& si : s.args())
    if (si == t || lpo_greater(si, t, prec)) return true;
  if (prec.greater(s.sym(), t.sym())) {
    for (const Term& tj : t.args())
      if (!lpo_greater(s, tj, prec)) return false;
    return true;
  }
  if (s.sym() == t.sym()) {
    size_t n = std::min(s.args().size(), t.args().size());
    for (size_t i = 0; i < n; ++i) {
      if (s.args()[i] == t.args()[i]) continue;
      if (!lpo_greater(s.args()[i], t.args()[i], prec)) return false;
      for (size_t j = i + 1; j < t.args().size(); ++j)
        if (!lpo_greater(s, t.args()[j], prec)) return false;
      return true;
    }
  }
  return false;
}

inline bool atom_greater(const Atom& a, const Atom& b, const Precedence& prec) {
  return lpo_greater(atom_term(a), atom_term(b), prec);
}

// Literal order: compare atoms; on identical atoms the negative literal is
// the bigger one.
inline bool literal_greater(const Literal& a, const Literal& b, const Precedence& prec) {
  if (a.atom == b.atom) return !a.positive && b.positive;
  return atom_greater(a.atom, b.atom, prec);
}

inline std::vector<size_t> maximal_literals(const Clause& c, const Precedence& prec) {
  std::vector<size_t> out;
  for (size_t i = 0; i < c.lits.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < c.lits.size() && !dominated; ++j)
      if (j != i && literal_greater(c.lits[j], c.lits[i], prec)) dominated = true;
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Strict: no other literal is greater or equal.
inline bool strictly_maximal(const Clause& c, size_t i, const Precedence& prec) {
  for (size_t j = 0; j < c.lits.size(); ++j) {
    if (j == i) continue;
    if (c.lits[j] == c.lits[i] || literal_greater(c.lits[j], c.lits[i], prec)) return false;
  }
  return true;
}

}  // namespace gqe
