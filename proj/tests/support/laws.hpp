#pragma once

#include <random>
#include <string>

#include "gqe/ordering.hpp"
#include "gqe/subst.hpp"
#include "random_gen.hpp"

namespace gqe::testgen {

struct LawReport {
  long cases = 0;
  long violations = 0;
  std::string first_violation;

  void fail(const std::string& what) {
    ++violations;
    if (first_violation.empty()) first_violation = what;
  }
};

// Unification laws: soundness (result unifies), idempotence, success on
// instance pairs, generality against a known unifier, occurs check,
// symmetry, and agreement with ground enumeration in the flat case.
inline LawReport mgu_laws(unsigned seed, long n) {
  std::mt19937 rng(seed);
  Signature sig;
  TermPool pool = make_pool(sig);
  LawReport rep;
  for (long i = 0; i < n; ++i) {
    ++rep.cases;
    switch (i % 5) {
      case 0: {  // soundness + idempotence on arbitrary pairs
        Atom a = random_atom(rng, pool, 2);
        Atom b = random_atom(rng, pool, 2);
        auto s = mgu(a, b);
        if (!s) break;
        Atom ai = s->apply(a);
        if (ai != s->apply(b)) rep.fail("mgu result does not unify");
        if (s->apply(ai) != ai) rep.fail("mgu not idempotent");
        break;
      }
      case 1: {  // instance pairs unify; generality vs the known unifier
        Atom a = random_atom(rng, pool, 1);
        VarMap known;
        for (int v = 0; v < pool.num_vars; ++v) {
          TermPool shifted = pool;
          Term t = random_term(rng, shifted, 1);
          VarMap lift;
          for (int w : term_vars(t)) lift.emplace(w, Term::var(w + 10));
          known.emplace(v, apply_map(t, lift));
        }
        Atom b = apply_map(a, known);
        auto s = mgu(a, b);
        if (!s) {
          rep.fail("instance pair did not unify");
          break;
        }
        VarMap delta;
        if (!match_atom(s->apply(a), b, delta) || !match_atom(s->apply(b), b, delta))
          rep.fail("mgu not most general");
        break;
      }
      case 2: {  // occurs check
        int v = std::uniform_int_distribution<int>(0, pool.num_vars - 1)(rng);
        Term inner = random_term(rng, pool, 1);
        Term t = Term::fun(pool.functions[0], {Term::var(v)});
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          t = Term::fun(pool.functions[2], {inner, t});
        if (mgu(Term::var(v), t)) rep.fail("occurs check missed");
        break;
      }
      case 3: {  // symmetry up to variance
        Atom a = random_atom(rng, pool, 2);
        Atom b = random_atom(rng, pool, 2);
        auto s1 = mgu(a, b);
        auto s2 = mgu(b, a);
        if (static_cast<bool>(s1) != static_cast<bool>(s2)) {
          rep.fail("mgu success depends on argument order");
          break;
        }
        if (s1) {
          Clause c1, c2;
          c1.lits = {{true, s1->apply(a)}};
          c2.lits = {{true, s2->apply(a)}};
          if (!is_variant(c1, c2)) rep.fail("mgu results not variants across argument order");
        }
        break;
      }
      case 4: {  // flat case agrees with exhaustive grounding
        Atom a = random_flat_atom(rng, pool);
        Atom b = random_flat_atom(rng, pool);
        bool unifiable = static_cast<bool>(mgu(a, b));
        std::vector<int> vars;
        collect_vars(a, vars);
        collect_vars(b, vars);
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        bool ground_hit = false;
        size_t k = pool.constants.size();
        size_t total = 1;
        for (size_t j = 0; j < vars.size(); ++j) total *= k;
        for (size_t mask = 0; mask < total && !ground_hit; ++mask) {
          VarMap g;
          size_t m = mask;
          for (int v : vars) {
            g.emplace(v, Term::constant(pool.constants[m % k]));
            m /= k;
          }
          ground_hit = apply_map(a, g) == apply_map(b, g);
        }
        if (unifiable != ground_hit) rep.fail("flat unifiability disagrees with grounding");
        break;
      }
    }
  }
  return rep;
}

// Order laws: irreflexivity, antisymmetry, transitivity, subterm
// compatibility, stability under substitution, ground totality. Checked
// under the default precedence and a shuffled override.
inline LawReport lpo_laws(unsigned seed, long n) {
  std::mt19937 rng(seed);
  Signature sig;
  TermPool pool = make_pool(sig);
  Precedence base(sig);
  Precedence shuffled(sig);
  {
    std::vector<SymbolId> all;
    for (SymbolId s = 0; s < static_cast<SymbolId>(sig.size()); ++s) all.push_back(s);
    std::shuffle(all.begin(), all.end(), rng);
    shuffled.set_order(all);
  }
  LawReport rep;
  for (long i = 0; i < n; ++i) {
    ++rep.cases;
    const Precedence& prec = (i % 2 == 0) ? base : shuffled;
    Term s = random_term(rng, pool, 2);
    Term t = random_term(rng, pool, 2);
    Term u = random_term(rng, pool, 2);
    if (lpo_greater(s, s, prec)) rep.fail("lpo not irreflexive");
    if (lpo_greater(s, t, prec) && lpo_greater(t, s, prec)) rep.fail("lpo not antisymmetric");
    if (lpo_greater(s, t, prec) && lpo_greater(t, u, prec) && !lpo_greater(s, u, prec))
      rep.fail("lpo not transitive");
    if (s.is_compound())
      for (const Term& arg : s.args())
        if (!lpo_greater(s, arg, prec)) rep.fail("lpo misses subterm property");
    if (lpo_greater(s, t, prec)) {
      Substitution sub;
      for (int v = 0; v < pool.num_vars; ++v)
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          sub.bind(v, random_term(rng, pool, 1, true));
      if (!lpo_greater(sub.apply(s), sub.apply(t), prec)) rep.fail("lpo not stable");
    }
    Term gs = random_term(rng, pool, 2, true);
    Term gt = random_term(rng, pool, 2, true);
    if (gs != gt) {
      int cmp = (lpo_greater(gs, gt, prec) ? 1 : 0) + (lpo_greater(gt, gs, prec) ? 1 : 0);
      if (cmp != 1) rep.fail("lpo not total on ground terms");
    }
  }
  return rep;
}

}  // namespace gqe::testgen
