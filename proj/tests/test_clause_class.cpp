#include <catch2/catch_amalgamated.hpp>

#include "gqe/clause_class.hpp"

using namespace gqe;

namespace {

struct Fx {
  Signature sig;
  SymbolId A = sig.predicate("A", 2);
  SymbolId B = sig.predicate("B", 2);
  SymbolId C3 = sig.predicate("C3", 3);
  SymbolId D = sig.predicate("D", 2);
  SymbolId E = sig.predicate("E", 2);
  SymbolId P1 = sig.predicate("P1", 1);
  SymbolId Bf = sig.predicate("Bf", 1);
  SymbolId b = sig.constant("b");
  SymbolId f = sig.function("f", 2);
  SymbolId g = sig.function("g", 1);

  Term x = Term::var(0);
  Term y = Term::var(1);
  Term z = Term::var(2);
  Term cb = Term::constant(b);

  Literal neg(SymbolId p, std::vector<Term> args) { return {false, {p, std::move(args)}}; }
  Literal pos(SymbolId p, std::vector<Term> args) { return {true, {p, std::move(args)}}; }
};

}  // namespace

TEST_CASE("shape predicates") {
  Fx t;
  Literal flat = t.neg(t.A, {t.x, t.cb});
  Literal simple = t.pos(t.Bf, {Term::fun(t.f, {t.x, t.y})});
  Literal deep = t.pos(t.Bf, {Term::fun(t.g, {Term::fun(t.g, {t.x})})});
  REQUIRE(is_flat(flat));
  REQUIRE_FALSE(is_flat(simple));
  REQUIRE(is_simple(simple));
  REQUIRE_FALSE(is_simple(deep));

  Clause cov;
  cov.lits = {t.neg(t.A, {t.x, t.y}), simple};
  REQUIRE(is_covering(cov));
  Clause notcov;
  notcov.lits = {t.neg(t.A, {t.x, t.z}), simple};
  REQUIRE_FALSE(is_covering(notcov));
  // ground compounds are covering in a ground clause
  Clause gc;
  gc.lits = {t.pos(t.Bf, {Term::fun(t.g, {t.cb})})};
  REQUIRE(is_covering(gc));
}

TEST_CASE("query clauses are nonempty, flat and all-negative") {
  Fx t;
  Clause q;
  q.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.B, {t.y, t.z})};
  REQUIRE(is_query_clause(q));
  Clause withConst;
  withConst.lits = {t.neg(t.C3, {t.x, t.y, t.cb})};
  REQUIRE(is_query_clause(withConst));
  Clause posIn;
  posIn.lits = {t.neg(t.A, {t.x, t.y}), t.pos(t.B, {t.y, t.x})};
  REQUIRE_FALSE(is_query_clause(posIn));
  Clause compound;
  compound.lits = {t.neg(t.Bf, {Term::fun(t.g, {t.x})})};
  REQUIRE_FALSE(is_query_clause(compound));
  REQUIRE_FALSE(is_query_clause(Clause{}));
}

TEST_CASE("classification of the canonical shapes") {
  Fx t;
  // guarded and a query clause
  Clause gq;
  gq.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.P1, {t.x})};
  auto k1 = classify(gq);
  REQUIRE(k1.category == ClauseCategory::Guarded);
  REQUIRE(k1.query);
  REQUIRE(k1.guard_index == 0);

  // guarded, not a query clause
  Clause gpos;
  gpos.lits = {t.neg(t.A, {t.x, t.y}), t.pos(t.Bf, {Term::fun(t.f, {t.x, t.y})})};
  auto k2 = classify(gpos);
  REQUIRE(k2.category == ClauseCategory::Guarded);
  REQUIRE_FALSE(k2.query);

  // query clause, neither guarded nor loosely guarded
  Clause qonly;
  qonly.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.B, {t.y, t.z})};
  auto k3 = classify(qonly);
  REQUIRE(k3.category == ClauseCategory::Query);

  // loosely guarded: every variable pair co-occurs in a negative literal
  Clause lg;
  lg.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.B, {t.y, t.z}), t.neg(t.D, {t.z, t.x}),
             t.pos(t.Bf, {Term::fun(t.f, {t.x, t.y})})};
  // covering needs VarC = {x,y}; use a 3-var flat clause instead
  lg.lits.pop_back();
  auto k4 = classify(lg);
  REQUIRE(k4.category == ClauseCategory::LooselyGuarded);
  REQUIRE(k4.loose_guards == std::vector<size_t>{0, 1, 2});

  // ground simple clause
  Clause ground;
  ground.lits = {t.pos(t.Bf, {Term::fun(t.g, {t.cb})}), t.neg(t.P1, {t.cb})};
  REQUIRE(classify(ground).category == ClauseCategory::Ground);

  // non-simple clause falls out of every class
  Clause deep;
  deep.lits = {t.pos(t.Bf, {Term::fun(t.g, {Term::fun(t.g, {t.cb})})})};
  REQUIRE(classify(deep).category == ClauseCategory::Other);

  // positive non-ground flat clause is in no class
  Clause posOnly;
  posOnly.lits = {t.pos(t.A, {t.x, t.y})};
  REQUIRE(classify(posOnly).category == ClauseCategory::Other);

  // a single positive literal guarded by nothing: loose guard check needs
  // every variable to occur in some negative flat literal
  Clause oneVar;
  oneVar.lits = {t.pos(t.P1, {t.x})};
  REQUIRE(classify(oneVar).category == ClauseCategory::Other);
}

TEST_CASE("chained and isolated variables of the two reference queries") {
  Fx t;
  Term x1 = Term::var(1), x2 = Term::var(2), x3 = Term::var(3), x4 = Term::var(4),
       x5 = Term::var(5), x6 = Term::var(6), x7 = Term::var(7), x8 = Term::var(8),
       x9 = Term::var(9);

  Clause qa;
  qa.lits = {t.neg(t.A, {x1, x2}), t.neg(t.B, {x2, x3}), t.neg(t.C3, {x3, x4, x5}),
             t.neg(t.D, {x5, x6}), t.neg(t.E, {x3, x4})};
  auto va = variable_analysis(qa);
  REQUIRE(va.surface == std::vector<size_t>{0, 1, 2, 3});
  REQUIRE(va.chained == std::vector<int>{2, 3, 5});
  REQUIRE(va.isolated == std::vector<int>{1, 4, 6});

  Signature sig3;
  SymbolId A3 = sig3.predicate("A", 3);
  SymbolId B3 = sig3.predicate("B", 3);
  SymbolId C3 = sig3.predicate("C", 3);
  SymbolId D3 = sig3.predicate("D", 3);
  SymbolId E3 = sig3.predicate("E", 3);
  Clause qc;
  qc.lits = {{false, {A3, {x1, x2, x3}}},
             {false, {B3, {x3, x4, x5}}},
             {false, {C3, {x5, x6, x7}}},
             {false, {D3, {x1, x7, x8}}},
             {false, {E3, {x3, x4, x9}}}};
  auto vc = variable_analysis(qc);
  REQUIRE(vc.surface == std::vector<size_t>{0, 1, 2, 3, 4});
  REQUIRE(vc.chained == std::vector<int>{1, 3, 4, 5, 7});
  REQUIRE(vc.isolated == std::vector<int>{2, 6, 8, 9});
}

TEST_CASE("chained-only and isolated-only recognition") {
  Fx t;
  Clause cycle;
  cycle.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.B, {t.y, t.z}), t.neg(t.D, {t.z, t.x})};
  auto va = variable_analysis(cycle);
  REQUIRE(va.isolated.empty());
  REQUIRE(va.chained == std::vector<int>{0, 1, 2});

  Clause iso;
  iso.lits = {t.neg(t.C3, {t.x, t.y, t.z}), t.neg(t.B, {t.y, t.z})};
  auto vi = variable_analysis(iso);
  REQUIRE(vi.chained.empty());
  REQUIRE(vi.isolated == std::vector<int>{0, 1, 2});
  REQUIRE(vi.surface == std::vector<size_t>{0});

  // identical variable sets do not chain
  Clause same;
  same.lits = {t.neg(t.A, {t.x, t.y}), t.neg(t.B, {t.y, t.x})};
  auto vs = variable_analysis(same);
  REQUIRE(vs.chained.empty());
  REQUIRE(vs.surface.size() == 2);
}

TEST_CASE("component split") {
  Fx t;
  Clause c;
  c.lits = {t.pos(t.A, {t.x, t.x}), t.neg(t.P1, {t.x}), t.pos(t.P1, {t.y}),
            t.neg(t.Bf, {t.cb})};
  auto comps = split_components(c);
  REQUIRE(comps.size() == 3);
  size_t sizes = 0;
  for (const auto& comp : comps) sizes += comp.lits.size();
  REQUIRE(sizes == 4);

  Clause linked;
  linked.lits = {t.pos(t.A, {t.x, t.y}), t.neg(t.P1, {t.y})};
  REQUIRE(split_components(linked).size() == 1);
}
