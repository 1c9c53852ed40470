#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "gqe/engine.hpp"

using namespace gqe;

namespace {

Literal lit(bool positive, SymbolId pred, std::vector<Term> args) {
  return Literal{positive, Atom{pred, std::move(args)}};
}

Clause clause(std::vector<Literal> lits) {
  Clause c;
  c.lits = std::move(lits);
  return c;
}

}  // namespace

TEST_CASE("refutation of an unsatisfiable loosely guarded set") {
  Signature sig;
  SymbolId f = sig.function("f", 1);
  SymbolId g = sig.function("g", 1);
  SymbolId ca = sig.constant("a");
  SymbolId cb = sig.constant("b");
  SymbolId bp = sig.predicate("bp", 3);
  SymbolId a1 = sig.predicate("a1", 2);
  SymbolId a2 = sig.predicate("a2", 2);
  SymbolId a3 = sig.predicate("a3", 2);
  SymbolId dp = sig.predicate("dp", 1);
  SymbolId g1 = sig.predicate("g1", 1);
  SymbolId g2 = sig.predicate("g2", 1);
  SymbolId g3 = sig.predicate("g3", 1);

  Precedence prec(sig);
  prec.set_order({f, g, ca, cb, bp, a1, a2, a3, dp, g1, g2, g3});

  Term x = Term::var(1), y = Term::var(2), z = Term::var(3);
  Term a = Term::constant(ca), b = Term::constant(cb);
  Term fx = Term::fun(f, {x}), gx = Term::fun(g, {x}), fa = Term::fun(f, {a});

  std::vector<Clause> input = {
      clause({lit(false, a1, {x, y}), lit(false, a2, {y, z}), lit(false, a3, {z, x}),
              lit(true, bp, {x, y, b})}),
      clause({lit(true, a3, {x, fx}), lit(false, g3, {x})}),
      clause({lit(true, a2, {fx, fx}), lit(false, g2, {x})}),
      clause({lit(true, a1, {fx, x}), lit(true, dp, {gx}), lit(false, g1, {x})}),
      clause({lit(false, bp, {x, y, b})}),
      clause({lit(false, dp, {x})}),
      clause({lit(true, g1, {fa})}),
      clause({lit(true, g3, {fa})}),
      clause({lit(true, g2, {a})}),
  };

  int derived_calls = 0;
  EngineOptions opt;
  opt.on_derived = [&](const Clause&, const std::string&) { ++derived_calls; };
  Engine eng(sig, prec, opt);
  for (const Clause& c : input) eng.add_input(c);

  auto t0 = std::chrono::steady_clock::now();
  SatStatus st = eng.saturate();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

  REQUIRE(st == SatStatus::Refuted);
  CHECK(ms < 1000);
  REQUIRE(eng.log().size() == 14);
  CHECK(eng.empty_clause_id() == 14);
  CHECK(derived_calls == 5);
  CHECK(eng.stats().tautologies == 0);
  CHECK(eng.stats().variants == 0);
  CHECK(eng.stats().subsumed == 0);

  CHECK(eng.active_ids() == std::vector<int>{6, 9, 7, 8, 5, 2, 3, 4, 1, 10, 11, 12, 13});

  Clause c10 = clause({lit(false, a2, {x, x}), lit(true, bp, {fx, x, b}), lit(true, dp, {gx}),
                       lit(false, g1, {x}), lit(false, g3, {x})});
  Clause c11 = clause(
      {lit(false, a2, {x, x}), lit(true, dp, {gx}), lit(false, g1, {x}), lit(false, g3, {x})});
  Clause c12 = clause({lit(false, a2, {x, x}), lit(false, g1, {x}), lit(false, g3, {x})});
  Clause c13 = clause({lit(false, g2, {a})});

  INFO(eng.format_proof());
  CHECK(is_variant(eng.clause(10), c10));
  CHECK(is_variant(eng.clause(11), c11));
  CHECK(is_variant(eng.clause(12), c12));
  CHECK(is_variant(eng.clause(13), c13));
  CHECK(eng.clause(14).empty());

  CHECK(eng.log()[9].rule == "t_res");
  CHECK(eng.log()[9].parents == std::vector<int>{1, 4, 2});
  CHECK(eng.log()[10].rule == "res");
  CHECK(eng.log()[10].parents == std::vector<int>{10, 5});
  CHECK(eng.log()[11].rule == "res");
  CHECK(eng.log()[11].parents == std::vector<int>{11, 6});
  CHECK(eng.log()[12].rule == "t_res");
  CHECK(eng.log()[12].parents == std::vector<int>{12, 7, 8, 3});
  CHECK(eng.log()[13].rule == "res");
  CHECK(eng.log()[13].parents == std::vector<int>{9, 13});

  CHECK(eng.validate_log());
}

TEST_CASE("a satisfiable guarded set saturates") {
  Signature sig;
  SymbolId gp = sig.predicate("G", 1);
  SymbolId pp = sig.predicate("P", 1);
  SymbolId ca = sig.constant("a");
  Precedence prec(sig);

  Term x = Term::var(1), a = Term::constant(ca);
  Engine eng(sig, prec);
  eng.add_input(clause({lit(true, gp, {a})}));
  eng.add_input(clause({lit(false, gp, {x}), lit(true, pp, {x})}));

  REQUIRE(eng.saturate() == SatStatus::Saturated);
  REQUIRE(eng.log().size() == 3);
  CHECK(eng.log()[2].rule == "res");
  CHECK(eng.log()[2].parents == std::vector<int>{1, 2});
  CHECK(is_variant(eng.clause(3), clause({lit(true, pp, {a})})));
  CHECK(eng.empty_clause_id() == -1);
  CHECK(eng.validate_log());
}

TEST_CASE("forward subsumption discards weaker clauses") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 1);
  SymbolId qp = sig.predicate("Q", 1);
  SymbolId ca = sig.constant("a");
  SymbolId cbb = sig.constant("b");
  Precedence prec(sig);

  Term a = Term::constant(ca), b = Term::constant(cbb);
  Engine eng(sig, prec);
  int wide = eng.add_input(clause({lit(true, pp, {a}), lit(true, qp, {b})}));
  int unit = eng.add_input(clause({lit(true, pp, {a})}));

  REQUIRE(eng.saturate() == SatStatus::Saturated);
  CHECK(eng.stats().subsumed == 1);
  CHECK_FALSE(eng.is_live(wide));
  CHECK(eng.is_live(unit));
  CHECK(eng.active_ids() == std::vector<int>{unit});
}

TEST_CASE("tautologies and variants are never registered") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 1);
  SymbolId ca = sig.constant("a");
  Precedence prec(sig);

  Term x = Term::var(1), y = Term::var(2), a = Term::constant(ca);
  Engine eng(sig, prec);
  CHECK(eng.add_input(clause({lit(true, pp, {a}), lit(false, pp, {a})})) == -1);
  CHECK(eng.stats().tautologies == 1);
  CHECK(eng.add_input(clause({lit(true, pp, {x})})) == 1);
  CHECK(eng.add_input(clause({lit(true, pp, {y})})) == -1);
  CHECK(eng.stats().variants == 1);
  CHECK(eng.log().size() == 1);
}

TEST_CASE("generated clauses are condensed before registration") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 2);
  SymbolId ca = sig.constant("a");
  Precedence prec(sig);

  Term x = Term::var(1), y = Term::var(2), a = Term::constant(ca);
  Engine eng(sig, prec);
  int id = eng.add_input(clause({lit(false, pp, {x, y}), lit(false, pp, {a, y})}));
  REQUIRE(id == 1);
  CHECK(eng.log()[0].condensed);
  CHECK(is_variant(eng.clause(1), clause({lit(false, pp, {a, y})})));
}

TEST_CASE("maximal-mode factoring collapses unifiable heads") {
  Signature sig;
  SymbolId qp = sig.predicate("Q", 2);
  SymbolId ca = sig.constant("a");
  Precedence prec(sig);

  Term x = Term::var(1), a = Term::constant(ca);
  Engine eng(sig, prec);
  eng.add_input(clause({lit(true, qp, {x, a}), lit(true, qp, {a, x})}));

  REQUIRE(eng.saturate() == SatStatus::Saturated);
  REQUIRE(eng.log().size() == 2);
  CHECK(eng.log()[1].rule == "fact");
  CHECK(eng.log()[1].parents == std::vector<int>{1});
  CHECK(is_variant(eng.clause(2), clause({lit(true, qp, {a, a})})));
  CHECK(eng.validate_log());
}

TEST_CASE("resource limits raise resource errors") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 1);
  SymbolId ca = sig.constant("a");
  SymbolId cbb = sig.constant("b");
  SymbolId cc = sig.constant("c");
  Precedence prec(sig);
  Term a = Term::constant(ca), b = Term::constant(cbb), c = Term::constant(cc);

  SECTION("clause count") {
    EngineOptions opt;
    opt.max_clauses = 2;
    Engine eng(sig, prec, opt);
    eng.add_input(clause({lit(true, pp, {a})}));
    eng.add_input(clause({lit(true, pp, {b})}));
    CHECK_THROWS_AS(eng.add_input(clause({lit(true, pp, {c})})), ResourceError);
  }
  SECTION("clause width") {
    EngineOptions opt;
    opt.max_literals = 2;
    Engine eng(sig, prec, opt);
    CHECK_THROWS_AS(
        eng.add_input(clause({lit(true, pp, {a}), lit(true, pp, {b}), lit(true, pp, {c})})),
        ResourceError);
  }
}
