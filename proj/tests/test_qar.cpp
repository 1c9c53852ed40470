#include <catch2/catch_amalgamated.hpp>

#include "gqe/qar.hpp"

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

Clause unit(SymbolId pred, std::vector<Term> args) { return clause({lit(true, pred, args)}); }

}  // namespace

TEST_CASE("an entailed atomic query refutes in one resolution step") {
  Signature sig;
  SymbolId ap = sig.predicate("A", 2);
  SymbolId bp = sig.predicate("B", 2);
  SymbolId cp = sig.predicate("C", 2);
  SymbolId d1 = sig.fresh_definer(1);
  SymbolId f = sig.function("f", 2);
  SymbolId ca = sig.constant("a");
  SymbolId cb = sig.constant("b");
  Precedence prec(sig);

  Term x = Term::var(1), y = Term::var(2), z = Term::var(3);
  Term a = Term::constant(ca), b = Term::constant(cb);

  std::vector<Clause> theory = {
      unit(ap, {a, b}),
      unit(d1, {a}),
      clause({lit(false, d1, {x}), lit(false, bp, {x, z}),
              lit(true, cp, {z, Term::fun(f, {x, z})})}),
  };
  std::vector<Clause> queries = {clause({lit(false, ap, {x, y})})};

  QarResult r = q_ar(theory, queries, {}, QarMode::Answer, sig, prec);
  REQUIRE(r.yes);
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].refuted);
  CHECK(!r.branches[0].proof.empty());
  CHECK(r.definers_introduced == 0);
}

TEST_CASE("rewrite mode returns the saturated set when nothing derives") {
  Signature sig;
  SymbolId ap = sig.predicate("A", 1);
  Precedence prec(sig);
  Term x = Term::var(1);

  std::vector<Clause> queries = {clause({lit(false, ap, {x})})};
  QarResult r = q_ar({}, queries, {}, QarMode::Rewrite, sig, prec);
  REQUIRE_FALSE(r.yes);
  REQUIRE(r.branches.size() == 1);
  REQUIRE(r.branches[0].saturated.size() == 1);
  CHECK(is_variant(r.branches[0].saturated[0], clause({lit(false, ap, {x})})));
  CHECK(r.branches[0].residual_queries.empty());
}

TEST_CASE("answering with ground data replays the saturation refutation") {
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

  std::vector<Clause> theory = {
      clause({lit(false, a1, {x, y}), lit(false, a2, {y, z}), lit(false, a3, {z, x}),
              lit(true, bp, {x, y, b})}),
      clause({lit(true, a3, {x, fx}), lit(false, g3, {x})}),
      clause({lit(true, a2, {fx, fx}), lit(false, g2, {x})}),
      clause({lit(true, a1, {fx, x}), lit(true, dp, {gx}), lit(false, g1, {x})}),
  };
  std::vector<Clause> data = {unit(g1, {fa}), unit(g3, {fa}), unit(g2, {a})};
  std::vector<Clause> queries = {clause({lit(false, bp, {x, y, b})}),
                                 clause({lit(false, dp, {x})})};

  QarResult r = q_ar(theory, queries, data, QarMode::Answer, sig, prec);
  REQUIRE(r.yes);
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].proof.find("false") != std::string::npos);
  CHECK(r.definers_introduced == 0);
}

TEST_CASE("decomposable queries branch and all branches must refute") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 1);
  SymbolId qp = sig.predicate("Q", 1);
  SymbolId ca = sig.constant("a");
  SymbolId cb = sig.constant("b");
  Precedence prec(sig);
  Term x = Term::var(1), y = Term::var(2);
  Term a = Term::constant(ca), b = Term::constant(cb);

  std::vector<Clause> query = {clause({lit(false, pp, {x}), lit(false, qp, {y})})};

  SECTION("one component unsupported") {
    QarResult r = q_ar({unit(pp, {a})}, query, {}, QarMode::Answer, sig, prec);
    REQUIRE(r.branches.size() == 2);
    CHECK_FALSE(r.yes);
    CHECK((r.branches[0].refuted ^ r.branches[1].refuted));
  }
  SECTION("both components supported") {
    QarResult r = q_ar({unit(pp, {a}), unit(qp, {b})}, query, {}, QarMode::Answer, sig, prec);
    REQUIRE(r.branches.size() == 2);
    CHECK(r.yes);
    CHECK(r.branches[0].refuted);
    CHECK(r.branches[1].refuted);
  }
}

TEST_CASE("acyclic queries separate and saturate with the theory") {
  Signature sig;
  SymbolId ap = sig.predicate("A", 2);
  SymbolId bp = sig.predicate("B", 2);
  Precedence prec(sig);
  Term x = Term::var(1), y = Term::var(2), z = Term::var(3);

  std::vector<Clause> queries = {clause({lit(false, ap, {x, y}), lit(false, bp, {y, z})})};
  QarResult r = q_ar({}, queries, {}, QarMode::Rewrite, sig, prec);
  REQUIRE_FALSE(r.yes);
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].residual_queries.empty());
  CHECK(r.branches[0].saturated.size() == 2);
  CHECK(r.definers_introduced == 1);
}

TEST_CASE("cyclic queries resolve against every fact tuple") {
  Signature sig;
  SymbolId ap = sig.predicate("A", 2);
  SymbolId bp = sig.predicate("B", 2);
  SymbolId cp = sig.predicate("C", 2);
  SymbolId dp = sig.predicate("D", 2);
  SymbolId zp = sig.predicate("Z", 1);
  SymbolId ca = sig.constant("a");
  SymbolId cb = sig.constant("b");
  Precedence prec(sig);
  Term x = Term::var(1), y = Term::var(2), z = Term::var(3), w = Term::var(4);
  Term a = Term::constant(ca), b = Term::constant(cb);

  std::vector<Clause> cycle = {
      clause({lit(false, ap, {x, y}), lit(false, bp, {y, z}), lit(false, cp, {z, w}),
              lit(false, dp, {w, x})})};
  REQUIRE(classify(cycle[0]).category == ClauseCategory::Query);

  SECTION("a later tuple still refutes past a decoy tuple") {
    std::vector<Clause> theory = {
        clause({lit(true, ap, {a, a}), lit(true, zp, {a})}),
        clause({lit(true, bp, {a, a}), lit(true, zp, {a})}),
        clause({lit(true, cp, {a, a}), lit(true, zp, {a})}),
        clause({lit(true, dp, {a, a}), lit(true, zp, {a})}),
    };
    std::vector<Clause> data = {unit(ap, {b, b}), unit(bp, {b, b}), unit(cp, {b, b}),
                                unit(dp, {b, b})};
    QarResult r = q_ar(theory, cycle, data, QarMode::Answer, sig, prec);
    CHECK(r.yes);
    CHECK(r.definers_introduced == 0);
  }
  SECTION("a missing edge leaves the query irreducible") {
    std::vector<Clause> data = {unit(ap, {b, b}), unit(bp, {b, b}), unit(cp, {b, b})};
    QarResult r = q_ar({}, cycle, data, QarMode::Answer, sig, prec);
    REQUIRE_FALSE(r.yes);
    REQUIRE(r.branches.size() == 1);
    REQUIRE(r.branches[0].residual_queries.size() == 1);
    CHECK(is_variant(r.branches[0].residual_queries[0], cycle[0]));
  }
}

TEST_CASE("malformed q_ar inputs are rejected") {
  Signature sig;
  SymbolId pp = sig.predicate("P", 1);
  SymbolId qp = sig.predicate("Q", 1);
  SymbolId ca = sig.constant("a");
  Precedence prec(sig);
  Term x = Term::var(1), y = Term::var(2), a = Term::constant(ca);

  CHECK_THROWS_AS(q_ar({}, {unit(pp, {a})}, {}, QarMode::Answer, sig, prec), InputError);
  CHECK_THROWS_AS(
      q_ar({clause({lit(true, pp, {x}), lit(true, qp, {y})})}, {}, {}, QarMode::Answer, sig, prec),
      InputError);
  CHECK_THROWS_AS(
      q_ar({}, {clause({lit(false, pp, {x})})}, {unit(pp, {a})}, QarMode::Rewrite, sig, prec),
      InputError);
  CHECK_THROWS_AS(q_ar({}, {}, {clause({lit(false, pp, {a})})}, QarMode::Answer, sig, prec),
                  InputError);
}
