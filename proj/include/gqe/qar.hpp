#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gqe/engine.hpp"

namespace gqe {

enum class QarMode { Answer, Rewrite };

struct QarOptions {
  EngineOptions engine;
  int max_rounds = 10000;
  int max_branch_depth = 64;
};

struct QarBranch {
  bool refuted = false;
  std::vector<Clause> saturated;
  std::vector<Clause> residual_queries;
  std::string proof;
};

struct QarResult {
  bool yes = false;
  std::vector<QarBranch> branches;
  int definers_introduced = 0;
};

// Query answering and rewriting driver. Decomposable query clauses branch the
// search (a variable-disjoint disjunction is satisfiable with the rest iff
// some disjunct is); acyclic query parts separate into Horn guarded clauses;
// chained-only residues resolve against the saturated guarded closure, either
// feeding ground or (loosely) guarded resolvents back into the closure or
// shrinking the query through definer renaming. The answer is yes iff every
// branch derives the empty clause.
class QarDriver {
 public:
  QarDriver(Signature& sig, const Precedence& prec, const QarOptions& opt = {})
      : sig_(sig), prec_(prec), opt_(opt) {}

  QarResult run(std::vector<Clause> clauses, std::vector<Clause> queries) {
    int before = sig_.definers_created();
    solve(std::move(clauses), std::move(queries), 0);
    result_.yes = !result_.branches.empty();
    for (const QarBranch& b : result_.branches)
      if (!b.refuted) result_.yes = false;
    result_.definers_introduced = sig_.definers_created() - before;
    return std::move(result_);
  }

 private:
  static void add_unique(std::vector<Clause>& s, const Clause& c) {
    if (!is_variant_redundant(c, s)) s.push_back(c);
  }

  void refuted_branch(std::string proof) {
    QarBranch b;
    b.refuted = true;
    b.proof = std::move(proof);
    result_.branches.push_back(std::move(b));
  }

  void solve(std::vector<Clause> s, std::vector<Clause> pending, int depth) {
    if (depth > opt_.max_branch_depth) throw ResourceError("split branch depth limit exceeded");

    for (int round = 0;; ++round) {
      if (round >= opt_.max_rounds) throw ResourceError("query reduction round limit exceeded");

      std::vector<Clause> qs;
      for (const Clause& raw : pending) {
        Clause q = condense(raw);
        if (q.empty()) {
          refuted_branch("query clause reduces to the empty clause\n");
          return;
        }
        if (classify(q).category == ClauseCategory::Query)
          qs.push_back(std::move(q));
        else
          add_unique(s, q);
      }
      pending = std::move(qs);

      for (size_t i = 0; i < pending.size(); ++i) {
        std::vector<Clause> comps = split_components(pending[i]);
        if (comps.size() <= 1) continue;
        for (const Clause& comp : comps) {
          std::vector<Clause> next = pending;
          next[i] = comp;
          solve(s, std::move(next), depth + 1);
        }
        return;
      }

      std::vector<Clause> resid;
      for (const Clause& q : pending) {
        SepExhaustive out = separate_exhaustive(q, sig_);
        for (const Clause& g : out.guarded) add_unique(s, g);
        if (out.residual) resid.push_back(*out.residual);
      }
      pending = std::move(resid);

      Engine eng(sig_, prec_, opt_.engine);
      for (const Clause& c : s) eng.add_input(c);
      if (eng.saturate() == SatStatus::Refuted) {
        refuted_branch(eng.format_proof());
        return;
      }
      std::vector<Clause> sat = eng.active_clauses();

      if (pending.empty()) {
        QarBranch b;
        b.saturated = std::move(sat);
        result_.branches.push_back(std::move(b));
        return;
      }

      std::vector<std::pair<const Clause*, int>> heads;
      for (const Clause& c : sat) {
        ClauseClass k = classify(c);
        for (size_t i = 0; i < c.lits.size(); ++i)
          if (c.lits[i].positive && side_head_usable(c, k, prec_, (int)i))
            heads.push_back({&c, (int)i});
      }

      bool progress = false;
      bool replaced = false;
      for (size_t qi = 0; qi < pending.size() && !replaced; ++qi) {
        const Clause& q = pending[qi];
        std::vector<int> neg = negative_literal_indices(q);
        std::vector<std::vector<SidePremise>> cands(neg.size());
        bool applicable = true;
        for (size_t j = 0; j < neg.size() && applicable; ++j) {
          SymbolId pred = q.lits[neg[j]].atom.pred;
          for (const auto& [cp, hi] : heads)
            if (cp->lits[hi].atom.pred == pred) cands[j].push_back({cp, hi});
          if (cands[j].empty()) applicable = false;
        }
        if (!applicable) continue;
        bool truncated = false;
        auto tuples = find_side_tuples(q, cands, opt_.engine.tuples, &truncated);
        if (truncated) throw ResourceError("side premise tuple limit exceeded");
        for (const auto& tup : tuples) {
          auto ta = compute_top(tup, q);
          if (!ta) continue;
          auto tr = t_res(tup, q, *ta);
          if (!tr) continue;
          Clause r = condense(tr->resolvent);
          if (is_tautology(r)) continue;
          if (r.empty()) {
            refuted_branch(eng.format_proof() + "t_res on " + to_string(q, sig_) +
                           " derives the empty clause\n");
            return;
          }
          ClauseCategory cat = classify(r).category;
          if (cat == ClauseCategory::Ground || cat == ClauseCategory::Guarded ||
              cat == ClauseCategory::LooselyGuarded) {
            if (!is_variant_redundant(r, s)) {
              s.push_back(std::move(r));
              progress = true;
            }
          } else {
            std::vector<Clause> parts = t_trans(*tr, *ta, tup, q, sig_);
            Clause qr = std::move(parts.back());
            parts.pop_back();
            for (const Clause& g : parts) add_unique(s, g);
            pending[qi] = std::move(qr);
            replaced = true;
            break;
          }
        }
      }
      if (replaced || progress) continue;

      QarBranch b;
      b.saturated = sat;
      for (const Clause& q : pending) b.saturated.push_back(q);
      b.residual_queries = pending;
      result_.branches.push_back(std::move(b));
      return;
    }
  }

  Signature& sig_;
  Precedence prec_;
  QarOptions opt_;
  QarResult result_;
};

inline QarResult q_ar(const std::vector<Clause>& theory, const std::vector<Clause>& queries,
                      const std::vector<Clause>& data, QarMode mode, Signature& sig,
                      const Precedence& prec, const QarOptions& opt = {}) {
  if (mode == QarMode::Rewrite && !data.empty())
    throw InputError("rewrite mode takes no ground data");
  std::vector<Clause> s;
  std::vector<Clause> pending;
  for (const Clause& c : theory) {
    ClauseCategory cat = classify(c).category;
    if (cat == ClauseCategory::Other)
      throw InputError("theory clause is not (loosely) guarded: " + to_string(c, sig));
    if (cat == ClauseCategory::Query)
      pending.push_back(c);
    else
      s.push_back(c);
  }
  for (const Clause& d : data) {
    if (d.lits.size() != 1 || !d.lits[0].positive || !classify(d).ground)
      throw InputError("data clause is not a ground atom: " + to_string(d, sig));
    s.push_back(d);
  }
  for (const Clause& q : queries) {
    if (q.empty() || !is_query_clause(q))
      throw InputError("not a query clause: " + to_string(q, sig));
    pending.push_back(q);
  }
  QarDriver drv(sig, prec, opt);
  return drv.run(std::move(s), std::move(pending));
}

}  // namespace gqe
