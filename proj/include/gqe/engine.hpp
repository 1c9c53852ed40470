#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gqe/clause_class.hpp"
#include "gqe/ordering.hpp"
#include "gqe/rules.hpp"
#include "gqe/selection.hpp"

namespace gqe {

struct EngineOptions {
  size_t max_clauses = 1000000;
  size_t max_literals = 64;
  bool forward_subsumption = true;
  TupleLimits tuples;
  std::function<void(const Clause&, const std::string& rule)> on_derived;
};

struct Derivation {
  int id = 0;
  Clause clause;
  std::string rule;
  std::vector<int> parents;
  std::string mgu;
  bool condensed = false;
};

struct EngineStats {
  long generated = 0;
  long tautologies = 0;
  long variants = 0;
  long subsumed = 0;
};

enum class SatStatus { Saturated, Refuted };

// Given-clause saturation under the ordering and selection refinement.
// Clauses live in a deque so references handed to the tuple search stay
// valid while new conclusions are registered.
class Engine {
 public:
  Engine(const Signature& sig, const Precedence& prec, EngineOptions opt = {})
      : sig_(&sig), prec_(prec), opt_(std::move(opt)) {}

  int add_input(const Clause& c) { return push(c, "input", {}, ""); }

  SatStatus saturate() {
    if (empty_id_ >= 0) return SatStatus::Refuted;
    while (!queue_.empty()) {
      auto it = queue_.begin();
      int id = it->second;
      queue_.erase(it);
      if (opt_.forward_subsumption && subsumed_by_active(id)) {
        live_[id - 1] = 0;
        ++stats_.subsumed;
        continue;
      }
      activate(id);
      if (empty_id_ >= 0) return SatStatus::Refuted;
    }
    return SatStatus::Saturated;
  }

  const std::deque<Derivation>& log() const { return reg_; }
  const EngineStats& stats() const { return stats_; }
  int empty_clause_id() const { return empty_id_; }
  const Clause& clause(int id) const { return reg_[id - 1].clause; }
  bool is_live(int id) const { return live_[id - 1] != 0; }

  std::vector<Clause> active_clauses() const {
    std::vector<Clause> out;
    for (int id : active_)
      if (live_[id - 1]) out.push_back(reg_[id - 1].clause);
    return out;
  }

  std::vector<int> active_ids() const {
    std::vector<int> out;
    for (int id : active_)
      if (live_[id - 1]) out.push_back(id);
    return out;
  }

  std::string format_proof() const {
    std::ostringstream os;
    for (const Derivation& d : reg_) {
      os << d.id << ". " << to_string(d.clause, *sig_) << " [" << d.rule;
      if (!d.parents.empty()) {
        os << ",";
        for (int p : d.parents) os << " " << p;
      }
      if (!d.mgu.empty()) os << ", " << d.mgu;
      if (d.condensed) os << ", condensed";
      os << "]\n";
    }
    return os.str();
  }

  // Re-derives every logged conclusion from its parents.
  bool validate_log() const {
    for (const Derivation& d : reg_) {
      if (d.rule == "input") continue;
      if (!replay(d)) return false;
    }
    return true;
  }

 private:
  int push(const Clause& raw, const std::string& rule, std::vector<int> parents,
           const std::string& mgu) {
    ++stats_.generated;
    if (raw.lits.size() > opt_.max_literals)
      throw ResourceError("clause width limit exceeded");
    Clause c = condense(raw);
    bool was_condensed = c.lits.size() != raw.lits.size();
    if (is_tautology(c)) {
      ++stats_.tautologies;
      return -1;
    }
    std::string key = shape_key(c);
    for (int vid : shape_[key]) {
      if (live_[vid - 1] && is_variant(c, reg_[vid - 1].clause)) {
        ++stats_.variants;
        return -1;
      }
    }
    if (reg_.size() >= opt_.max_clauses) throw ResourceError("clause count limit exceeded");
    int id = (int)reg_.size() + 1;
    c.id = id;
    reg_.push_back({id, c, rule, std::move(parents), mgu, was_condensed});
    const Clause& stored = reg_.back().clause;
    ptr_id_[&stored] = id;
    ClauseClass k = classify(stored);
    elig_.push_back(select_literals(stored, k, prec_));
    heads_.push_back({});
    for (size_t i = 0; i < stored.lits.size(); ++i)
      if (stored.lits[i].positive && side_head_usable(stored, k, prec_, i))
        heads_.back().push_back((int)i);
    live_.push_back(1);
    shape_[key].push_back(id);
    queue_.insert({weight(stored), id});
    if (stored.lits.empty() && empty_id_ < 0) empty_id_ = id;
    if (rule != "input" && opt_.on_derived) opt_.on_derived(stored, rule);
    return id;
  }

  static std::string shape_key(const Clause& c) {
    std::vector<long> ks;
    for (const Literal& l : c.lits)
      ks.push_back((long)l.atom.pred * 2 + (l.positive ? 1 : 0));
    std::sort(ks.begin(), ks.end());
    std::string key;
    for (long k : ks) {
      key += std::to_string(k);
      key += ',';
    }
    return key;
  }

  bool subsumed_by_active(int id) const {
    const Clause& c = reg_[id - 1].clause;
    for (int aid : active_) {
      if (!live_[aid - 1]) continue;
      if (subsumes(reg_[aid - 1].clause, c)) return true;
    }
    return false;
  }

  // Negative literals this clause may resolve on as the main premise of
  // binary resolution. Clauses under top-variable selection only take part
  // in the simultaneous rule.
  std::vector<int> main_negatives(int id) const {
    const Clause& c = reg_[id - 1].clause;
    const Eligible& e = elig_[id - 1];
    std::vector<int> out;
    if (e.mode == SelectionMode::SelectT) return out;
    for (int i : e.lits)
      if (!c.lits[i].positive) out.push_back(i);
    return out;
  }

  // Copies of the per-clause index lists are taken before generation:
  // pushes grow elig_ and heads_, which may reallocate under iteration.
  void activate(int id) {
    active_.push_back(id);
    Eligible e = elig_[id - 1];
    std::vector<int> my_heads = heads_[id - 1];

    if (e.mode == SelectionMode::Max) {
      const Clause& c = reg_[id - 1].clause;
      for (int i : e.lits) {
        if (!c.lits[i].positive) continue;
        for (size_t j = 0; j < c.lits.size(); ++j) {
          if ((int)j == i || !c.lits[j].positive) continue;
          if (c.lits[j].atom.pred != c.lits[i].atom.pred) continue;
          if (auto f = factor(c, i, (int)j)) push(*f, "fact", {id}, "");
          if (empty_id_ >= 0) return;
        }
      }
    }

    for (int ni : main_negatives(id)) {
      SymbolId pred = reg_[id - 1].clause.lits[ni].atom.pred;
      for (size_t ai = 0; ai < active_.size(); ++ai) {
        int sid = active_[ai];
        if (!live_[sid - 1]) continue;
        std::vector<int> side_heads = heads_[sid - 1];
        for (int hi : side_heads) {
          if (reg_[sid - 1].clause.lits[hi].atom.pred != pred) continue;
          binary_resolve(sid, hi, id, ni);
          if (empty_id_ >= 0) return;
        }
      }
    }

    if (!my_heads.empty()) {
      for (size_t ai = 0; ai + 1 < active_.size(); ++ai) {
        int mid = active_[ai];
        if (!live_[mid - 1]) continue;
        for (int ni : main_negatives(mid)) {
          SymbolId pred = reg_[mid - 1].clause.lits[ni].atom.pred;
          for (int hi : my_heads) {
            if (reg_[id - 1].clause.lits[hi].atom.pred != pred) continue;
            binary_resolve(id, hi, mid, ni);
            if (empty_id_ >= 0) return;
          }
        }
      }
    }

    if (e.mode == SelectionMode::SelectT) {
      tres_event(id, -1);
      if (empty_id_ >= 0) return;
    }
    if (!my_heads.empty()) {
      for (size_t ai = 0; ai + 1 < active_.size(); ++ai) {
        int mid = active_[ai];
        if (!live_[mid - 1]) continue;
        if (elig_[mid - 1].mode != SelectionMode::SelectT) continue;
        tres_event(mid, id);
        if (empty_id_ >= 0) return;
      }
    }
  }

  void binary_resolve(int pos_id, int hi, int neg_id, int ni) {
    auto r = resolve(reg_[pos_id - 1].clause, hi, reg_[neg_id - 1].clause, ni);
    if (!r) return;
    push(*r, "res", {pos_id, neg_id}, "");
  }

  void tres_event(int main_id, int pinned_id) {
    const Clause& m = reg_[main_id - 1].clause;
    std::vector<int> neg = negative_literal_indices(m);
    if (neg.empty()) return;
    std::vector<std::vector<SidePremise>> cands(neg.size());
    for (size_t j = 0; j < neg.size(); ++j) {
      SymbolId pred = m.lits[neg[j]].atom.pred;
      for (int sid : active_) {
        if (!live_[sid - 1] || sid == main_id) continue;
        for (int hi : heads_[sid - 1])
          if (reg_[sid - 1].clause.lits[hi].atom.pred == pred)
            cands[j].push_back({&reg_[sid - 1].clause, hi});
      }
      if (cands[j].empty()) return;
    }
    const Clause* pinned = pinned_id >= 0 ? &reg_[pinned_id - 1].clause : nullptr;
    bool truncated = false;
    auto tuples = find_side_tuples(m, cands, opt_.tuples, &truncated);
    if (truncated) throw ResourceError("side premise tuple limit exceeded");
    for (const auto& tup : tuples) {
      if (pinned) {
        bool has = false;
        for (const SidePremise& s : tup)
          if (s.clause == pinned) { has = true; break; }
        if (!has) continue;
      }
      auto ta = compute_top(tup, m);
      if (!ta) continue;
      auto tr = t_res(tup, m, *ta);
      if (!tr) continue;
      std::vector<int> parents;
      std::string rule;
      if (neg.size() == 1) {
        rule = "res";
        parents = {ptr_id_.at(tup[0].clause), main_id};
      } else {
        rule = "t_res";
        parents.push_back(main_id);
        for (int slot : tr->top_slots) parents.push_back(ptr_id_.at(tup[slot].clause));
      }
      push(tr->resolvent, rule, parents, tr->sigma.to_string(*sig_));
      if (empty_id_ >= 0) return;
    }
  }

  bool replay(const Derivation& d) const {
    Clause got;
    bool found = false;
    if (d.rule == "fact" && d.parents.size() == 1) {
      const Clause& p = reg_[d.parents[0] - 1].clause;
      for (size_t i = 0; i < p.lits.size() && !found; ++i)
        for (size_t j = 0; j < p.lits.size() && !found; ++j) {
          if (i == j) continue;
          if (auto f = factor(p, (int)i, (int)j))
            if (is_variant(condense(*f), d.clause)) found = true;
        }
      return found;
    }
    if (d.rule == "res" && d.parents.size() == 2) {
      const Clause& pos = reg_[d.parents[0] - 1].clause;
      const Clause& neg = reg_[d.parents[1] - 1].clause;
      for (size_t i = 0; i < pos.lits.size() && !found; ++i)
        for (size_t j = 0; j < neg.lits.size() && !found; ++j) {
          if (auto r = resolve(pos, (int)i, neg, (int)j))
            if (is_variant(condense(*r), d.clause)) found = true;
        }
      return found;
    }
    if (d.rule == "t_res" && d.parents.size() >= 2) {
      const Clause& m = reg_[d.parents[0] - 1].clause;
      std::vector<int> neg = negative_literal_indices(m);
      std::vector<const Clause*> sides;
      for (size_t pi = 1; pi < d.parents.size(); ++pi)
        sides.push_back(&reg_[d.parents[pi] - 1].clause);
      std::vector<std::pair<int, int>> chosen;
      return replay_tres(m, neg, sides, 0, 0, chosen, d.clause);
    }
    return false;
  }

  // Assigns the logged side premises, in order, to increasing negative slots
  // of the main premise and checks whether some assignment rederives the
  // logged conclusion.
  bool replay_tres(const Clause& m, const std::vector<int>& neg,
                   const std::vector<const Clause*>& sides, size_t si, size_t slot_from,
                   std::vector<std::pair<int, int>>& chosen, const Clause& want) const {
    if (si == sides.size()) {
      TopAnalysis ta;
      ta.neg_lits = neg;
      ta.offsets.assign(neg.size(), 0);
      std::vector<SidePremise> sp(neg.size());
      int off = detail::max_var_id(m) + 1;
      for (size_t k = 0; k < chosen.size(); ++k) {
        int slot = chosen[k].first;
        sp[slot] = {sides[k], chosen[k].second};
        ta.offsets[slot] = off;
        off += detail::max_var_id(*sides[k]) + 1;
        ta.top_lits.push_back(neg[slot]);
      }
      auto tr = t_res(sp, m, ta);
      return tr && is_variant(condense(tr->resolvent), want);
    }
    for (size_t slot = slot_from; slot < neg.size(); ++slot) {
      SymbolId pred = m.lits[neg[slot]].atom.pred;
      const Clause& sc = *sides[si];
      for (size_t hi = 0; hi < sc.lits.size(); ++hi) {
        if (!sc.lits[hi].positive || sc.lits[hi].atom.pred != pred) continue;
        chosen.push_back({(int)slot, (int)hi});
        if (replay_tres(m, neg, sides, si + 1, slot + 1, chosen, want)) return true;
        chosen.pop_back();
      }
    }
    return false;
  }

  const Signature* sig_;
  Precedence prec_;
  EngineOptions opt_;
  std::deque<Derivation> reg_;
  std::vector<Eligible> elig_;
  std::vector<std::vector<int>> heads_;
  std::vector<char> live_;
  std::vector<int> active_;
  std::set<std::pair<int, int>> queue_;
  std::map<std::string, std::vector<int>> shape_;
  std::unordered_map<const Clause*, int> ptr_id_;
  EngineStats stats_;
  int empty_id_ = -1;
};

}  // namespace gqe
