// gqe: decide satisfiability of guarded problems, answer Boolean conjunctive
// queries over ground data, or rewrite queries into first-order sentences.
//
// Exit codes: 0 completed (SAT / all queries NO / rewriting emitted),
// 1 UNSAT or some query YES, 2 input error, 3 resource bound exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gqe/clausify.hpp"
#include "gqe/parser.hpp"
#include "gqe/qar.hpp"
#include "gqe/rewrite.hpp"

namespace {

struct Options {
  std::string input = "-";
  std::string mode = "auto";
  bool proof = false;
  bool trace = false;
  bool json = false;
  bool no_subsumption = false;
  long max_clauses = 1000000;
  std::string precedence_file;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw gqe::InputError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One symbol name per line, highest precedence first; '%' starts a comment.
std::vector<gqe::SymbolId> read_precedence(const std::string& path, const gqe::Signature& sig) {
  std::ifstream in(path);
  if (!in) throw gqe::InputError("cannot open precedence file: " + path);
  std::vector<gqe::SymbolId> order;
  std::string line;
  while (std::getline(in, line)) {
    size_t cut = line.find('%');
    if (cut != std::string::npos) line.erase(cut);
    std::istringstream ls(line);
    std::string name;
    while (ls >> name) {
      gqe::SymbolId id = sig.lookup(name);
      if (id < 0) throw gqe::InputError("precedence file names unknown symbol: " + name);
      order.push_back(id);
    }
  }
  return order;
}

struct Run {
  const Options& opt;
  gqe::ProblemFile pf;
  std::vector<gqe::Clause> theory;
  std::vector<gqe::Clause> data;
  gqe::Precedence prec;
  long derived = 0;
  int definers = 0;
  nlohmann::json report;

  Run(const Options& o, gqe::ProblemFile file)
      : opt(o), pf(std::move(file)), prec(pf.sig) {
    gqe::ClausifyResult cr = gqe::clausify(pf.theory, pf.sig);
    theory = std::move(cr.clauses);
    for (const gqe::Clause& c : pf.clauses) theory.push_back(c);
    for (const gqe::Atom& a : pf.data) data.push_back(gqe::Clause{{{true, a}}});
    if (!opt.precedence_file.empty())
      prec.set_order(read_precedence(opt.precedence_file, pf.sig));
  }

  gqe::QarOptions qar_options() {
    gqe::QarOptions q;
    q.engine.max_clauses = static_cast<size_t>(opt.max_clauses);
    q.engine.forward_subsumption = !opt.no_subsumption;
    if (opt.trace) {
      q.engine.on_derived = [this](const gqe::Clause& c, const std::string& rule) {
        ++derived;
        std::cerr << "  [" << rule << "] " << gqe::to_string(c, pf.sig) << "\n";
      };
    } else {
      q.engine.on_derived = [this](const gqe::Clause&, const std::string&) { ++derived; };
    }
    return q;
  }

  void emit(std::ostream& out) {
    if (opt.json)
      out << report.dump(2) << "\n";
  }

  void stats_line(std::ostream& out) const {
    if (opt.json) return;
    out << "stats: derived=" << derived << " definers=" << definers << "\n";
  }

  int decide(std::ostream& out) {
    gqe::QarResult r = gqe::q_ar(theory, {}, data, gqe::QarMode::Answer, pf.sig, prec,
                                 qar_options());
    definers += r.definers_introduced;
    bool unsat = r.yes;
    report["mode"] = "decide";
    report["verdict"] = unsat ? "UNSAT" : "SAT";
    if (!opt.json) out << "verdict: " << (unsat ? "UNSAT" : "SAT") << "\n";
    if (opt.proof && unsat) {
      std::string all;
      for (const gqe::QarBranch& b : r.branches) all += b.proof;
      report["proof"] = all;
      if (!opt.json) out << "proof:\n" << all;
    }
    stats_line(out);
    emit(out);
    return unsat ? 1 : 0;
  }

  int answer(std::ostream& out) {
    if (pf.queries.empty()) throw gqe::InputError("answer mode needs a query section");
    bool any_yes = false;
    report["mode"] = "answer";
    report["queries"] = nlohmann::json::array();
    for (size_t i = 0; i < pf.queries.size(); ++i) {
      gqe::Clause qc = gqe::negate_bcq(pf.queries[i], pf.sig);
      gqe::QarResult r =
          gqe::q_ar(theory, {qc}, data, gqe::QarMode::Answer, pf.sig, prec, qar_options());
      definers += r.definers_introduced;
      any_yes = any_yes || r.yes;
      nlohmann::json jq;
      jq["index"] = i + 1;
      jq["answer"] = r.yes ? "YES" : "NO";
      if (!opt.json) out << "query " << (i + 1) << ": " << (r.yes ? "YES" : "NO") << "\n";
      if (opt.proof && r.yes) {
        std::string all;
        for (const gqe::QarBranch& b : r.branches) all += b.proof;
        jq["proof"] = all;
        if (!opt.json) out << "proof:\n" << all;
      }
      report["queries"].push_back(std::move(jq));
    }
    stats_line(out);
    emit(out);
    return any_yes ? 1 : 0;
  }

  // Every dataset D entails the query iff D entails, for every branch, some
  // sentence of that branch's list: a conjunction over branches of unions.
  int rewrite(std::ostream& out) {
    if (pf.queries.empty()) throw gqe::InputError("rewrite mode needs a query section");
    if (!pf.data.empty()) std::cerr << "note: data section ignored in rewrite mode\n";
    report["mode"] = "rewrite";
    report["queries"] = nlohmann::json::array();
    for (size_t i = 0; i < pf.queries.size(); ++i) {
      gqe::Clause qc = gqe::negate_bcq(pf.queries[i], pf.sig);
      gqe::QarResult r =
          gqe::q_ar(theory, {qc}, {}, gqe::QarMode::Rewrite, pf.sig, prec, qar_options());
      definers += r.definers_introduced;
      nlohmann::json jq;
      jq["index"] = i + 1;
      jq["entailed"] = r.yes;
      jq["branches"] = nlohmann::json::array();
      if (!opt.json) {
        out << "query " << (i + 1) << ":"
            << (r.yes ? " entailed by the theory alone\n" : "\n");
      }
      if (!r.yes) {
        int bn = 0;
        for (const gqe::QarBranch& b : r.branches) {
          if (b.refuted) continue;
          ++bn;
          nlohmann::json jb = nlohmann::json::array();
          if (!opt.json) out << "  branch " << bn << ":\n";
          for (const gqe::FormulaPtr& s : gqe::unskolemise_rewrite(b.saturated, pf.sig)) {
            std::string text = gqe::print_formula(s, pf.sig);
            jb.push_back(text);
            if (!opt.json) out << "    " << text << ".\n";
          }
          jq["branches"].push_back(std::move(jb));
        }
      }
      report["queries"].push_back(std::move(jq));
    }
    stats_line(out);
    emit(out);
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation-based reasoner for guarded theories and conjunctive queries"};
  Options opt;
  app.add_option("input", opt.input, "problem file, or - for stdin")->capture_default_str();
  app.add_option("--mode", opt.mode, "decide | answer | rewrite (default: by file contents)")
      ->check(CLI::IsMember({"auto", "decide", "answer", "rewrite"}));
  app.add_flag("--proof", opt.proof, "print refutation proofs");
  app.add_flag("--trace", opt.trace, "log every derived clause to stderr");
  app.add_flag("--json", opt.json, "emit a JSON report on stdout");
  app.add_option("--max-clauses", opt.max_clauses, "clause store bound")
      ->envname("GQE_MAX_CLAUSES");
  app.add_flag("--no-subsumption", opt.no_subsumption, "disable forward subsumption");
  app.add_option("--precedence", opt.precedence_file,
                 "symbol precedence override file, one name per line, highest first");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Run run(opt, gqe::parse_problem(read_input(opt.input)));
    std::string mode = opt.mode;
    if (mode == "auto") mode = run.pf.queries.empty() ? "decide" : "answer";
    if (!opt.json) std::cout << "mode: " << mode << "\n";
    if (mode == "decide") return run.decide(std::cout);
    if (mode == "answer") return run.answer(std::cout);
    return run.rewrite(std::cout);
  } catch (const gqe::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const gqe::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
