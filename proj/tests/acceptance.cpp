// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
//
//   1 rule and equation coverage of the corpus
//   2 renaming preservation at scale (>= 500 pairs)
//   3 substitution preservation at scale (>= 500 instances, >= 50 drop cases)
//   4 semantic law suites (>= 200 instances per law)
//   5 delay quotient: idempotence, grade preservation, rewrite-closure oracle
//   6 equational soundness of Equal verdicts against the run semantics
//   7 monitor silence on well-typed programs; exactly one violation unchecked
//   8 production-line reproduction

#include <chrono>
#include <iostream>
#include <map>
#include <set>

#include "corpus_harness.hpp"
#include "generators.hpp"
#include "ltau/laws.hpp"
#include "ltau/pretty.hpp"
#include "ltau/substitution.hpp"

using namespace ltau;

namespace {

int failures = 0;

struct Criterion {
  int id;
  std::string name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void done(bool ok, const std::string& detail) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "[" << id << "] " << (ok ? "PASS" : "FAIL") << " " << name << " — " << detail
              << " (" << ms << " ms)" << std::endl;
    if (!ok) ++failures;
  }
};

// ---- criterion 1: coverage ----

void criterion1() {
  Criterion c{1, "rule and equation coverage"};
  corpus::Corpus corp(LTAU_CORPUS_DIR);
  auto out = corpus::run_all(corp);
  std::set<std::string> missingRules, missingEqs;
  for (const auto& r : corpus::all_rules())
    if (!out.rulesSeen.count(r)) missingRules.insert(r);
  for (const auto& q : corpus::all_equations())
    if (!out.equationsSeen.count(q)) missingEqs.insert(q);

  std::cout << "coverage table (tag -> corpus entries):\n";
  std::map<std::string, std::set<std::string>> table;
  for (const auto& [tag, entry] : out.coverage) table[tag].insert(entry);
  for (const auto& [tag, entries] : table) {
    std::cout << "  " << tag << ":";
    for (const auto& e : entries) std::cout << " " << e;
    std::cout << "\n";
  }

  bool ok = out.failed == 0 && missingRules.empty() && missingEqs.empty();
  std::string detail = std::to_string(out.passed) + "/" +
                       std::to_string(out.passed + out.failed) + " entries, " +
                       std::to_string(table.size()) + " tags covered";
  for (const auto& f : out.failures) detail += "; " + f;
  for (const auto& r : missingRules) detail += "; missing rule " + r;
  for (const auto& q : missingEqs) detail += "; missing equation " + q;
  c.done(ok, detail);
}

// ---- criterion 2: renaming preservation ----

void criterion2() {
  Criterion c{2, "renaming preservation (Thm 1 at desk scale)"};
  auto sig = testgen::small_signature();
  testgen::TermGen terms(1009, sig);
  testgen::RenamingGen rens(1013, terms);
  int total = 0, bad = 0;
  for (int i = 0; i < 500; ++i) {
    Context g = terms.gen_context(4);
    CompType want{terms.gen_vtype(1), Grade::nat(terms.nat(0, 5))};
    CompPtr m = terms.gen_comp(g, want, 3);
    RenPtr rho = rens.gen(g, static_cast<int>(rens.nat(1, 4)));
    ++total;
    try {
      CompPtr out = apply_renaming(rho, m);
      Checker ck(sig);
      if (ck.elaborate(out, rho->target()) != want) ++bad;
    } catch (const std::exception& e) {
      ++bad;
    }
  }
  c.done(bad == 0 && total >= 500,
         std::to_string(total) + " pairs, " + std::to_string(bad) + " failures");
}

// ---- criterion 3: substitution preservation ----

void criterion3() {
  Criterion c{3, "substitution preservation (Thm 2 at desk scale)"};
  auto sig = testgen::small_signature();
  testgen::TermGen gen(2003, sig);
  int total = 0, bad = 0, dropCases = 0;
  // generic instances
  for (int i = 0; i < 450; ++i) {
    ValueType x = gen.gen_vtype(1);
    Context g = Context().extend_var("x", x);
    CompType want{gen.gen_vtype(1), Grade::nat(gen.nat(0, 5))};
    CompPtr t = gen.gen_comp(g, want, 3);
    ++total;
    try {
      Checker ck(sig);
      ck.elaborate(t, g);
      CompPtr out = subst(t, gen.closed_value(x), "x", sig);
      Checker ck2(sig);
      if (ck2.elaborate(out) != want) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  // targeted drop cases: tau > time of the segment right of x
  for (int i = 0; i < 60; ++i) {
    std::uint64_t d = gen.nat(1, 5);
    std::uint64_t tau = gen.nat(1, d);
    ValueType x = gen.gen_vtype(1);
    Context g = Context().extend_mod(Grade::nat(d)).extend_var("x", x);
    GroundType z = gen.gen_ground(1);
    CompType want{gen.gen_vtype(1), Grade::nat(gen.nat(0, 4))};
    std::string y = fresh_name("y");
    CompPtr body = gen.gen_comp(g.extend_var(y, embed(z)), want, 2);
    CompPtr t = c_unbox(Grade::nat(tau), v_box(Grade::nat(tau), gen.closed_value(embed(z))), y,
                        body);
    ++total;
    ++dropCases;
    try {
      Checker ck(sig);
      ck.elaborate(t, g);
      CompPtr out = subst(t, gen.closed_value(x), "x", sig);
      Checker ck2(sig);
      if (ck2.elaborate(out, Context().extend_mod(Grade::nat(d))) != want) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  c.done(bad == 0 && total >= 500 && dropCases >= 50,
         std::to_string(total) + " instances (" + std::to_string(dropCases) + " drop cases), " +
             std::to_string(bad) + " failures");
}

// ---- criterion 4: semantic laws ----

void criterion4() {
  Criterion c{4, "graded monad, strength, algebraicity, and handling laws"};
  LawConfig cfg{80085, 4, 3, 200, ""};
  auto results = run_law_suites(cfg);
  int bad = 0;
  std::string detail;
  for (const auto& r : results) {
    if (r.failures > 0) {
      ++bad;
      detail += r.law + " failed " + std::to_string(r.failures) + "/" +
                std::to_string(r.instances) + "; ";
    }
  }
  if (bad == 0)
    detail = std::to_string(results.size()) + " laws x " + std::to_string(cfg.instances) +
             " instances";
  c.done(bad == 0, detail);
}

// ---- criterion 5: delay quotient ----

// First-order mirror of delay trees so the rewrite closure can be
// enumerated: the op skeleton is fixed, only delays move.
struct TT {
  int kind; // 0 ret, 1 op, 2 delay
  std::uint64_t tau = 0;
  int leaf = 0;
  std::vector<TT> kids;
};

std::string tt_key(const TT& t) {
  switch (t.kind) {
    case 0: return "r" + std::to_string(t.leaf);
    case 2: return "d" + std::to_string(t.tau) + "(" + tt_key(t.kids[0]) + ")";
    default: {
      std::string out = "o(";
      for (const auto& k : t.kids) out += tt_key(k) + ",";
      return out + ")";
    }
  }
}

TT gen_tt(testgen::TermGen& gen, int depth) {
  if (depth <= 0 || gen.nat(0, 3) == 0) return TT{0, 0, static_cast<int>(gen.nat(0, 1)), {}};
  if (gen.coin()) return TT{2, gen.nat(0, 3), 0, {gen_tt(gen, depth - 1)}};
  TT t{1, 0, 0, {}};
  TT shared = gen_tt(gen, depth - 1);
  t.kids.push_back(shared);
  t.kids.push_back(shared); // same grade on both branches
  return t;
}

CompTree tt_to_tree(const TT& t, const SignatureTable& sig) {
  switch (t.kind) {
    case 0: return t_ret(SemValue::elem("E", t.leaf == 0 ? "a" : "b"));
    case 2: return t_delay(t.tau, tt_to_tree(t.kids[0], sig));
    default: {
      auto kids = std::make_shared<std::vector<CompTree>>();
      for (const auto& k : t.kids) kids->push_back(tt_to_tree(k, sig));
      return t_op("f", SemValue::elem("E", "a"),
                  [kids](const SemValue& v) {
                    auto* e = v.get<SemValue::BaseElem>();
                    return (*kids)[e->elem == "a" ? 0 : 1];
                  },
                  sig);
    }
  }
}

// One-step successors under the two delay equations, in both directions.
// Splits and zero-insertions are bounded so the closure stays finite.
void tt_successors(const TT& t, std::vector<TT>& out, int chain) {
  if (t.kind == 2) {
    const TT& child = t.kids[0];
    if (t.tau == 0) out.push_back(child); // delay 0 M = M
    if (child.kind == 2) {                // merge consecutive
      TT merged{2, t.tau + child.tau, 0, {child.kids[0]}};
      out.push_back(merged);
    }
    if (chain < 3) { // split t.tau = i + (tau - i)
      for (std::uint64_t i = 0; i <= t.tau; ++i) {
        TT split{2, i, 0, {TT{2, t.tau - i, 0, {child}}}};
        out.push_back(split);
      }
    }
  } else if (chain < 2) {
    TT wrapped{2, 0, 0, {t}}; // M = delay 0 M
    out.push_back(wrapped);
  }
  // congruence closure
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    std::vector<TT> sub;
    tt_successors(t.kids[i], sub, t.kind == 2 ? chain + 1 : 0);
    for (auto& s : sub) {
      TT copy = t;
      copy.kids[i] = std::move(s);
      out.push_back(copy);
    }
  }
}

void criterion5() {
  Criterion c{5, "delay quotient: canonical forms"};
  // idempotence and grade preservation on random trees
  int bad = 0, trees = 0;
  for (int i = 0; i < 1000; ++i) {
    TreeGen g(4242 + static_cast<std::uint64_t>(i), 3);
    CompTree t = g.gen_value_tree(4);
    ++trees;
    CompTree once = canonicalize_delays(t);
    if (!tree_eq(once, canonicalize_delays(once), g.sig)) ++bad;
    if (tree_grade(t, g.sig) != tree_grade(once, g.sig)) ++bad;
  }

  // rewrite-closure oracle: every tree reachable from t0 under the two
  // delay equations has the same canonical form
  SignatureTable sig;
  sig.add_base({"E", {"a", "b"}});
  sig.add_op({"f", GroundType::base("E"), GroundType::base("E"), Grade::nat(2)});
  sig.validate();
  auto s = testgen::small_signature();
  testgen::TermGen gen(4711, s);
  int states = 0, oracleBad = 0;
  for (int i = 0; i < 40; ++i) {
    TT t0 = gen_tt(gen, 4);
    CompTree canon0 = canonicalize_delays(tt_to_tree(t0, sig));
    std::set<std::string> seen{tt_key(t0)};
    std::vector<TT> frontier{t0};
    while (!frontier.empty() && seen.size() < 300) {
      TT cur = frontier.back();
      frontier.pop_back();
      std::vector<TT> next;
      tt_successors(cur, next, 0);
      for (auto& n : next) {
        if (!seen.insert(tt_key(n)).second) continue;
        frontier.push_back(n);
        ++states;
        if (!tree_eq(canonicalize_delays(tt_to_tree(n, sig)), canon0, sig)) ++oracleBad;
      }
    }
  }
  c.done(bad == 0 && oracleBad == 0,
         std::to_string(trees) + " random trees, " + std::to_string(states) +
             " rewrite-closure states, " + std::to_string(bad + oracleBad) + " failures");
}

// ---- criterion 6: equational soundness ----

void criterion6() {
  Criterion c{6, "equational soundness of Equal verdicts"};
  corpus::Corpus corp(LTAU_CORPUS_DIR);
  int equalPairs = 0, bad = 0;
  for (const auto& e : corp.entries) {
    if (e.kind() != "eq") continue;
    SignatureTable sig = corp.sig_for(e);
    CompPtr l = parse_program(corp.program_text(e.raw.at("left")), sig);
    CompPtr r = parse_program(corp.program_text(e.raw.at("right")), sig);
    if (check_equiv(l, r, sig) != Equiv::Equal) continue;
    ++equalPairs;
    if (!tree_eq(eval_to_tree(l, sig), eval_to_tree(r, sig), sig)) ++bad;
  }
  // plus generated pairs that normalize together
  auto sig = testgen::small_signature();
  testgen::TermGen gen(6007, sig);
  for (int i = 0; i < 200; ++i) {
    CompType want{embed(gen.gen_ground(1)), Grade::nat(gen.nat(0, 4))};
    CompPtr m = gen.gen_comp(Context(), want, 3);
    Checker ck(sig);
    ck.elaborate(m);
    CompPtr n = normalize(m, sig);
    Checker ck2(sig);
    ck2.elaborate(n);
    if (check_equiv(m, n, sig) == Equiv::Equal) {
      ++equalPairs;
      if (!tree_eq(eval_to_tree(m, sig), eval_to_tree(n, sig), sig)) ++bad;
    }
  }
  c.done(bad == 0 && equalPairs > 0,
         std::to_string(equalPairs) + " Equal pairs, " + std::to_string(bad) + " disagreements");
}

// ---- criterion 7: monitor ----

void criterion7() {
  Criterion c{7, "temporal soundness witness (runtime monitor)"};
  corpus::Corpus corp(LTAU_CORPUS_DIR);
  int violations = 0, programs = 0;
  // whole corpus
  for (const auto& e : corp.entries) {
    if (e.kind() != "check" || e.raw.at("verdict") != "accept") continue;
    SignatureTable sig = corp.sig_for(e);
    CompPtr m = parse_program(corp.program_text(e.raw.at("program")), sig);
    Checker ck(sig);
    ck.elaborate(m);
    ++programs;
    try {
      run(m, sig);
    } catch (const MonitorError&) {
      ++violations;
    }
  }
  // generated well-typed closed programs
  auto sig = testgen::small_signature();
  testgen::TermGen gen(7001, sig);
  for (int i = 0; i < 500; ++i) {
    CompType want{gen.gen_vtype(1), Grade::nat(gen.nat(0, 5))};
    CompPtr m = gen.gen_comp(Context(), want, 3);
    Checker ck(sig);
    ck.elaborate(m);
    ++programs;
    try {
      run(m, sig);
    } catch (const MonitorError&) {
      ++violations;
    }
  }
  // the delay-removed production line program, with the checker disabled,
  // must violate exactly once: at time tau_paint with requirement
  // tau_paint + tau_dry
  SignatureTable fsig = corp.sig_for(corp.entries[1]);
  CompPtr bad = parse_program(corp.program_text("production_line_missing_delay.ltau"), fsig);
  Checker unsafe(fsig, /*skipTemporal=*/true);
  unsafe.elaborate(bad);
  int caught = 0;
  bool rightPlace = false;
  try {
    run(bad, fsig);
  } catch (const MonitorError& e) {
    ++caught;
    rightPlace = e.time == 2 && e.required == 6;
  }
  c.done(violations == 0 && programs >= 500 && caught == 1 && rightPlace,
         std::to_string(programs) + " checked programs, " + std::to_string(violations) +
             " violations; unchecked program violated " + std::to_string(caught) +
             " time(s) at t=2 requiring 6: " + (rightPlace ? "yes" : "no"));
}

// ---- criterion 8: production line ----

void criterion8() {
  Criterion c{8, "production-line reproduction"};
  corpus::Corpus corp(LTAU_CORPUS_DIR);
  SignatureTable sig = corp.sig_for(corp.entries[0]);
  std::string detail;
  bool ok = true;

  CompPtr good = parse_program(corp.program_text("production_line.ltau"), sig);
  Checker ck(sig);
  CompType ty = ck.elaborate(good);
  if (ty.str() != "unit ! 9") {
    ok = false;
    detail += "type " + ty.str() + " != unit ! 9; ";
  }
  RunResult rr = run(good, sig);
  bool assembleAt6 = false;
  for (const auto& e : rr.trace)
    if (e.kind == TraceEvent::Kind::OpStart && e.name == "assemble" && e.time == 6)
      assembleAt6 = true;
  if (!assembleAt6) {
    ok = false;
    detail += "assemble does not start at 6; ";
  }

  CompPtr bad = parse_program(corp.program_text("production_line_missing_delay.ltau"), sig);
  try {
    Checker ck2(sig);
    ck2.elaborate(bad);
    ok = false;
    detail += "missing-delay program accepted; ";
  } catch (const TypeError& e) {
    if (e.diag.rule != "Unbox") {
      ok = false;
      detail += "rejected by " + e.diag.rule + " not Unbox; ";
    }
  }
  if (ok) detail = "unit ! 9, assemble at t=6, rejection cites Unbox";
  c.done(ok, detail);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria pass"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
