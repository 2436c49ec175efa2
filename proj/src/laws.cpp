#include "ltau/laws.hpp"

#include <sstream>

namespace ltau {

namespace {

// Availability-insensitive position of a value within its carrier: used to
// make generated continuations deterministic functions of their input.
std::size_t carrier_index(const SemValue& v, const GroundType& g, const SignatureTable& sig) {
  if (auto* b = g.get<GroundType::Base>()) {
    const BaseDecl* d = sig.find_base(b->name);
    auto* e = v.get<SemValue::BaseElem>();
    if (!e) throw internal("carrier_index: expected a base element");
    for (std::size_t i = 0; i < d->elems.size(); ++i)
      if (d->elems[i] == e->elem) return i;
    throw internal("carrier_index: element outside carrier");
  }
  if (g.holds<GroundType::Unit>()) return 0;
  if (auto* p = g.get<GroundType::Prod>()) {
    auto* pv = v.get<SemValue::PairV>();
    if (!pv) throw internal("carrier_index: expected a pair");
    std::size_t snd_size = enumerate_carrier(p->snd, 0, sig).size();
    return carrier_index(pv->fst, p->fst, sig) * snd_size + carrier_index(pv->snd, p->snd, sig);
  }
  auto* bx = g.get<GroundType::Boxed>();
  auto* bv = v.get<SemValue::BoxedV>();
  if (!bv) throw internal("carrier_index: expected a boxed value");
  return carrier_index(*bv->payload, bx->inner, sig);
}

} // namespace

TreeGen::TreeGen(std::uint64_t seed, int carriers) : rng(seed), leafType(GroundType::unit()) {
  int n = std::max(1, carriers);
  BaseDecl d{"El", {}};
  for (int i = 0; i < n; ++i) d.elems.push_back("c" + std::to_string(i));
  sig.add_base(d);
  sig.add_op({"act", GroundType::base("El"), GroundType::base("El"), Grade::nat(2)});
  sig.add_op({"probe", GroundType::unit(), GroundType::base("El"), Grade::nat(1)});
  sig.add_op({"now", GroundType::base("El"), GroundType::unit(), Grade::nat(0)});
  sig.validate();
  leafType = GroundType::base("El");
}

std::uint64_t TreeGen::nat(std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

SemValue TreeGen::leaf_value() {
  auto elems = sig.find_base("El")->elems;
  return SemValue::elem("El", elems[nat(0, elems.size() - 1)]);
}

CompTree TreeGen::gen(int depth, const std::function<SemValue()>& mkLeaf) {
  if (depth <= 0 || nat(0, 3) == 0) return t_ret(mkLeaf());
  if (coin()) return t_delay(nat(0, 3), gen(depth - 1, mkLeaf));
  const auto& ops = sig.ops();
  const OpSignature& op = ops[nat(0, ops.size() - 1)];
  auto argCarrier = enumerate_carrier(op.param, 0, sig);
  SemValue arg = argCarrier[nat(0, argCarrier.size() - 1)];
  std::size_t width = enumerate_carrier(op.result, 0, sig).size();
  auto kids = std::make_shared<std::vector<CompTree>>();
  for (std::size_t i = 0; i < width; ++i) kids->push_back(gen(depth - 1, mkLeaf));
  // all branches must share one grade
  std::uint64_t g0 = tree_grade(kids->front(), sig);
  for (std::size_t i = 1; i < kids->size(); ++i)
    if (tree_grade((*kids)[i], sig) != g0) (*kids)[i] = kids->front();
  GroundType res = op.result;
  const SignatureTable* s = &sig;
  return t_op(op.name, arg,
              [kids, res, s](const SemValue& v) { return (*kids)[carrier_index(v, res, *s)]; },
              sig);
}

CompTree TreeGen::gen_value_tree(int depth) {
  return gen(depth, [this] { return leaf_value(); });
}

CompTree TreeGen::gen_tree_of_trees(int depth) {
  CompTree shared = gen_value_tree(depth > 1 ? depth - 1 : 1);
  return gen(depth, [shared] { return SemValue::tree(shared); });
}

SemClauses TreeGen::identity_clauses() {
  SemClauses clauses;
  for (const auto& op : sig.ops()) {
    const SignatureTable* s = &sig;
    std::string name = op.name;
    clauses[name] = [name, s](const SemValue& a, const SemValue& k, std::uint64_t) {
      auto* box = k.get<SemValue::BoxedV>();
      if (!box) throw internal("identity clause: continuation is not boxed");
      auto fn = box->payload->get<SemValue::FunV>()->fn;
      std::uint64_t avail = box->availableAt;
      return t_op(name, a, [fn, avail](const SemValue& b) { return fn(b, avail); }, *s);
    };
  }
  return clauses;
}

namespace {

struct Suite {
  const LawConfig& cfg;
  std::vector<LawResult> results;

  void check(const std::string& law, int instances, const std::function<bool(TreeGen&)>& one) {
    LawResult r{law, instances, 0};
    // per-law generator stream keyed off the seed, so suites are independent
    std::uint64_t lawSeed = cfg.seed * 1000003ULL + std::hash<std::string>{}(law);
    for (int i = 0; i < instances; ++i) {
      TreeGen gen(lawSeed + static_cast<std::uint64_t>(i) * 7919ULL, cfg.carriers);
      bool ok = one(gen);
      if (cfg.mutate == law) ok = !ok;
      if (!ok) ++r.failures;
    }
    results.push_back(r);
  }
};

} // namespace

const std::vector<std::string>& law_ids() {
  static const std::vector<std::string> ids = {
      "monad-left-unit", "monad-right-unit", "monad-assoc",
      "strength-unit", "strength-snd", "strength-mu", "strength-alpha",
      "alg-op-mu", "alg-delay-mu", "alg-op-strength", "alg-delay-strength",
      "chi-eta", "chi-delay", "chi-op",
      "canon-idempotent", "canon-grade",
  };
  return ids;
}

std::vector<LawResult> run_law_suites(const LawConfig& cfg) {
  Suite s{cfg, {}};
  int n = cfg.instances;
  int d = cfg.depth;

  // B.4 graded monad: left unit, right unit, associativity of mu.
  s.check("monad-left-unit", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    return tree_eq(mu(t_ret(SemValue::tree(t))), t, g.sig);
  });
  s.check("monad-right-unit", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    CompTree wrapped = map_tree(t, [](const SemValue& v) { return SemValue::tree(t_ret(v)); });
    return tree_eq(mu(wrapped), t, g.sig);
  });
  s.check("monad-assoc", n, [d](TreeGen& g) {
    // T t1 (T t2 (T t3 A)): leaves of the outer tree hold trees-of-trees
    CompTree inner = g.gen_tree_of_trees(d > 1 ? d - 1 : 1);
    CompTree ttt = g.gen(d, [inner] { return SemValue::tree(inner); });
    CompTree left = mu(mu(ttt));
    CompTree right = mu(map_tree(ttt, [](const SemValue& v) {
      return SemValue::tree(mu(v.get<SemValue::TreeV>()->tree));
    }));
    return tree_eq(left, right, g.sig);
  });

  // B.4 []-strength laws.
  s.check("strength-unit", n, [](TreeGen& g) {
    SemValue p = g.leaf_value();
    SemValue b = g.leaf_value();
    CompTree lhs = strength(p, 0, t_ret(b), g.sig);
    return tree_eq(lhs, t_ret(SemValue::pair(p, b)), g.sig);
  });
  s.check("strength-snd", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    SemValue p = g.leaf_value();
    CompTree st = strength(p, tree_grade(t, g.sig), t, g.sig);
    CompTree projected = map_tree(st, [](const SemValue& v) {
      return v.get<SemValue::PairV>()->snd;
    });
    return tree_eq(projected, t, g.sig);
  });
  s.check("strength-mu", n, [d](TreeGen& g) {
    CompTree tt = g.gen_tree_of_trees(d);
    SemValue p = g.leaf_value();
    std::uint64_t total = tree_grade(mu(tt), g.sig);
    std::uint64_t outer = tree_grade(tt, g.sig);
    std::uint64_t innerG = total - outer;
    CompTree left = strength(p, total, mu(tt), g.sig);
    CompTree right = mu(map_tree(tt, [p, innerG, &g](const SemValue& v) {
      return SemValue::tree(strength(p, innerG, v.get<SemValue::TreeV>()->tree, g.sig));
    }));
    return tree_eq(left, right, g.sig);
  });
  s.check("strength-alpha", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    std::uint64_t gr = tree_grade(t, g.sig);
    SemValue p1 = g.leaf_value(), p2 = g.leaf_value();
    CompTree nested = strength(p1, gr, strength(p2, gr, t, g.sig), g.sig);
    CompTree joint = map_tree(strength(SemValue::pair(p1, p2), gr, t, g.sig),
                              [](const SemValue& v) {
                                auto* o = v.get<SemValue::PairV>();
                                auto* i = o->fst.get<SemValue::PairV>();
                                return SemValue::pair(i->fst, SemValue::pair(i->snd, o->snd));
                              });
    return tree_eq(nested, joint, g.sig);
  });

  // B.6 algebraicity: op and delay nodes commute with mu and strength.
  s.check("alg-op-mu", n, [d](TreeGen& g) {
    const OpSignature& op = *g.sig.find_op("act");
    auto carrier = enumerate_carrier(op.result, 0, g.sig);
    auto kids = std::make_shared<std::vector<CompTree>>();
    for (std::size_t i = 0; i < carrier.size(); ++i)
      kids->push_back(g.gen_tree_of_trees(d > 1 ? d - 1 : 1));
    std::uint64_t g0 = tree_grade(mu(kids->front()), g.sig);
    for (std::size_t i = 1; i < kids->size(); ++i)
      if (tree_grade(mu((*kids)[i]), g.sig) != g0) (*kids)[i] = kids->front();
    SemValue arg = g.leaf_value();
    GroundType res = op.result;
    const SignatureTable* sp = &g.sig;
    Cont cont = [kids, res, sp](const SemValue& v) { return (*kids)[carrier_index(v, res, *sp)]; };
    CompTree left = mu(t_op("act", arg, cont, g.sig));
    CompTree right = t_op("act", arg, [cont](const SemValue& v) { return mu(cont(v)); }, g.sig);
    return tree_eq(left, right, g.sig);
  });
  s.check("alg-delay-mu", n, [d](TreeGen& g) {
    CompTree tt = g.gen_tree_of_trees(d);
    std::uint64_t tau = g.nat(0, 3);
    return tree_eq(mu(t_delay(tau, tt)), t_delay(tau, mu(tt)), g.sig);
  });
  s.check("alg-op-strength", n, [d](TreeGen& g) {
    const OpSignature& op = *g.sig.find_op("act");
    CompTree body = g.gen_value_tree(d > 1 ? d - 1 : 1);
    std::uint64_t inner = tree_grade(body, g.sig);
    Cont cont = [body](const SemValue&) { return body; };
    SemValue arg = g.leaf_value();
    SemValue p = g.leaf_value();
    CompTree node = t_op("act", arg, cont, g.sig);
    CompTree left = strength(p, op.duration.as_nat() + inner, node, g.sig);
    CompTree right = t_op("act", arg,
                          [p, inner, body, &g](const SemValue&) {
                            return strength(p, inner, body, g.sig);
                          },
                          g.sig);
    return tree_eq(left, right, g.sig);
  });
  s.check("alg-delay-strength", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    std::uint64_t inner = tree_grade(t, g.sig);
    std::uint64_t tau = g.nat(0, 3);
    SemValue p = g.leaf_value();
    CompTree left = strength(p, tau + inner, t_delay(tau, t), g.sig);
    CompTree right = t_delay(tau, strength(p, inner, t, g.sig));
    return tree_eq(left, right, g.sig);
  });

  // B.7 handling morphism: eta-, delay-, and op-algebra laws.
  s.check("chi-eta", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    return tree_eq(handle_chi(g.identity_clauses(), t_ret(SemValue::tree(t)), g.sig), t, g.sig);
  });
  s.check("chi-delay", n, [d](TreeGen& g) {
    CompTree tt = g.gen_tree_of_trees(d);
    std::uint64_t tau = g.nat(0, 3);
    SemClauses h = g.identity_clauses();
    CompTree left = handle_chi(h, t_delay(tau, tt), g.sig, 0);
    CompTree right = t_delay(tau, handle_chi(h, tt, g.sig, tau));
    return tree_eq(left, right, g.sig);
  });
  s.check("chi-op", n, [d](TreeGen& g) {
    const OpSignature& op = *g.sig.find_op("act");
    CompTree body = g.gen_tree_of_trees(d > 1 ? d - 1 : 1);
    Cont cont = [body](const SemValue&) { return body; };
    SemValue arg = g.leaf_value();
    SemClauses h = g.identity_clauses();
    CompTree left = handle_chi(h, t_op("act", arg, cont, g.sig), g.sig, 0);
    std::uint64_t dur = op.duration.as_nat();
    const SignatureTable* sp = &g.sig;
    SemClauses hc = h;
    SemValue boxedCont = SemValue::boxed(
        dur, SemValue::fun([cont, hc, sp, dur](const SemValue& b, std::uint64_t) {
          return handle_chi(hc, cont(b), *sp, dur);
        }));
    CompTree right = h["act"](arg, boxedCont, 0);
    return tree_eq(left, right, g.sig);
  });

  // Delay quotient: canonicalization is idempotent and grade-preserving.
  s.check("canon-idempotent", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    CompTree once = canonicalize_delays(t);
    return tree_eq(once, canonicalize_delays(once), g.sig);
  });
  s.check("canon-grade", n, [d](TreeGen& g) {
    CompTree t = g.gen_value_tree(d);
    return tree_grade(t, g.sig) == tree_grade(canonicalize_delays(t), g.sig);
  });

  return s.results;
}

std::string law_report(const std::vector<LawResult>& results, const LawConfig& cfg) {
  std::ostringstream out;
  out << "law suites: seed=" << cfg.seed << " depth=" << cfg.depth
      << " carriers=" << cfg.carriers << " instances=" << cfg.instances << "\n";
  if (cfg.depth <= 0)
    out << "warning: depth 0 generates only leaves; the suites are vacuous\n";
  int bad = 0;
  for (const auto& r : results) {
    out << (r.failures == 0 ? "  ok   " : "  FAIL ") << r.law << " (" << (r.instances - r.failures)
        << "/" << r.instances << ")\n";
    bad += r.failures;
  }
  out << (bad == 0 ? "all laws hold" : "violations detected") << "\n";
  return out.str();
}

} // namespace ltau
