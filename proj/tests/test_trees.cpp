#include <doctest.h>

#include "ltau/laws.hpp"
#include "ltau/trees.hpp"

using namespace ltau;

namespace {

SignatureTable tiny() {
  SignatureTable sig;
  sig.add_base({"E", {"a", "b"}});
  sig.add_op({"f", GroundType::base("E"), GroundType::base("E"), Grade::nat(2)});
  sig.validate();
  return sig;
}

SemValue A() { return SemValue::elem("E", "a"); }
SemValue B() { return SemValue::elem("E", "b"); }

} // namespace

TEST_CASE("eta builds a grade-zero leaf") {
  auto sig = tiny();
  CompTree t = eta(SemValue::unit());
  CHECK(tree_grade(t, sig) == 0);
  CHECK(tree_eq(t, t_ret(SemValue::unit()), sig));
  CHECK(tree_eq(mu(t_ret(SemValue::tree(t))), t, sig));
}

TEST_CASE("mu grafts and adds grades") {
  auto sig = tiny();
  // outer : T 2 (T 3 E): an op node whose leaves hold delay-3 trees
  CompTree inner = t_delay(3, t_ret(A()));
  CompTree outer =
      t_op("f", A(), [inner](const SemValue&) { return t_ret(SemValue::tree(inner)); }, sig);
  CompTree flat = mu(outer);
  CHECK(tree_grade(flat, sig) == 5);
  // grafting composes with continuations: mu over an op node wraps its cont
  CHECK(tree_eq(flat, t_op("f", A(), [](const SemValue&) {
    return t_delay(3, t_ret(A()));
  }, sig), sig));
}

TEST_CASE("strength pairs the payload at the leaves and preserves the grade") {
  auto sig = tiny();
  // unit law instance: avail 0 over a leaf
  CHECK(tree_eq(strength(A(), 0, t_ret(B()), sig), t_ret(SemValue::pair(A(), B())), sig));

  CompTree t = t_delay(1, t_op("f", B(), [](const SemValue& v) { return t_ret(v); }, sig));
  CHECK(tree_grade(t, sig) == 3);
  CompTree st = strength(A(), 3, t, sig);
  CHECK(tree_grade(st, sig) == 3);
  // snd projection undoes it
  CompTree back = map_tree(st, [](const SemValue& v) { return v.get<SemValue::PairV>()->snd; });
  CHECK(tree_eq(back, t, sig));
  // availability bookkeeping mismatches are bugs, not data
  CHECK_THROWS_AS(strength(A(), 2, t, sig), InternalError);
}

TEST_CASE("canonicalize removes zero and consecutive delays") {
  auto sig = tiny();
  CHECK(tree_eq(canonicalize_delays(t_delay(0, t_ret(A()))), t_ret(A()), sig));
  CompTree nested = t_delay(2, t_delay(3, t_ret(A())));
  CompTree canon = canonicalize_delays(nested);
  CHECK(tree_eq(canon, t_delay(5, t_ret(A())), sig));
  // equal only after canonicalization
  CHECK(!tree_eq(nested, t_delay(5, t_ret(A())), sig));
  // under op continuations, on demand
  CompTree t = t_op("f", A(), [](const SemValue&) { return t_delay(0, t_ret(B())); }, sig);
  CompTree c = canonicalize_delays(t);
  CHECK(tree_eq(c, t_op("f", A(), [](const SemValue&) { return t_ret(B()); }, sig), sig));
}

TEST_CASE("handle_chi replaces op nodes and passes delays through") {
  auto sig = tiny();
  // Ret(tree) is returned as-is
  CompTree t = t_delay(1, t_ret(A()));
  SemClauses none;
  CHECK(tree_eq(handle_chi(none, t_ret(SemValue::tree(t)), sig), t, sig));

  // delays pass through untouched
  CompTree wrapped = t_delay(3, t_ret(SemValue::tree(t_ret(A()))));
  CHECK(tree_eq(handle_chi(none, wrapped, sig), t_delay(3, t_ret(A())), sig));

  // clauses receive the boxed resumption, available tau_op later
  SemClauses clauses;
  clauses["f"] = [&sig](const SemValue& a, const SemValue& k, std::uint64_t now) {
    auto* box = k.get<SemValue::BoxedV>();
    REQUIRE(box != nullptr);
    CHECK(box->availableAt == now + 2);
    auto fn = box->payload->get<SemValue::FunV>()->fn;
    return t_op("f", a, [fn, box](const SemValue& b) { return fn(b, box->availableAt); }, sig);
  };
  CompTree node = t_op("f", A(), [](const SemValue& v) {
    return t_ret(SemValue::tree(t_ret(v)));
  }, sig);
  CompTree handled = handle_chi(clauses, node, sig);
  CompTree expect = t_op("f", A(), [](const SemValue& v) { return t_ret(v); }, sig);
  CHECK(tree_eq(handled, expect, sig));
}

TEST_CASE("tree_eq compares continuations pointwise and needs finite carriers") {
  auto sig = tiny();
  CompTree t1 = t_op("f", A(), [](const SemValue& v) { return t_ret(v); }, sig);
  CompTree t2 = t_op("f", A(), [](const SemValue& v) { return t_ret(v); }, sig);
  CHECK(tree_eq(t1, t2, sig));
  // differ at one continuation point
  CompTree t3 = t_op("f", A(), [](const SemValue& v) {
    auto* e = v.get<SemValue::BaseElem>();
    return e->elem == "a" ? t_ret(v) : t_ret(SemValue::elem("E", "a"));
  }, sig);
  CHECK(!tree_eq(t1, t3, sig));
  // function leaves cannot be compared
  CompTree f1 = t_ret(SemValue::fun([](const SemValue&, std::uint64_t) {
    return t_ret(SemValue::unit());
  }));
  CHECK_THROWS_AS(tree_eq(f1, f1, sig), CarrierError);
}

TEST_CASE("carrier enumeration timestamps boxed values from their birth time") {
  auto sig = tiny();
  auto boxed = enumerate_carrier(GroundType::boxed(Grade::nat(4), GroundType::base("E")), 2, sig);
  REQUIRE(boxed.size() == 2);
  auto* bv = boxed[0].get<SemValue::BoxedV>();
  REQUIRE(bv != nullptr);
  CHECK(bv->availableAt == 6);
}

TEST_CASE("law suites hold on a quick configuration") {
  LawConfig cfg{12345, 3, 2, 40, ""};
  auto results = run_law_suites(cfg);
  CHECK(results.size() == law_ids().size());
  for (const auto& r : results) {
    INFO(r.law);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("the harness detects an injected violation") {
  LawConfig cfg{12345, 3, 2, 10, "alg-delay-mu"};
  auto results = run_law_suites(cfg);
  bool found = false;
  for (const auto& r : results)
    if (r.law == "alg-delay-mu") {
      found = true;
      CHECK(r.failures == r.instances);
    }
  CHECK(found);
}
