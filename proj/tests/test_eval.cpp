#include <doctest.h>

#include "generators.hpp"
#include "ltau/equiv.hpp"
#include "ltau/eval.hpp"
#include "ltau/parser.hpp"
#include "ltau/typecheck.hpp"

using namespace ltau;

namespace {

CompPtr checked(const SignatureTable& s, const std::string& src) {
  CompPtr m = parse_program(src, s);
  Checker ck(s);
  ck.elaborate(m);
  return m;
}

} // namespace

TEST_CASE("run of return is a leaf with a single trace event") {
  auto s = testgen::small_signature();
  auto rr = run(checked(s, "return ()"), s);
  CHECK(tree_eq(rr.tree, t_ret(SemValue::unit()), s));
  REQUIRE(rr.trace.size() == 1);
  CHECK(rr.trace[0].kind == TraceEvent::Kind::Return);
  CHECK(rr.trace[0].time == 0);
}

TEST_CASE("consecutive delays collapse and the trace keeps both starts") {
  auto s = testgen::small_signature();
  auto rr = run(checked(s, "delay 2 (delay 3 (return ()))"), s);
  CHECK(tree_eq(rr.tree, t_delay(5, t_ret(SemValue::unit())), s));
  REQUIRE(rr.trace.size() == 3);
  CHECK(rr.trace[0].kind == TraceEvent::Kind::DelayStart);
  CHECK(rr.trace[0].time == 0);
  CHECK(rr.trace[1].kind == TraceEvent::Kind::DelayStart);
  CHECK(rr.trace[1].time == 2);
  CHECK(rr.trace[2].kind == TraceEvent::Kind::Return);
  CHECK(rr.trace[2].time == 5);
}

TEST_CASE("trace event times equal the accumulated spine grade") {
  auto s = testgen::small_signature();
  auto rr = run(checked(s, "let x = perform act b0 in delay 1 (perform act x)"), s);
  std::uint64_t last = 0;
  for (const auto& e : rr.trace) {
    CHECK(e.time >= last);
    last = e.time;
  }
  CHECK(rr.trace.back().kind == TraceEvent::Kind::Return);
  CHECK(rr.trace.back().time == 5);
}

TEST_CASE("grade fidelity: the tree grade matches the static grade") {
  auto s = testgen::small_signature();
  testgen::TermGen gen(83, s);
  for (int i = 0; i < 200; ++i) {
    CompType want{embed(gen.gen_ground(1)), Grade::nat(gen.nat(0, 5))};
    CompPtr m = gen.gen_comp(Context(), want, 3);
    Checker ck(s);
    ck.elaborate(m);
    CHECK(tree_grade(eval_to_tree(m, s), s) == want.grade.as_nat());
  }
}

TEST_CASE("monitor is silent on typechecked programs and loud without the checker") {
  auto s = testgen::small_signature();
  // well-typed: box available exactly when unboxed
  auto ok = checked(s, "delay 2 (unbox@2 (box@2 b0) as y in return y)");
  auto rr = run(ok, s);
  bool sawUnbox = false;
  for (const auto& e : rr.trace)
    if (e.kind == TraceEvent::Kind::Unbox) {
      sawUnbox = true;
      CHECK(e.time == 2);
      CHECK(e.availableAt == 2);
    }
  CHECK(sawUnbox);

  // unchecked: unboxing a 2-box after 1 unit trips the monitor
  CompPtr bad = parse_program("delay 1 (unbox@2 (box@2 b0) as y in return y)", s);
  Checker unsafe(s, /*skipTemporal=*/true);
  unsafe.elaborate(bad);
  CHECK_THROWS_AS(run(bad, s), MonitorError);
}

TEST_CASE("run rejects open terms") {
  auto s = testgen::small_signature();
  CompPtr open = parse_program("return x", s);
  Checker unsafe(s, true);
  CHECK_THROWS_AS(run(open, s), TypeError);
}

TEST_CASE("fuel limits runaway evaluation") {
  auto s = testgen::small_signature();
  auto m = checked(s, "let a = perform act b0 in let b = perform act a in return b");
  CHECK_THROWS_AS(run(m, s, 3), FuelError);
}

TEST_CASE("handling agrees with normalize-then-run") {
  auto s = testgen::small_signature();
  std::string handled = R"(
handle (let a = perform act b0 in delay 1 (return a))
with { act x k -> delay 2 (unbox@2 k as r in r x),
       emit x k -> delay 1 (unbox@1 k as r in r (box@1 x)),
       zip x k -> unbox@0 k as r in r () }
to y in return y
)";
  CompPtr m = checked(s, handled);
  CompPtr n = normalize(m, s);
  Checker ck(s);
  ck.elaborate(n);
  CHECK(tree_eq(eval_to_tree(m, s), eval_to_tree(n, s), s));

  // handling return: handle (return v) with H to x in N == N[v/x]
  CompPtr hret = checked(s, R"(
handle (return b0)
with { act x k -> delay 2 (unbox@2 k as r in r x),
       emit x k -> delay 1 (unbox@1 k as r in r (box@1 x)),
       zip x k -> unbox@0 k as r in r () }
to y in perform act y
)");
  CompPtr direct = checked(s, "perform act b0");
  CHECK(tree_eq(eval_to_tree(hret, s), eval_to_tree(direct, s), s));

  // a re-performing identity handler reproduces the unhandled tree
  CompPtr ident = checked(s, R"(
handle (let a = perform act b0 in perform act a)
with { act x k -> perform act x as z in unbox@2 k as r in r z,
       emit x k -> perform emit x as z in unbox@1 k as r in r z,
       zip x k -> perform zip x as z in unbox@0 k as r in r z }
to y in return y
)");
  CompPtr plain = checked(s, "let a = perform act b0 in perform act a");
  CHECK(tree_eq(eval_to_tree(ident, s), eval_to_tree(plain, s), s));
}

TEST_CASE("delays pass through handlers untouched") {
  auto s = testgen::small_signature();
  CompPtr m = checked(s, R"(
handle (delay 3 (return b0))
with { act x k -> delay 2 (unbox@2 k as r in r x),
       emit x k -> delay 1 (unbox@1 k as r in r (box@1 x)),
       zip x k -> unbox@0 k as r in r () }
to y in return y
)");
  CHECK(tree_eq(eval_to_tree(m, s), t_delay(3, t_ret(SemValue::elem("B", "b0"))), s));
}
