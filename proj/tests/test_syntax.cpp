#include <doctest.h>

#include "generators.hpp"
#include "ltau/parser.hpp"
#include "ltau/pretty.hpp"
#include "ltau/typecheck.hpp"

using namespace ltau;

namespace {
SignatureTable sig() { return testgen::small_signature(); }
} // namespace

TEST_CASE("smallest programs parse to the expected constructors") {
  auto s = sig();
  auto m = parse_program("return ()", s);
  REQUIRE(std::holds_alternative<CReturn>(m->v));
  CHECK(std::holds_alternative<VUnit>(std::get<CReturn>(m->v).val->v));

  auto d = parse_program("delay 2 (return ())", s);
  REQUIRE(std::holds_alternative<CDelay>(d->v));
  CHECK(std::get<CDelay>(d->v).grade == Grade::nat(2));
  CHECK(std::holds_alternative<CReturn>(std::get<CDelay>(d->v).body->v));
}

TEST_CASE("let/delay/unbox/perform chains parse and the binders are fresh") {
  auto s = sig();
  auto m = parse_program(R"(
let x = perform emit b0 in
delay 1 (unbox@1 x as y in perform act y)
)", s);
  REQUIRE(std::holds_alternative<CLet>(m->v));
  Checker ck(s);
  CHECK(ck.elaborate(m).str() == "B ! 4");
}

TEST_CASE("parse errors carry positions and rules") {
  auto s = sig();
  CHECK_THROWS_AS(parse_program("return (", s), ParseError);
  CHECK_THROWS_AS(parse_program("perform nosuch ()", s), ParseError);
  CHECK_THROWS_AS(parse_program("return @", s), ParseError);
  try {
    parse_program("let x = return () in\nreturn (", s);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.diag.span.line == 2);
  }
}

TEST_CASE("duplicate binders are renamed apart, not rejected") {
  auto s = sig();
  auto m = parse_program("let x = return () in let x = return x in return x", s);
  const auto& outer = std::get<CLet>(m->v);
  const auto& inner = std::get<CLet>(outer.body->v);
  CHECK(outer.var != inner.var);
}

TEST_CASE("alpha equivalence identifies binder renamings only") {
  auto s = sig();
  auto f1 = parse_program("return (fun (x : unit) -> return x)", s);
  auto f2 = parse_program("return (fun (y : unit) -> return y)", s);
  CHECK(alpha_eq(f1, f2));

  // free variables are rigid
  auto u1 = c_return(v_var("x"));
  auto u2 = c_return(v_var("y"));
  CHECK(!alpha_eq(u1, u2));

  // grades are significant
  auto b1 = parse_program("return (box@3 ())", s);
  auto b2 = parse_program("return (box@2 ())", s);
  CHECK(!alpha_eq(b1, b2));
}

TEST_CASE("parse after pretty-print is the identity up to alpha equivalence") {
  auto s = sig();
  testgen::TermGen gen(11, s);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    CompPtr m = gen.gen_comp(Context(), CompType{gen.gen_vtype(1), Grade::nat(gen.nat(0, 5))},
                             3);
    CompPtr back = parse_program(pretty(m), s);
    CHECK(alpha_eq(m, back));
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("signature files parse and validate") {
  auto s = parse_signature(R"(
# a small inventory
base Part = { wheel, frame }
const swap : (Part) -> Part = { wheel -> frame, frame -> wheel }
operation weld : Part * Part ~> [2] Part ! 3
)");
  CHECK(s.find_base("Part") != nullptr);
  CHECK(s.find_const("swap") != nullptr);
  REQUIRE(s.find_op("weld") != nullptr);
  CHECK(s.find_op("weld")->duration == Grade::nat(3));

  CHECK_THROWS_AS(parse_signature("base P = { a, a }"), SignatureError);
  CHECK_THROWS_AS(parse_signature(
      "base P = { a }\nconst f : (P) -> P = { }"), SignatureError);
  CHECK_THROWS_AS(parse_signature(
      "base P = { a }\nbase Q = { a }"), SignatureError);
}

TEST_CASE("freshen renames every binder and preserves alpha equivalence") {
  auto s = sig();
  auto m = parse_program("let x = return () in return (fun (y : unit) -> return x)", s);
  auto fresh = freshen(m);
  CHECK(alpha_eq(m, fresh));
  CHECK(std::get<CLet>(m->v).var != std::get<CLet>(fresh->v).var);
}

TEST_CASE("free variables are reported in first-use order") {
  auto s = sig();
  auto m = c_let("z", c_return(v_var("a")), c_apply(v_var("f"), v_var("z")));
  auto fv = free_vars(m);
  REQUIRE(fv.size() == 2);
  CHECK(fv[0] == "a");
  CHECK(fv[1] == "f");
}
