#include <doctest.h>

#include "generators.hpp"
#include "ltau/parser.hpp"
#include "ltau/substitution.hpp"
#include "ltau/typecheck.hpp"

using namespace ltau;

namespace {
ValueType U() { return ValueType::unit(); }

CompPtr elaborated(const SignatureTable& s, const CompPtr& m, const Context& g) {
  Checker ck(s);
  ck.elaborate(m, g);
  return m;
}
} // namespace

TEST_CASE("substitution beta-reduces returns") {
  auto s = testgen::small_signature();
  Context g = Context().extend_var("x", U());
  auto m = elaborated(s, c_return(v_var("x")), g);
  auto out = subst(m, v_unit(), "x", s);
  CHECK(alpha_eq(out, c_return(v_unit())));
}

TEST_CASE("unbox keep case: x survives the time travel") {
  auto s = testgen::small_signature();
  // G = ., x : [2]unit;  t = delay 2 (unbox@2 x as y in return y)
  Context g = Context().extend_var("x", ValueType::boxed(Grade::nat(2), U()));
  auto t = parse_program("delay 2 (unbox@2 x as y in return y)", s);
  elaborated(s, t, g);
  auto w = v_box(Grade::nat(2), v_unit());
  auto out = subst(t, w, "x", s);
  // W reached the boxed position (elapsed 2 >= tau 2)
  auto expect = parse_program("delay 2 (unbox@2 (box@2 ()) as y in return y)", s);
  CHECK(alpha_eq(out, expect));
  Checker ck(s);
  CHECK(ck.elaborate(out) == CompType{U(), Grade::nat(2)});
}

TEST_CASE("unbox drop case: the boxed value is typed before x entered scope") {
  auto s = testgen::small_signature();
  // G = ., <5>, x : unit;  inside, an unbox@3 whose V lives at ., <2>
  Context g = Context().extend_mod(Grade::nat(5)).extend_var("x", U());
  auto t = parse_program("let u = return x in unbox@3 (box@3 b0) as y in return y", s);
  elaborated(s, t, g);
  auto out = subst(t, v_unit(), "x", s);
  // x was substituted in the let, while the boxed value is untouched
  auto expect =
      parse_program("let u = return () in unbox@3 (box@3 b0) as y in return y", s);
  CHECK(alpha_eq(out, expect));
  Checker ck(s);
  CHECK(ck.elaborate(out, Context().extend_mod(Grade::nat(5))) ==
        CompType{ValueType::base("B"), Grade::zero()});
}

TEST_CASE("substituted terms re-typecheck at the original type (small scale)") {
  auto s = testgen::small_signature();
  testgen::TermGen gen(71, s);
  int done = 0;
  for (int i = 0; i < 200; ++i) {
    ValueType x = gen.gen_vtype(1);
    Context g = Context().extend_var("x", x);
    CompType want{gen.gen_vtype(1), Grade::nat(gen.nat(0, 4))};
    CompPtr t = gen.gen_comp(g, want, 3);
    elaborated(s, t, g);
    ValuePtr w = gen.closed_value(x);
    CompPtr out = subst(t, w, "x", s);
    Checker ck(s);
    CHECK(ck.elaborate(out) == want);
    ++done;
  }
  CHECK(done == 200);
}

TEST_CASE("substitution commutes with renaming on disjoint regions") {
  auto s = testgen::small_signature();
  testgen::TermGen terms(73, s);
  testgen::RenamingGen rens(79, terms);
  for (int i = 0; i < 100; ++i) {
    // t typed in (., x:X); rename the result context afterwards vs. renaming
    // a weakened source first: both routes substitute the same closed w.
    ValueType x = terms.gen_vtype(1);
    Context g = Context().extend_var("x", x);
    CompType want{terms.gen_vtype(1), Grade::nat(terms.nat(0, 3))};
    CompPtr t = terms.gen_comp(g, want, 2);
    elaborated(s, t, g);
    ValuePtr w = terms.closed_value(x);

    CompPtr substFirst = subst(t, w, "x", s);
    RenPtr rho = rens.gen(Context(), 2); // renaming of the empty context
    CompPtr route1 = apply_renaming(rho, substFirst);

    // lift rho under the binder x, apply, then substitute
    RenPtr lifted = Renaming::cong_var(rho, "x", x);
    CompPtr renamedFirst = apply_renaming(lifted, t);
    elaborated(s, renamedFirst, lifted->target());
    CompPtr route2 = subst(renamedFirst, w, "x", s);

    CHECK(alpha_eq(route1, route2));
  }
}
