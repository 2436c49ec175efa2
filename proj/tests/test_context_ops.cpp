#include <doctest.h>

#include "generators.hpp"
#include "ltau/context_ops.hpp"
#include "ltau/renaming.hpp"

using namespace ltau;

namespace {
Context ctx(std::vector<CtxEntry> es) { return Context(std::move(es)); }
ValueType U() { return ValueType::unit(); }
} // namespace

TEST_CASE("ctx_time folds the modalities") {
  CHECK(ctx_time(Context()) == Grade::zero());
  CHECK(ctx_time(ctx({Mod{Grade::nat(3)}, VarBind{"x", U()}, Mod{Grade::nat(2)}})) ==
        Grade::nat(5));
  CHECK(ctx_time(ctx({VarBind{"x", U()}})) == Grade::zero());
  // symbolic modalities sum symbolically
  Grade r = Grade::rigid_var(1);
  CHECK(ctx_time(ctx({Mod{Grade::nat(1)}, Mod{r}})) == Grade::nat(1) + r);
}

TEST_CASE("ctx_minus follows the time-travel recursion") {
  Context g1 = ctx({Mod{Grade::nat(5)}});
  CHECK(ctx_minus(g1, Grade::nat(3)) == ctx({Mod{Grade::nat(2)}}));

  Context g2 = ctx({Mod{Grade::nat(2)}, VarBind{"x", U()}});
  CHECK(ctx_minus(g2, Grade::nat(3)) == Context());

  Context g3 = ctx({VarBind{"x", U()}, Mod{Grade::nat(1)}, VarBind{"y", U()}});
  CHECK(ctx_minus(g3, Grade::zero()) == g3);

  // exact consumption leaves a <0> modality, as in the defining equations
  CHECK(ctx_minus(g1, Grade::nat(5)) == ctx({Mod{Grade::nat(0)}}));

  // an ambiguous comparison against a symbolic modality is an error
  Context g4 = ctx({Mod{Grade::rigid_var(1)}});
  CHECK_THROWS_AS(ctx_minus(g4, Grade::nat(2)), SymbolicUnderflow);
  // but a symbolic modality large enough for the whole subtraction is fine
  Context g5 = ctx({Mod{Grade::nat(3) + Grade::rigid_var(1)}});
  CHECK(ctx_minus(g5, Grade::nat(2)) ==
        ctx({Mod{Grade::nat(1) + Grade::rigid_var(1)}}));
}

TEST_CASE("var_lookup reports the elapsed grade right of the binding") {
  Context g = ctx({VarBind{"x", U()}, Mod{Grade::nat(4)}, VarBind{"y", U()}, Mod{Grade::nat(1)}});
  auto x = var_lookup(g, "x");
  REQUIRE(x.has_value());
  CHECK(x->type == U());
  CHECK(x->elapsed == Grade::nat(5));
  auto y = var_lookup(g, "y");
  REQUIRE(y.has_value());
  CHECK(y->elapsed == Grade::nat(1));
  CHECK(!var_lookup(g, "z").has_value());
  CHECK(!var_lookup(Context().extend_var("x", U()), "z").has_value());
  auto base = var_lookup(Context().extend_var("x", U()), "x");
  REQUIRE(base.has_value());
  CHECK(base->elapsed == Grade::zero());
}

TEST_CASE("time of a truncated context is the truncated time") {
  auto s = testgen::small_signature();
  testgen::TermGen gen(23, s);
  for (int i = 0; i < 300; ++i) {
    Context g = gen.gen_context(6, 5);
    Grade total = ctx_time(g);
    for (std::uint64_t tau = 0; tau <= total.as_nat(); ++tau) {
      Context cut = ctx_minus(g, Grade::nat(tau));
      CHECK(ctx_time(cut) == Grade::nat(total.as_nat() - tau));
    }
  }
}

TEST_CASE("truncation composes: (G - t1) - t2 = G - (t1 + t2)") {
  auto s = testgen::small_signature();
  testgen::TermGen gen(29, s);
  for (int i = 0; i < 300; ++i) {
    Context g = gen.gen_context(6, 5);
    for (std::uint64_t t1 = 0; t1 <= 5; ++t1)
      for (std::uint64_t t2 = 0; t2 <= 5; ++t2)
        CHECK(ctx_minus(ctx_minus(g, Grade::nat(t1)), Grade::nat(t2)) ==
              ctx_minus(g, Grade::nat(t1 + t2)));
  }
}

TEST_CASE("(G - tau), <tau> embeds back into G when tau fits") {
  auto s = testgen::small_signature();
  testgen::TermGen gen(31, s);
  for (int i = 0; i < 200; ++i) {
    Context g = gen.gen_context(5, 4);
    Grade total = ctx_time(g);
    for (std::uint64_t tau = 0; tau <= total.as_nat(); ++tau) {
      RenPtr rho = pra_counit(g, Grade::nat(tau));
      CHECK(rho->source() == ctx_minus(g, Grade::nat(tau)).extend_mod(Grade::nat(tau)));
      CHECK(rho->target() == g);
    }
  }
}
