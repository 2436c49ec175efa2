#include <doctest.h>

#include "corpus_harness.hpp"

using namespace ltau;

TEST_CASE("every corpus entry passes") {
  corpus::Corpus c(LTAU_CORPUS_DIR);
  auto out = corpus::run_all(c);
  for (const auto& f : out.failures) {
    INFO(f);
    CHECK(false);
  }
  CHECK(out.failed == 0);
  CHECK(out.passed == static_cast<int>(c.entries.size()));
}

TEST_CASE("the corpus covers every typing rule and every equation") {
  corpus::Corpus c(LTAU_CORPUS_DIR);
  auto out = corpus::run_all(c);
  for (const auto& rule : corpus::all_rules()) {
    INFO("rule ", rule);
    CHECK(out.rulesSeen.count(rule) == 1);
  }
  for (const auto& eq : corpus::all_equations()) {
    INFO("equation ", eq);
    CHECK(out.equationsSeen.count(eq) == 1);
  }
}
