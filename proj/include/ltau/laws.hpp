#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ltau/trees.hpp"

namespace ltau {

// Randomized checks of the semantic laws the computation-tree model must
// satisfy: graded-monad unit/associativity, the four []-strength laws, the
// four algebraicity squares, the three handling-algebra laws, and the
// delay-quotient properties. All randomness is seeded; identical
// configurations produce identical reports.
struct LawConfig {
  std::uint64_t seed = 1;
  int depth = 3;     // maximum tree depth
  int carriers = 2;  // carrier size bound for generated signatures
  int instances = 200;
  std::string mutate; // law id to perturb, for harness self-checks
};

struct LawResult {
  std::string law;
  int instances = 0;
  int failures = 0;
};

// Law ids, in report order.
const std::vector<std::string>& law_ids();

std::vector<LawResult> run_law_suites(const LawConfig& cfg);
std::string law_report(const std::vector<LawResult>& results, const LawConfig& cfg);

// Building blocks reused by the acceptance suite.
struct TreeGen {
  std::mt19937_64 rng;
  SignatureTable sig;
  GroundType leafType;

  explicit TreeGen(std::uint64_t seed, int carriers = 2);

  std::uint64_t nat(std::uint64_t lo, std::uint64_t hi);
  bool coin() { return nat(0, 1) == 1; }

  SemValue leaf_value();
  // Random tree with the given leaf generator; depth bounds the spine.
  CompTree gen(int depth, const std::function<SemValue()>& mkLeaf);
  CompTree gen_value_tree(int depth);
  // Tree whose leaves hold grade-uniform trees (for mu/chi laws). All inner
  // trees share one shape so the composite is grade-correct.
  CompTree gen_tree_of_trees(int depth);

  // Identity clauses: re-perform the operation and resume.
  SemClauses identity_clauses();
};

} // namespace ltau
