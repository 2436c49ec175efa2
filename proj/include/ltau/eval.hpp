#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ltau/syntax.hpp"
#include "ltau/trees.hpp"

namespace ltau {

// Trace events, ordered by virtual time. Times equal the accumulated spine
// grade before the event.
struct TraceEvent {
  enum class Kind { OpStart, DelayStart, Unbox, Return } kind;
  std::string name;          // OpStart: op name
  std::string value;         // OpStart: argument; Return: result
  std::uint64_t tau = 0;     // DelayStart
  std::uint64_t resource = 0;    // Unbox: resource id
  std::uint64_t availableAt = 0; // Unbox
  std::uint64_t time = 0;

  std::string json() const;
};

using Trace = std::vector<TraceEvent>;

// Maps an operation to its result at the given completion time. The default
// oracle picks the first element of the result carrier, so runs and traces
// are deterministic.
using Oracle =
    std::function<SemValue(const OpSignature&, const SemValue& arg, std::uint64_t completion)>;
Oracle default_oracle(const SignatureTable& sig);

struct RunResult {
  CompTree tree; // canonical
  Trace trace;
};

// Big-step evaluation of a closed, elaborated computation into a canonical
// tree plus the trace of the deterministic walk. Raises MonitorError when an
// unbox executes before its resource is available (unreachable for
// typechecked programs), FuelError past the step limit.
RunResult run(const CompPtr& m, const SignatureTable& sig, std::uint64_t fuel = 1'000'000,
              Oracle oracle = nullptr);

// Evaluation without the trace walk; useful for comparing trees.
CompTree eval_to_tree(const CompPtr& m, const SignatureTable& sig, std::uint64_t fuel = 1'000'000);

} // namespace ltau
