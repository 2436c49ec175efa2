#include "ltau/context_ops.hpp"

namespace ltau {

Grade ctx_time(const Context& ctx) {
  Grade total = Grade::zero();
  for (const auto& e : ctx.entries())
    if (auto* m = std::get_if<Mod>(&e)) total = total + m->grade;
  return total;
}

Context ctx_minus(const Context& ctx, const Grade& tau) {
  std::uint64_t remaining = tau.as_nat();
  auto entries = ctx.entries();
  std::size_t end = entries.size();
  while (remaining > 0 && end > 0) {
    const auto& e = entries[end - 1];
    if (std::holds_alternative<VarBind>(e)) {
      --end;
      continue;
    }
    const Grade& g = std::get<Mod>(e).grade;
    Grade rem = Grade::nat(remaining);
    switch (grade_leq(rem, g)) {
      case Cmp::Yes: {
        Grade left = grade_monus_or_throw(g, rem, "CtxMinus");
        std::vector<CtxEntry> out(entries.begin(), entries.begin() + static_cast<long>(end - 1));
        out.push_back(Mod{left});
        return Context(std::move(out));
      }
      case Cmp::No:
        remaining -= g.as_nat(); // No answer implies g is concrete and < remaining
        --end;
        break;
      case Cmp::Unknown:
        throw SymbolicUnderflow({"CtxMinus",
                                 "cannot decide " + rem.str() + " <= " + g.str() +
                                     " for a symbolic context modality", {}, "", ""});
    }
  }
  return Context(std::vector<CtxEntry>(entries.begin(), entries.begin() + static_cast<long>(end)));
}

std::optional<TimedLookup> var_lookup(const Context& ctx, const std::string& name) {
  Grade elapsed = Grade::zero();
  const auto& entries = ctx.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (auto* m = std::get_if<Mod>(&*it)) {
      elapsed = elapsed + m->grade;
      continue;
    }
    const auto& v = std::get<VarBind>(*it);
    if (v.name == name) return TimedLookup{v.type, elapsed};
  }
  return std::nullopt;
}

} // namespace ltau
