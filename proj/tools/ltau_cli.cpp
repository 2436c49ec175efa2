// Command-line front end: typecheck, run, normalize, compare, and law-test
// lambda-tau programs.
//
// Exit codes: 0 success, 1 type/grade/temporal error, 2 parse or signature
// error, 3 monitor violation, 4 internal assertion.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ltau/equiv.hpp"
#include "ltau/eval.hpp"
#include "ltau/laws.hpp"
#include "ltau/parser.hpp"
#include "ltau/pretty.hpp"
#include "ltau/typecheck.hpp"

using namespace ltau;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTypeError = 1;
constexpr int kExitParseError = 2;
constexpr int kExitMonitor = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError({"IO", "cannot open " + path, {}, "", ""});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') { out += "\\n"; continue; }
    out += c;
  }
  return out;
}

std::string diag_json(const std::string& file, const Diagnostic& d) {
  std::ostringstream out;
  out << "{\"file\":\"" << json_escape(file) << "\",\"rule\":\"" << json_escape(d.rule)
      << "\",\"message\":\"" << json_escape(d.message) << "\"";
  if (d.span.known()) out << ",\"line\":" << d.span.line << ",\"col\":" << d.span.col;
  if (!d.expected.empty()) out << ",\"expected\":\"" << json_escape(d.expected) << "\"";
  if (!d.actual.empty()) out << ",\"actual\":\"" << json_escape(d.actual) << "\"";
  out << "}";
  return out.str();
}

struct Options {
  std::string sigPath;
  bool json = false;
  std::uint64_t fuel = 1'000'000;
};

SignatureTable load_sig(const Options& opt) {
  if (opt.sigPath.empty())
    throw ParseError({"IO", "a signature file is required (--sig PATH)", {}, "", ""});
  return parse_signature(read_file(opt.sigPath), opt.sigPath);
}

int report_error(const Options& opt, const std::string& file, const LtauError& e, int code) {
  if (opt.json)
    std::cout << diag_json(file, e.diag) << "\n";
  else
    std::cerr << file << ":" << e.diag.render() << "\n";
  return code;
}

int cmd_check(const Options& opt, const std::vector<std::string>& files, bool unsafeSkip) {
  SignatureTable sig = load_sig(opt);
  int worst = kExitOk;
  for (const auto& file : files) {
    try {
      CompPtr m = parse_program(read_file(file), sig, file);
      Checker checker(sig, unsafeSkip);
      CompType ty = checker.elaborate(m);
      if (opt.json)
        std::cout << "{\"file\":\"" << json_escape(file) << "\",\"type\":\""
                  << json_escape(ty.str()) << "\"}\n";
      else
        std::cout << file << ": " << ty.str() << "\n";
    } catch (const ParseError& e) {
      worst = std::max(worst, report_error(opt, file, e, kExitParseError));
    } catch (const SignatureError& e) {
      worst = std::max(worst, report_error(opt, file, e, kExitParseError));
    } catch (const InternalError& e) {
      worst = std::max(worst, report_error(opt, file, e, kExitInternal));
    } catch (const LtauError& e) {
      worst = std::max(worst, report_error(opt, file, e, kExitTypeError));
    }
  }
  return worst;
}

int cmd_run(const Options& opt, const std::string& file, const std::string& tracePath,
            bool unsafeSkip) {
  SignatureTable sig = load_sig(opt);
  try {
    CompPtr m = parse_program(read_file(file), sig, file);
    Checker checker(sig, unsafeSkip);
    CompType ty = checker.elaborate(m);
    RunResult rr = run(m, sig, opt.fuel);
    std::ostringstream trace;
    trace << "{\"schema\":\"ltau-trace\",\"version\":1,\"program\":\"" << json_escape(file)
          << "\",\"type\":\"" << json_escape(ty.str()) << "\"}\n";
    for (const auto& e : rr.trace) trace << e.json() << "\n";
    if (!tracePath.empty()) {
      std::ofstream out(tracePath);
      out << trace.str();
    }
    if (opt.json) {
      if (tracePath.empty()) std::cout << trace.str();
    } else {
      std::cout << file << ": " << ty.str() << "\n";
      std::cout << serialize_tree(rr.tree, sig) << "\n";
      if (tracePath.empty())
        for (const auto& e : rr.trace) std::cout << e.json() << "\n";
    }
    return kExitOk;
  } catch (const MonitorError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitMonitor;
  } catch (const ParseError& e) {
    return report_error(opt, file, e, kExitParseError);
  } catch (const SignatureError& e) {
    return report_error(opt, file, e, kExitParseError);
  } catch (const InternalError& e) {
    return report_error(opt, file, e, kExitInternal);
  } catch (const FuelError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitInternal;
  } catch (const LtauError& e) {
    return report_error(opt, file, e, kExitTypeError);
  }
}

int cmd_normalize(const Options& opt, const std::string& file) {
  SignatureTable sig = load_sig(opt);
  try {
    CompPtr m = parse_program(read_file(file), sig, file);
    Checker checker(sig);
    checker.elaborate(m);
    CompPtr n = normalize(m, sig);
    Checker recheck(sig);
    CompType ty = recheck.elaborate(n);
    if (opt.json)
      std::cout << "{\"file\":\"" << json_escape(file) << "\",\"type\":\""
                << json_escape(ty.str()) << "\",\"normal\":\"" << json_escape(pretty(n))
                << "\"}\n";
    else
      std::cout << "# " << ty.str() << "\n" << pretty(n) << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    return report_error(opt, file, e, kExitParseError);
  } catch (const InternalError& e) {
    return report_error(opt, file, e, kExitInternal);
  } catch (const LtauError& e) {
    return report_error(opt, file, e, kExitTypeError);
  }
}

int cmd_eq(const Options& opt, const std::string& fileL, const std::string& fileR) {
  SignatureTable sig = load_sig(opt);
  try {
    CompPtr l = parse_program(read_file(fileL), sig, fileL);
    CompPtr r = parse_program(read_file(fileR), sig, fileR);
    Equiv verdict = check_equiv(l, r, sig);
    const char* text = verdict == Equiv::Equal ? "Equal" : "Unknown";
    if (opt.json)
      std::cout << "{\"left\":\"" << json_escape(fileL) << "\",\"right\":\"" << json_escape(fileR)
                << "\",\"verdict\":\"" << text << "\"}\n";
    else
      std::cout << text << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    return report_error(opt, fileL, e, kExitParseError);
  } catch (const InternalError& e) {
    return report_error(opt, fileL, e, kExitInternal);
  } catch (const LtauError& e) {
    return report_error(opt, fileL, e, kExitTypeError);
  }
}

int cmd_laws(std::uint64_t seed, int depth, int carriers, int instances,
             const std::string& mutate) {
  LawConfig cfg{seed, depth, carriers, instances, mutate};
  auto results = run_law_suites(cfg);
  std::cout << law_report(results, cfg);
  for (const auto& r : results)
    if (r.failures > 0) return kExitTypeError;
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-tau: a toolchain for a core calculus of temporal resources"};
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> files;
  std::string file, fileR, tracePath;
  bool unsafeSkip = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--sig", opt.sigPath, "signature file (.sig)");
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_option("--fuel", opt.fuel, "evaluation step limit");
  };

  auto* check = app.add_subcommand("check", "typecheck programs");
  common(check);
  check->add_option("files", files, "program files")->required();
  check->add_flag("--unsafe-skip-check", unsafeSkip,
                  "skip the unbox temporal side conditions");

  auto* runCmd = app.add_subcommand("run", "evaluate a closed program to a computation tree");
  common(runCmd);
  runCmd->add_option("file", file, "program file")->required();
  runCmd->add_option("--trace", tracePath, "write the JSONL trace to this path");
  runCmd->add_flag("--unsafe-skip-check", unsafeSkip,
                   "skip the unbox temporal side conditions (the runtime monitor still checks)");

  auto* norm = app.add_subcommand("normalize", "print the normal form of a program");
  common(norm);
  norm->add_option("file", file, "program file")->required();

  auto* eq = app.add_subcommand("eq", "compare two programs up to the equational theory");
  common(eq);
  eq->add_option("left", file, "left program")->required();
  eq->add_option("right", fileR, "right program")->required();

  std::uint64_t seed = 1;
  int depth = 3, carriers = 2, instances = 200;
  std::string mutate;
  auto* laws = app.add_subcommand("laws", "run the semantic law property suites");
  laws->add_option("--seed", seed, "random seed (printed in the report)");
  laws->add_option("--depth", depth, "maximum generated tree depth");
  laws->add_option("--carriers", carriers, "carrier size bound");
  laws->add_option("--instances", instances, "instances per law");
  laws->add_option("--mutate", mutate, "law id to perturb (harness self-check)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt, files, unsafeSkip);
    if (runCmd->parsed()) return cmd_run(opt, file, tracePath, unsafeSkip);
    if (norm->parsed()) return cmd_normalize(opt, file);
    if (eq->parsed()) return cmd_eq(opt, file, fileR);
    if (laws->parsed()) return cmd_laws(seed, depth, carriers, instances, mutate);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
