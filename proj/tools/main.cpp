#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twzhu/suites.hpp"

using nlohmann::json;
using namespace twzhu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void printChecks(std::ostream& os, const json& suite) {
  os << "== " << suite["name"].get<std::string>() << '\n';
  for (const auto& c : suite["checks"]) {
    os << '[' << c["verdict"].get<std::string>() << "] " << c["name"].get<std::string>() << ' '
       << c["params"].dump() << ": " << c["witness"].get<std::string>() << " (" << c["elapsed_ms"] << " ms)\n";
  }
}

void printSummary(std::ostream& os, const json& summary) {
  os << "summary: " << summary["pass"] << " pass, " << summary["fail"] << " fail, " << summary["inconclusive"]
     << " inconclusive\n";
}

void printQuotient(std::ostream& os, const json& q) {
  os << "A(n=" << q["n"].get<std::string>() << ", m=" << q["m"].get<std::string>() << ") at N=" << q["N"]
     << " G=" << q["G"] << " P=" << q["P"].get<std::string>() << ": slice " << q["slice_dim"] << ", span rank "
     << q["span_rank"] << ", dimension " << q["basis"].size() << '\n';
  for (const auto& b : q["basis"]) os << "  " << b.get<std::string>() << '\n';
  for (const char* table : {"multiplication", "left_action", "right_action"}) {
    if (!q.contains(table)) continue;
    os << table << ":\n";
    for (const auto& e : q[table]) {
      os << "  " << e["left"].get<std::string>() << " . " << e["right"].get<std::string>() << " = "
         << (e["value"].is_null() ? std::string("(outside slice)") : e["value"].get<std::string>()) << '\n';
    }
  }
}

json straightenJson(const Config& cfg, const std::string& text) {
  auto voa = cfg.makeAlgebra();
  const VoaBackend& B = voa->backend();
  const UPoly x = parseMonomial(B, text);
  const FiltrationCtx ctx{cfg.n, cfg.m};
  Straightener st(*voa, ctx);
  const Element u = st.straighten(x);
  const UPoly image = jMap(B, cfg.m - cfg.n, u);
  std::string verdict = "pass";
  std::string witness = "actions agree on degrees <= " + cfg.m.toString();
  for (const auto& module : makeTwistedModules(B, cfg.kmax)) {
    FieldEngine engine(*voa, *module);
    for (const ModState& w : module->statesUpTo(cfg.m)) {
      const ModuleVector lhs = actOn(engine, image, ModuleVector(w));
      const ModuleVector rhs = actOn(engine, normalizeVacuum(x), ModuleVector(w));
      if (lhs != rhs && verdict == "pass") {
        verdict = "fail";
        witness = "on " + module->stateText(w) + ": " + formatModuleVector(*module, lhs) + " vs " +
                  formatModuleVector(*module, rhs);
      }
    }
  }
  return {{"schema", kReportSchema},
          {"input", formatUPoly(B, x)},
          {"n", cfg.n.toString()},
          {"m", cfg.m.toString()},
          {"normal_form", formatElement(B, u)},
          {"image", formatUPoly(B, image)},
          {"steps", st.steps()},
          {"verdict", verdict},
          {"witness", witness}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in twisted Zhu algebras, bimodules and U(V[g])"};
  app.set_config("--config", "", "Flat key = value file with the same keys as the flags");
  app.require_subcommand(1);

  ConfigInput in;
  std::string out;
  bool asJson = false;
  app.add_option("--backend", in.backend, "heisenberg (T=2) or virasoro (T=1)")->capture_default_str();
  app.add_option("--c", in.c, "Central charge p/q (virasoro)")->capture_default_str();
  app.add_option("--n", in.n, "Parameter n")->capture_default_str();
  app.add_option("--m", in.m, "Parameter m (defaults to n)");
  app.add_option("--grid", in.grid, "Comma-separated n, m, p values");
  app.add_option("--pairs", in.pairs, "Comma-separated n:m pairs for the isomorphism suite");
  app.add_option("--cutoff-N", in.cutoffN, "Weight slice of V")->capture_default_str();
  app.add_option("--cutoff-G", in.cutoffG, "Weight bound on O-generator inputs")->capture_default_str();
  app.add_option("--cutoff-P", in.cutoffP, "Bound on auxiliary parameters (default 3/2 for heisenberg, 2 for virasoro)");
  app.add_option("--w", in.w, "Weight bound for sampled vectors")->capture_default_str();
  app.add_option("--imax", in.imax, "Mode window for Omega_n approximations")->capture_default_str();
  app.add_option("--kmax", in.kmax, "Module truncation degree")->capture_default_str();
  app.add_option("--seed", in.seed, "Random seed")->capture_default_str();
  app.add_option("--monomials", in.monomials, "Random monomials for straightening")->capture_default_str();
  app.add_option("--out", out, "Write the JSON result to this path");
  app.add_flag("--json", asJson, "Print JSON instead of text");

  auto* axioms = app.add_subcommand("axioms", "VOA axiom checks");
  auto* modules = app.add_subcommand("modules", "Twisted module checks");
  auto* zhu = app.add_subcommand("zhu", "Truncated A_{g,n}(V): basis and multiplication table");
  auto* bimodule = app.add_subcommand("bimodule", "Truncated A_{g,n,m}(V): basis and action tables");
  auto* straighten = app.add_subcommand("straighten", "Straighten a monomial of degree n - m");
  std::string monomialText;
  straighten->add_option("monomial", monomialText, "e.g. 'J[1/2](a[-1]|0>) * J[-1/2](a[-1]|0>)'")->required();
  auto* verify = app.add_subcommand("verify", "Run one suite");
  std::string suiteName;
  verify->add_option("suite", suiteName, "axioms, modules, zhu, straighten, congruence, isomorphism")->required();
  auto* report = app.add_subcommand("report", "Run every suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  json result;
  try {
    Config cfg = Config::fromInput(in);
    if (axioms->parsed()) {
      result = runSuite(cfg, "axioms");
    } else if (modules->parsed()) {
      result = runSuite(cfg, "modules");
    } else if (verify->parsed()) {
      result = runSuite(cfg, suiteName);
    } else if (report->parsed()) {
      result = runReport(cfg);
    } else if (zhu->parsed() || bimodule->parsed()) {
      ZhuCalculus calc(cfg.makeAlgebra());
      QuotientFamily family(calc, cfg.cut);
      result = quotientJson(calc, family, cfg.n, zhu->parsed() ? cfg.n : cfg.m);
      result["schema"] = kReportSchema;
    } else if (straighten->parsed()) {
      result = straightenJson(cfg, monomialText);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }

  if (!out.empty()) {
    std::ofstream file(out);
    file << result.dump(2) << '\n';
    if (!file) {
      std::cerr << "cannot write " << out << '\n';
      return kExitIo;
    }
  }

  if (asJson) {
    std::cout << result.dump(2) << '\n';
  } else if (result.contains("suites")) {
    for (const auto& s : result["suites"]) printChecks(std::cout, s);
    printSummary(std::cout, result["summary"]);
  } else if (result.contains("checks")) {
    printChecks(std::cout, result);
    printSummary(std::cout, result["summary"]);
  } else if (result.contains("basis")) {
    printQuotient(std::cout, result);
  } else {
    std::cout << result["input"].get<std::string>() << "\n  = " << result["image"].get<std::string>()
              << "\n  normal form " << result["normal_form"].get<std::string>() << " (" << result["steps"]
              << " steps)\n[" << result["verdict"].get<std::string>() << "] " << result["witness"].get<std::string>()
              << '\n';
  }
  if (result.contains("verdict") && result["verdict"] == "fail") return kExitFail;
  return hasFailures(result) ? kExitFail : kExitOk;
}
