// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "twzhu/suites.hpp"

using namespace twzhu;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
  json report;
  double seconds = 0;
};

Config makeConfig(const std::string& backend, const std::string& c = "1/2") {
  ConfigInput in;
  in.backend = backend;
  in.c = c;
  return Config::fromInput(in);
}

Timed timedSuite(const Config& cfg, const std::string& suite) {
  const auto t0 = Clock::now();
  Timed t;
  t.report = runSuite(cfg, suite);
  t.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return t;
}

std::vector<json> checksNamed(const json& suite, const std::string& name) {
  std::vector<json> out;
  for (const auto& c : suite.at("checks"))
    if (c.at("name") == name) out.push_back(c);
  return out;
}

std::string label(const json& check) { return check.at("name").get<std::string>() + " " + check.at("params").dump(); }

/// Collects problems; a criterion passes when none were recorded.
struct Criterion {
  std::vector<std::string> problems;
  std::vector<std::string> facts;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void allPass(const std::vector<json>& checks, const std::string& what) {
    require(!checks.empty(), "no " + what + " records");
    for (const auto& c : checks)
      require(c.at("verdict") == "pass", label(c) + " -> " + c.at("verdict").get<std::string>() + ": " +
                                             c.at("witness").get<std::string>().substr(0, 300));
  }
};

int failures = 0;

void emit(int id, const std::string& title, const Criterion& v) {
  const bool ok = v.problems.empty();
  if (!ok) ++failures;
  std::cout << "criterion " << id << " [" << (ok ? "PASS" : "FAIL") << "] " << title;
  for (const auto& f : v.facts) std::cout << "; " << f;
  std::cout << '\n';
  for (const auto& p : v.problems) std::cout << "    " << p << '\n';
  std::cout.flush();
}

std::string seconds(double s) { return std::to_string(static_cast<long>(s * 1000)) + " ms"; }

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Config>> backends{
      {"heisenberg", makeConfig("heisenberg")},
      {"virasoro c=1/2", makeConfig("virasoro", "1/2")},
      {"virasoro c=26", makeConfig("virasoro", "26")},
  };
  std::map<std::string, std::map<std::string, Timed>> runs;
  auto suite = [&](const std::string& b, const std::string& s) -> const Timed& {
    auto& slot = runs[b];
    if (!slot.count(s)) {
      for (const auto& [name, cfg] : backends)
        if (name == b) slot[s] = timedSuite(cfg, s);
    }
    return slot.at(s);
  };

  {
    Criterion v;
    double total = 0;
    for (const auto& [b, cfg] : backends) {
      const Timed& t = suite(b, "axioms");
      total += t.seconds;
      for (const auto& c : t.report.at("checks")) {
        if (c.at("name") == "engine-self-consistency") continue;
        v.require(c.at("verdict") == "pass", b + ": " + label(c) + " -> " + c.at("verdict").get<std::string>());
      }
      const auto jac = checksNamed(t.report, "jacobi");
      v.require(jac.size() == 1 && jac[0].at("params").at("max_weight") == 3 &&
                    jac[0].at("params").at("indices") == "[-3,3]",
                b + ": jacobi record missing or not at wt <= 3, [-3,3]");
    }
    v.require(total < 120, "axioms took " + seconds(total) + " (limit 120 s)");
    v.facts.push_back("3 backends in " + seconds(total));
    emit(1, "VOA axioms (Heisenberg, Virasoro c=1/2 and c=26)", v);
  }

  {
    Criterion v;
    for (const auto& [b, cfg] : backends) {
      const auto recs = checksNamed(suite(b, "axioms").report, "engine-self-consistency");
      v.allPass(recs, b + " engine-self-consistency");
      for (const auto& r : recs)
        v.require(r.at("params").at("max_weight") == 4 && r.at("params").at("indices") == "[-4,5]",
                  b + ": self-consistency not at wt <= 4, i in [-4,5]");
    }
    emit(2, "field engine self-consistency", v);
  }

  {
    Criterion v;
    const json& rep = suite("heisenberg", "modules").report;
    std::vector<json> tw;
    for (const auto& c : rep.at("checks"))
      if (c.at("params").value("module", "") == "twisted-fock") tw.push_back(c);
    for (const char* name : {"commutator", "twisted-jacobi", "oscillator-bracket"}) {
      std::vector<json> sel;
      for (const auto& c : tw)
        if (c.at("name") == name) sel.push_back(c);
      v.allPass(sel, std::string("twisted-fock ") + name);
    }
    for (const auto& c : tw)
      if (c.at("name") == "commutator" || c.at("name") == "twisted-jacobi")
        v.require(c.at("params").at("max_weight") == 3 && c.at("params").at("mode_bound") == "7/2" &&
                      c.at("params").at("max_degree") == "3",
                  label(c) + " not at wt <= 3, |mode| <= 7/2, degree <= 3");
    const auto l0 = checksNamed(rep, "l0-spectrum");
    for (const auto& c : l0)
      if (c.at("params").value("module", "") == "twisted-fock")
        v.facts.push_back("L(0) shift: " + c.at("witness").get<std::string>());
    emit(3, "twisted Fock module identities", v);
  }

  {
    Criterion v;
    for (const auto& b : {"virasoro c=1/2", "virasoro c=26"}) {
      const auto recs = checksNamed(suite(b, "zhu").report, "zhu-specialization");
      v.allPass(recs, std::string(b) + " zhu-specialization");
    }
    v.allPass(checksNamed(suite("heisenberg", "zhu").report, "zhu-specialization"), "heisenberg zhu-specialization");
    emit(4, "T=1 specialization of star and circ", v);
  }

  {
    Criterion v;
    const auto recs = checksNamed(suite("heisenberg", "zhu").report, "annihilation");
    v.allPass(recs, "annihilation");
    std::size_t onFock = 0;
    for (const auto& r : recs) {
      v.require(r.at("params").at("G") == 4 && r.at("params").at("P") == "3/2", label(r) + " not at G=4, P=3/2");
      if (r.at("params").at("module") == "twisted-fock") ++onFock;
    }
    v.require(onFock == 16, "expected 16 (n,m) records on twisted-fock, got " + std::to_string(onFock));
    v.facts.push_back(std::to_string(onFock) + " (n,m) pairs");
    emit(5, "annihilation of O by o_{m-n}", v);
  }

  {
    Criterion v;
    std::size_t records = 0, inconclusive = 0;
    const std::regex countRe("(\\d+) equal-proven, (\\d+) unequal-proven, (\\d+) inconclusive");
    for (const auto& [b, cfg] : backends) {
      for (const auto& r : checksNamed(suite(b, "congruence").report, "congruence")) {
        ++records;
        const std::string w = r.at("witness");
        std::smatch m;
        v.require(std::regex_search(w, m, countRe), label(r) + ": witness without counts");
        if (m.empty()) continue;
        const long unequal = std::stol(m[2]), gaps = std::stol(m[3]);
        v.require(unequal == 0 && r.at("verdict") != "fail", b + ": " + label(r) + " has unequal-proven cases");
        std::size_t listed = 0;
        for (std::size_t at = w.find("; gap "); at != std::string::npos; at = w.find("; gap ", at + 1)) ++listed;
        v.require(listed == static_cast<std::size_t>(gaps), b + ": " + label(r) + " lists " +
                                                                std::to_string(listed) + " of " +
                                                                std::to_string(gaps) + " inconclusive cases");
        if (gaps > 0) ++inconclusive;
      }
    }
    v.require(records > 0, "no congruence records");
    v.facts.push_back(std::to_string(records) + " (n,m) records, " + std::to_string(inconclusive) +
                      " with listed inconclusive cases");
    emit(6, "congruence grid", v);
  }

  {
    Criterion v;
    for (const auto& [b, cfg] : backends) {
      const auto recs = checksNamed(suite(b, "straighten").report, "random-monomials");
      v.allPass(recs, b + " random-monomials");
      for (const auto& r : recs)
        v.require(r.at("params").at("count") == 200, b + ": random-monomials not at 200 draws");
    }
    emit(7, "straightening of random monomials", v);
  }

  {
    Criterion v;
    double total = 0;
    std::size_t injInconclusive = 0;
    for (const auto& [b, cfg] : backends) {
      const Timed& t = suite(b, "isomorphism");
      total += t.seconds;
      for (const auto& name : {"well-defined", "multiplicative", "surjective"})
        v.allPass(checksNamed(t.report, name), b + " " + name);
      const auto inj = checksNamed(t.report, "injective");
      v.require(inj.size() == cfg.pairs.size(), b + ": missing injective records");
      for (const auto& r : inj) {
        v.require(r.at("verdict") != "fail", b + ": " + label(r) + " made a false zero claim");
        if (r.at("verdict") == "inconclusive") ++injInconclusive;
      }
    }
    v.require(total < 600, "isomorphism took " + seconds(total) + " (limit 600 s)");
    v.facts.push_back("(d) inconclusive on " + std::to_string(injInconclusive) + " pairs");
    v.facts.push_back("total " + seconds(total));
    emit(8, "isomorphism A_{g,n,m}(V) -> U(V[g]) quotient", v);
  }

  {
    Criterion v;
    for (const auto& [b, cfg] : backends) {
      const std::string first = stripTiming(runReport(cfg)).dump(2);
      const std::string second = stripTiming(runReport(cfg)).dump(2);
      v.require(first == second, b + ": reports differ");
      v.facts.push_back(b + " " + std::to_string(first.size()) + " bytes");
    }
    emit(9, "deterministic reports", v);
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
