#pragma once

// Batch verification: configuration, suites and JSON reports.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twzhu/ueva.hpp"
#include "twzhu/zhu.hpp"

namespace twzhu {

inline constexpr const char* kReportSchema = "twzhu-report/1";

/// Invalid configuration (unknown backend, malformed rational, grid outside
/// (1/T)N, non-positive cutoff, unknown suite).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw settings, as read from flags or a config file. Empty strings mean
/// "backend default".
struct ConfigInput {
  std::string backend = "heisenberg";
  std::string c = "1/2";
  std::string n = "0";
  std::string m;
  std::string grid;
  std::string pairs;
  int cutoffN = 8;
  int cutoffG = 4;
  std::string cutoffP;
  int w = 3;
  std::string imax = "2";
  std::string kmax = "3";
  std::uint64_t seed = 1;
  int monomials = 200;
  std::vector<std::string> suites;
};

/// Validated configuration.
struct Config {
  std::string backend;
  Scalar c;
  int order = 1;
  Mode n, m;
  bool mGiven = false;
  /// Values used for n, m, p grids.
  std::vector<Mode> grid;
  /// (n, m) pairs for the isomorphism suite.
  std::vector<std::pair<Mode, Mode>> pairs;
  OCutoffs cut;
  int w = 3;
  Mode imax, kmax;
  std::uint64_t seed = 1;
  int monomials = 200;
  std::vector<std::string> suites;

  /// Throws ConfigError.
  static Config fromInput(const ConfigInput& in);
  nlohmann::json toJson() const;
  std::shared_ptr<const VertexAlgebra> makeAlgebra() const;
};

/// Suite names in execution order.
const std::vector<std::string>& suiteNames();

/// Runs one suite and returns {"name", "checks": [...], "summary"}.
/// Each check is {"name", "params", "verdict", "witness", "elapsed_ms"}.
nlohmann::json runSuite(const Config& config, const std::string& suite);

/// Runs every suite in config.suites (all suites when empty).
nlohmann::json runReport(const Config& config);

/// Counts verdicts over every check in a report or suite.
std::map<std::string, std::size_t> tallyVerdicts(const nlohmann::json& report);
bool hasFailures(const nlohmann::json& report);

/// Copy without "elapsed_ms" fields, for byte comparisons.
nlohmann::json stripTiming(const nlohmann::json& report);

/// Quotient data: parameters, slice dimension, span rank, basis and tables.
nlohmann::json quotientJson(const ZhuCalculus& calc, QuotientFamily& family, const Mode& n, const Mode& m);

}  // namespace twzhu
