#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sublin/conditions.hpp"
#include "sublin/domain.hpp"
#include "sublin/errors.hpp"
#include "sublin/grid.hpp"
#include "sublin/measure.hpp"

namespace sublin {

// Scenario or command-line input that cannot be run (exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct CheckRequest {
  std::string name;
  std::vector<double> t_values;  // iterated only
};

struct Scenario {
  std::string name;
  DomainKind domain_kind = DomainKind::UnitBall;
  int dim = 3;
  nlohmann::json sigma;  // measure specs, kept verbatim for the echo
  nlohmann::json mu;
  double q = 0.5;
  double p = 4.0;
  double grid_h = 1.0 / 16;
  double grid_extent = 1.0;
  std::string eval_kind = "radial";
  int eval_resolution = 512;
  std::vector<CheckRequest> checks;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;

  [[nodiscard]] Domain domain() const { return {domain_kind, dim}; }
  [[nodiscard]] GridSpec grid() const;
  [[nodiscard]] bool wants(const std::string& check) const;
};

// Known check names in execution order.
const std::vector<std::string>& known_checks();
// Tolerance names with their defaults.
const std::map<std::string, double>& default_tolerances();

// Throws ValidationError; exponent hypotheses are checked here.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

Measure build_measure(const Scenario& sc, const nlohmann::json& spec, const char* what);

struct RunOptions {
  std::optional<std::filesystem::path> profiles_dir;
  std::map<std::string, double> tolerance_overrides;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 hypothesis failure
  nlohmann::ordered_json report;
};

RunResult run_scenario(const Scenario& sc, const RunOptions& options);

nlohmann::ordered_json exponents_json(const Exponents& e);

// Report serialization: +inf becomes the string "+inf"; the timings block is
// last so that everything before it is reproducible.
std::string dump_report(const nlohmann::ordered_json& report);
// Copy of the report without the timings block.
nlohmann::ordered_json strip_timings(const nlohmann::ordered_json& report);

// The published report schema (schema/report.schema.json).
const char* report_schema();

// Exit code 0/1/2 with messages on stderr.
int cli_main(int argc, char** argv);

}  // namespace sublin
