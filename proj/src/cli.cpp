#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report_schema.hpp"
#include "sublin/errors.hpp"
#include "sublin/pipeline.hpp"

namespace sublin {

const char* report_schema() { return generated::kReportSchema; }

namespace {

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--tolerance expects <name>=<value>, got '" + item + "'");
    }
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw ValidationError("--tolerance " + name + ": '" + text + "' is not a number");
    }
    out[name] = value;
  }
  return out;
}

int run_command(const std::string& scenario_path, const std::string& out_path, const std::string& profiles,
                const std::vector<std::string>& tolerances, const std::optional<std::uint64_t>& seed) {
  RunOptions options;
  if (!profiles.empty()) options.profiles_dir = profiles;
  options.tolerance_overrides = parse_tolerances(tolerances);
  options.seed = seed;

  const Scenario sc = load_scenario(scenario_path);
  RunResult result = run_scenario(sc, options);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + out_path + "' for writing");
  out << dump_report(result.report);
  out.close();
  if (!out) throw ValidationError("failed to write '" + out_path + "'");
  if (result.exit_code == 2) {
    std::cerr << "sublin: hypothesis failure in scenario '" << sc.name << "' (see " << out_path << ")\n";
  }
  return result.exit_code;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Minimal solutions of sublinear elliptic equations with measure data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SUBLIN_VERSION));

  auto* run = app.add_subcommand("run", "Run a scenario and write a JSON report");
  std::string scenario_path;
  std::string out_path;
  std::string profiles;
  std::vector<std::string> tolerances;
  std::uint64_t seed_value = 0;
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_path, "Report path")->required();
  run->add_option("--profiles", profiles, "Directory for radial profile CSV files");
  run->add_option("--tolerance", tolerances, "Tolerance override <name>=<value> (repeatable)")
      ->allow_extra_args(false)
      ->take_all();
  auto* seed_opt = run->add_option("--seed", seed_value, "Override the scenario seed");

  auto* expo = app.add_subcommand("exponents", "Print the exponent bundle as JSON");
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  expo->add_option("--n", n, "Dimension")->required();
  expo->add_option("--p", p, "Integrability exponent")->required();
  expo->add_option("--q", q, "Sublinear power")->required();

  auto* schema = app.add_subcommand("schema", "Print the report JSON schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      std::optional<std::uint64_t> seed;
      if (*seed_opt) seed = seed_value;
      return run_command(scenario_path, out_path, profiles, tolerances, seed);
    }
    if (*expo) {
      std::cout << exponents_json(exponents(n, p, q)).dump(2) << "\n";
      return 0;
    }
    if (*schema) {
      std::cout << report_schema();
      return 0;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "sublin: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "sublin: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sublin: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sublin
