#include "sublin/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sublin/energy.hpp"
#include "sublin/errors.hpp"
#include "sublin/field.hpp"
#include "sublin/potential.hpp"
#include "sublin/simd.hpp"
#include "sublin/solver.hpp"

#ifndef SUBLIN_VERSION
#define SUBLIN_VERSION "0.0.0"
#endif

namespace sublin {

using Json = nlohmann::ordered_json;
using nlohmann::json;

namespace {

Json num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

Json num_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

[[noreturn]] void invalid(const std::string& msg) { throw ValidationError(msg); }

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) invalid(where + ": missing field '" + key + "'");
  if (!j[key].is_number()) invalid(where + ": field '" + key + "' must be a number");
  return j[key].get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get_number(j, key, where);
}

int get_int_or(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) invalid(where + ": field '" + key + "' must be an integer");
  return j[key].get<int>();
}

std::vector<double> get_numbers(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_array()) invalid(where + ": field '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) invalid(where + ": field '" + key + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void validate_measure_spec(const json& spec, const std::string& where) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    invalid(where + ": measure spec must be an object with a string 'kind'");
  }
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"zero", {"kind"}},
      {"atomic", {"kind", "points", "weights"}},
      {"grid", {"kind", "density", "values"}},
      {"radial", {"kind", "density", "nodes", "radius", "radii", "values"}},
  };
  const auto kind = spec["kind"].get<std::string>();
  const auto it = allowed.find(kind);
  if (it == allowed.end()) invalid(where + ": unknown measure kind '" + kind + "' (zero | atomic | grid | radial)");
  for (const auto& [key, value] : spec.items()) {
    if (!it->second.count(key)) invalid(where + ": unknown field '" + key + "' for kind '" + kind + "'");
  }
}

bool is_zero_spec(const json& spec) { return spec["kind"] == "zero"; }

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"thm11", "cor12",  "iterated", "lemma26_27_28",
                                                 "solve", "verify", "lemma31",  "lemma32"};
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol = {
      {"relTol", 1e-10},            // Picard stopping rule
      {"maxIter", 500},             // Picard iteration cap
      {"monotonicity", 1e-10},      // allowed decrease per step, relative to sup u_k
      {"lowerBoundMargin", 1e-6},   // allowed negative margin u - lower bound
      {"iterated", 1e-3},           // allowed violation for t != 1
      {"iteratedEquality", 1e-10},  // allowed |lhs - rhs| at t = 1
      {"iteratedPoints", 100},      // low-discrepancy sample size
      {"clippedFraction", 0.05},    // Riesz clipped mass / positive mass
      {"lemma27Samples", 20},       // random weights in the operator-bound family
  };
  return tol;
}

GridSpec Scenario::grid() const { return GridSpec::centered(dim, grid_h, grid_extent); }

bool Scenario::wants(const std::string& check) const {
  for (const auto& c : checks) {
    if (c.name == check) return true;
  }
  return false;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) invalid("scenario: top level must be an object");
  static const std::set<std::string> fields = {"name", "domain", "sigma", "mu",    "q",         "p",
                                               "grid", "evalSet", "checks", "tolerances", "seed"};
  for (const auto& [key, value] : j.items()) {
    if (!fields.count(key)) invalid("scenario: unknown field '" + key + "'");
  }
  Scenario sc;
  if (!j.contains("name") || !j["name"].is_string()) invalid("scenario: 'name' must be a string");
  sc.name = j["name"].get<std::string>();

  if (!j.contains("domain") || !j["domain"].is_object()) invalid("scenario: 'domain' must be an object");
  const auto& dom = j["domain"];
  if (!dom.contains("kind") || !dom["kind"].is_string()) invalid("domain: 'kind' must be a string");
  try {
    sc.domain_kind = domain_kind_from_string(dom["kind"].get<std::string>());
  } catch (const ArgumentError& e) {
    invalid(std::string("domain: ") + e.what());
  }
  sc.dim = get_int_or(dom, "dim", 3, "domain");
  if (sc.dim < 3) invalid("domain: dim >= 3 is required");

  for (const char* key : {"sigma", "mu"}) {
    if (!j.contains(key)) invalid(std::string("scenario: missing measure '") + key + "'");
    validate_measure_spec(j[key], key);
  }
  sc.sigma = j["sigma"];
  sc.mu = j["mu"];

  sc.q = get_number(j, "q", "scenario");
  sc.p = get_number(j, "p", "scenario");
  try {
    (void)exponents(sc.dim, sc.p, sc.q);
  } catch (const HypothesisError& e) {
    invalid(std::string("scenario: hypothesis violated: ") + e.what());
  }

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) invalid("grid: must be an object {h, extent}");
    for (const auto& [key, value] : g.items()) {
      if (key != "h" && key != "extent") invalid("grid: unknown field '" + key + "'");
    }
    sc.grid_h = get_number_or(g, "h", sc.grid_h, "grid");
    sc.grid_extent = get_number_or(g, "extent", sc.grid_extent, "grid");
  }
  if (!(sc.grid_h > 0.0) || !(sc.grid_extent > 0.0)) invalid("grid: h and extent must be > 0");
  if (sc.grid_extent / sc.grid_h > 512) invalid("grid: more than 1025 cells per axis");

  if (j.contains("evalSet")) {
    const auto& e = j["evalSet"];
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
      invalid("evalSet: must be an object {kind, resolution}");
    }
    sc.eval_kind = e["kind"].get<std::string>();
    if (sc.eval_kind != "grid" && sc.eval_kind != "radial") invalid("evalSet: kind must be 'grid' or 'radial'");
    sc.eval_resolution = get_int_or(e, "resolution", sc.eval_resolution, "evalSet");
    if (sc.eval_resolution < 2) invalid("evalSet: resolution must be >= 2");
  }
  if (sc.eval_kind == "radial" && sc.domain_kind == DomainKind::HalfSpace) {
    invalid("evalSet: radial evaluation requires unit_ball or whole_space");
  }

  if (!j.contains("checks") || !j["checks"].is_array()) invalid("scenario: 'checks' must be an array");
  std::set<std::string> seen;
  for (const auto& c : j["checks"]) {
    CheckRequest req;
    if (c.is_string()) {
      req.name = c.get<std::string>();
      if (req.name == "iterated") req.t_values = {0.5, 1.0, 2.0};
    } else if (c.is_object() && c.size() == 1 && c.contains("iterated")) {
      req.name = "iterated";
      if (!c["iterated"].is_array() || c["iterated"].empty()) invalid("checks: 'iterated' takes a nonempty t-list");
      for (const auto& t : c["iterated"]) {
        if (!t.is_number() || !(t.get<double>() > 0.0)) invalid("checks: iterated t-values must be > 0");
        req.t_values.push_back(t.get<double>());
      }
    } else {
      invalid("checks: entries must be check names or {\"iterated\": [t, ...]}");
    }
    const auto& names = known_checks();
    if (std::find(names.begin(), names.end(), req.name) == names.end()) {
      invalid("checks: unknown check '" + req.name + "'");
    }
    if (!seen.insert(req.name).second) invalid("checks: '" + req.name + "' requested twice");
    sc.checks.push_back(std::move(req));
  }
  if ((sc.wants("solve") || sc.wants("verify")) && is_zero_spec(sc.sigma) && is_zero_spec(sc.mu)) {
    invalid("scenario: sigma and mu are both zero; at least one must be nonzero");
  }

  sc.tolerances = default_tolerances();
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) invalid("tolerances: must be an object");
    for (const auto& [key, value] : j["tolerances"].items()) {
      if (!sc.tolerances.count(key)) invalid("tolerances: unknown name '" + key + "'");
      if (!value.is_number()) invalid("tolerances: '" + key + "' must be a number");
      sc.tolerances[key] = value.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) invalid("scenario: 'seed' must be a nonnegative integer");
    sc.seed = j["seed"].get<std::uint64_t>();
  }
  // Measures are built once here so malformed specs fail validation.
  (void)build_measure(sc, sc.sigma, "sigma");
  (void)build_measure(sc, sc.mu, "mu");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open scenario file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    invalid("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

Measure build_measure(const Scenario& sc, const json& spec, const char* what) {
  const Domain domain = sc.domain();
  const std::string where = what;
  const auto kind = spec["kind"].get<std::string>();
  try {
    if (kind == "zero") return Measure::zero(domain);
    if (kind == "atomic") {
      if (!spec.contains("points") || !spec["points"].is_array()) invalid(where + ": atomic needs 'points'");
      PointSet pts(sc.dim);
      for (const auto& p : spec["points"]) {
        if (!p.is_array() || static_cast<int>(p.size()) != sc.dim) {
          invalid(where + ": every atom needs " + std::to_string(sc.dim) + " coordinates");
        }
        std::vector<double> x;
        for (const auto& c : p) {
          if (!c.is_number()) invalid(where + ": atom coordinates must be numbers");
          x.push_back(c.get<double>());
        }
        pts.push_back(x);
      }
      return Measure::atomic(domain, pts, get_numbers(spec, "weights", where));
    }
    if (kind == "grid") {
      const GridSpec grid = sc.grid();
      if (spec.contains("values")) {
        if (spec.contains("density")) invalid(where + ": give either 'density' or 'values'");
        return Measure::grid(domain, grid, get_numbers(spec, "values", where));
      }
      const double c = get_number(spec, "density", where);
      return Measure::grid(domain, grid, [c](std::span<const double>) { return c; });
    }
    // radial
    if (spec.contains("radii")) {
      if (spec.contains("density") || spec.contains("nodes") || spec.contains("radius")) {
        invalid(where + ": give either radii/values or density/nodes/radius");
      }
      return Measure::radial(domain, get_numbers(spec, "radii", where), get_numbers(spec, "values", where));
    }
    const double c = get_number(spec, "density", where);
    const int nodes = get_int_or(spec, "nodes", 512, where);
    const double radius = get_number_or(spec, "radius", 1.0, where);
    if (nodes < 2) invalid(where + ": radial 'nodes' must be >= 2");
    std::vector<double> r(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) r[static_cast<std::size_t>(i)] = radius * i / (nodes - 1);
    return Measure::radial(domain, std::move(r), std::vector<double>(static_cast<std::size_t>(nodes), c));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    invalid(where + ": malformed measure spec: " + e.what());
  }
}

Json exponents_json(const Exponents& e) {
  const auto res = exponent_residuals(e);
  Json j;
  j["n"] = e.n;
  j["p"] = e.p;
  j["q"] = e.q;
  j["gamma"] = e.gamma;
  j["s1"] = e.s1;
  j["s2"] = e.s2;
  j["r"] = e.r;
  j["s"] = e.s;
  j["s1conj"] = e.s1conj;
  j["s2conj"] = e.s2conj;
  j["pLem"] = e.p_lem;
  j["residuals"] = {{"pLem", res.p_lem},
                    {"hls1", res.hls1},
                    {"hls2", res.hls2},
                    {"hls1Stated", res.hls1_stated},
                    {"hls2Stated", res.hls2_stated},
                    {"sLemma27", res.s_lemma}};
  return j;
}

namespace {

// Points of the eval set on the profile ray (x_1 >= 0 axis; x_n axis on the
// half-space), with their distance along it.
std::vector<std::pair<std::size_t, double>> profile_points(const EvalSet& set, DomainKind kind) {
  std::vector<std::pair<std::size_t, double>> out;
  const int n = set.domain().dim();
  const int axis = kind == DomainKind::HalfSpace ? n - 1 : 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto x = set.points()[i];
    bool on_ray = x[static_cast<std::size_t>(axis)] >= 0.0;
    for (int d = 0; d < n && on_ray; ++d) {
      if (d != axis && x[static_cast<std::size_t>(d)] != 0.0) on_ray = false;
    }
    if (on_ray) out.emplace_back(i, x[static_cast<std::size_t>(axis)]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

void write_profile(const std::filesystem::path& path, const std::vector<std::pair<std::size_t, double>>& ray,
                   std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile '" + path.string() + "'");
  out << "r,value\n";
  char buf[64];
  for (std::size_t k = 0; k < ray.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ray[k].second, values[k]);
    out << buf;
  }
}

}  // namespace

RunResult run_scenario(const Scenario& sc_in, const RunOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  Scenario sc = sc_in;
  for (const auto& [name, value] : options.tolerance_overrides) {
    if (!sc.tolerances.count(name)) invalid("--tolerance: unknown name '" + name + "'");
    sc.tolerances[name] = value;
  }
  if (options.seed) sc.seed = *options.seed;
  auto tol = [&](const char* name) { return sc.tolerances.at(name); };

  const Domain domain = sc.domain();
  const Exponents exps = exponents(sc.dim, sc.p, sc.q);
  const Measure sigma = build_measure(sc, sc.sigma, "sigma");
  const Measure mu = build_measure(sc, sc.mu, "mu");
  const double radial_extent = sc.domain_kind == DomainKind::UnitBall ? 1.0 : sc.grid_extent;
  const EvalSetPtr eval_set = sc.eval_kind == "radial"
                                  ? EvalSet::radial_uniform(domain, static_cast<std::size_t>(sc.eval_resolution),
                                                            radial_extent)
                                  : EvalSet::grid(domain, GridSpec::centered(sc.dim, 1.0 / sc.eval_resolution,
                                                                             sc.grid_extent));
  // dx norms: the radial eval set only represents radial functions.
  const bool radial_data = (sigma.kind() == MeasureKind::Radial || sigma.size() == 0) &&
                           (mu.kind() == MeasureKind::Radial || mu.size() == 0);
  EvalSetPtr dx_set = eval_set;
  if (eval_set->kind() == EvalSetKind::Radial && !radial_data) dx_set = EvalSet::grid(domain, sc.grid());

  Json report;
  report["version"] = SUBLIN_VERSION;
  Json echo;
  echo["name"] = sc.name;
  echo["domain"] = {{"kind", std::string(to_string(sc.domain_kind))}, {"dim", sc.dim}};
  echo["sigma"] = Json::parse(sc.sigma.dump());
  echo["mu"] = Json::parse(sc.mu.dump());
  echo["q"] = sc.q;
  echo["p"] = sc.p;
  echo["grid"] = {{"h", sc.grid_h}, {"extent", sc.grid_extent}};
  echo["evalSet"] = {{"kind", sc.eval_kind}, {"resolution", sc.eval_resolution}};
  Json checks_echo = Json::array();
  for (const auto& c : sc.checks) {
    if (c.name == "iterated") {
      checks_echo.push_back({{"iterated", c.t_values}});
    } else {
      checks_echo.push_back(c.name);
    }
  }
  echo["checks"] = checks_echo;
  Json tol_echo;
  for (const auto& [k, v] : sc.tolerances) tol_echo[k] = v;
  echo["tolerances"] = tol_echo;
  echo["seed"] = sc.seed;
  report["scenario"] = echo;
  report["exponents"] = exponents_json(exps);

  Json checks = Json::object();
  Json timings = Json::object();
  bool all_satisfied = true;
  auto record = [&](const std::string& name, Json result, std::chrono::steady_clock::time_point t0) {
    if (!result.value("satisfied", false)) all_satisfied = false;
    checks[name] = std::move(result);
    timings[name] = seconds_since(t0);
  };

  // conditions
  std::optional<Thm11Report> thm;
  if (sc.wants("thm11") || sc.wants("lemma26_27_28")) thm = check_thm11(domain, sigma, mu, exps);
  if (sc.wants("thm11")) {
    const auto t0 = std::chrono::steady_clock::now();
    record("thm11",
           {{"N1", num(thm->n1)}, {"N2", num(thm->n2)}, {"degenerate", thm->degenerate}, {"satisfied", thm->satisfied}},
           t0);
  }
  if (sc.wants("cor12")) {
    const auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      const auto c = check_cor12(domain, sigma, mu, exps);
      r = {{"applicable", true},     {"sigmaNormLs1", num(c.sigma_norm)}, {"muNormLs2", num(c.mu_norm)},
           {"N1", num(c.n1)},        {"N2", num(c.n2)},                   {"bound1", num(c.bound1)},
           {"bound2", num(c.bound2)}, {"ratio1", num(c.ratio1)},          {"ratio2", num(c.ratio2)},
           {"satisfied", c.satisfied}};
    } catch (const TypeError& e) {
      r = {{"applicable", false}, {"error", e.what()}, {"satisfied", false}};
    }
    record("cor12", r, t0);
  }
  if (sc.wants("iterated")) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pts = halton_points(domain, static_cast<std::size_t>(tol("iteratedPoints")));
    Json list = Json::array();
    bool ok = true;
    for (const auto& c : sc.checks) {
      if (c.name != "iterated") continue;
      for (double t : c.t_values) {
        Json item = {{"t", t}};
        try {
          const auto it = iterated_check(domain, sigma, t, pts);
          const double bound = t == 1.0 ? tol("iteratedEquality") : tol("iterated");
          const double measured = t == 1.0 ? [&] {
            double m = 0.0;
            for (std::size_t i = 0; i < it.lhs.size(); ++i) m = std::max(m, std::abs(it.lhs[i] - it.rhs[i]));
            return m;
          }() : it.max_violation;
          item["maxViolation"] = num(it.max_violation);
          item["maxRelViolation"] = num(it.max_rel_violation);
          item["satisfied"] = measured <= bound;
        } catch (const Error& e) {
          item["error"] = e.what();
          item["satisfied"] = false;
        }
        ok = ok && item["satisfied"].get<bool>();
        list.push_back(item);
      }
    }
    record("iterated", {{"points", pts.size()}, {"results", list}, {"satisfied", ok}}, t0);
  }
  if (sc.wants("lemma26_27_28")) {
    const auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      const auto l = lemma_norm_checks(domain, sigma, mu, exps, dx_set, sc.seed,
                                       static_cast<int>(tol("lemma27Samples")));
      const bool finite = l.gmu_finite && std::isfinite(l.lemma27_constant) && std::isfinite(l.lemma28_ratio);
      r = {{"degenerate", l.degenerate},
           {"lemma26", {{"GmuNormLgqDsigma", num(l.gmu_norm_dsigma)}, {"finite", l.gmu_finite}}},
           {"lemma27",
            {{"GsigmaNormDx", num(l.gsigma_norm_dx)},
             {"constant", num(l.lemma27_constant)},
             {"onesRatio", num(l.lemma27_ones_ratio)},
             {"ratios", num_array(l.lemma27_ratios)}}},
           {"lemma28", {{"ratio", num(l.lemma28_ratio)}}},
           {"satisfied", finite}};
    } catch (const HypothesisError& e) {
      r = {{"skipped", e.what()}, {"satisfied", false}};
    }
    record("lemma26_27_28", r, t0);
  }

  // solve -> verify
  std::optional<SolverTrace> trace;
  if (sc.wants("solve") || sc.wants("verify")) {
    const auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.q = sc.q;
    cfg.rel_tol = tol("relTol");
    cfg.max_iter = static_cast<int>(tol("maxIter"));
    cfg.eval_set = eval_set;
    Json r;
    try {
      trace = picard_solve(domain, sigma, mu, cfg);
      double worst = 0.0;
      for (double v : trace->monotonicity_violations) worst = std::max(worst, v);
      const Field& u = *trace->solution;
      std::vector<double> origin(static_cast<std::size_t>(sc.dim), 0.0);
      if (sc.domain_kind == DomainKind::HalfSpace) origin.back() = 0.5;
      Json at_origin = nullptr;
      try {
        at_origin = num(u.at(origin));
      } catch (const CapabilityError&) {
      }
      r = {{"iterations", trace->iterations},
           {"converged", trace->converged},
           {"diverged", trace->diverged},
           {"residuals", num_array(trace->residuals)},
           {"maxMonotonicityViolation", num(worst)},
           {"finalResidual", num(trace->final_residual)},
           {"residualBound", cfg.rel_tol * (1.0 + sc.q) / (1.0 - sc.q)},
           {"uMax", num(u.sup())},
           {"uReference", at_origin},
           {"satisfied", trace->converged && worst <= tol("monotonicity")}};
    } catch (const Error& e) {
      r = {{"error", e.what()}, {"converged", false}, {"satisfied", false}};
    }
    if (sc.wants("solve")) {
      record("solve", r, t0);
    } else if (!r["satisfied"].get<bool>()) {
      all_satisfied = false;
    }
  }
  if (sc.wants("verify")) {
    const auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      if (!trace) throw StateError("verify: no solver trace");
      const auto d = verify_solution(*trace, domain, sigma, mu, sc.q, exps);
      r = {{"lowerBoundMargin", num(d.lower_bound_margin)},
           {"lowerBoundMarginRel", num(d.lower_bound_margin_rel)},
           {"LpDx", num(d.lp_dx)},
           {"LpFinite", d.lp_finite},
           {"LgqDsigma", num(d.l_gamma_q_dsigma)},
           {"LgqFinite", d.l_gamma_q_finite},
           {"residual", num(d.residual)},
           {"satisfied", d.lower_bound_margin >= -tol("lowerBoundMargin") && d.lp_finite && d.l_gamma_q_finite}};
    } catch (const Error& e) {
      r = {{"error", e.what()}, {"satisfied", false}};
    }
    record("verify", r, t0);
  }

  // energy
  auto energy_json = [](const EnergyReport& e) {
    return Json{{"gamma", e.gamma}, {"lhs", num(e.lhs)},       {"rhs", num(e.rhs)},
                {"ratio", num(e.ratio)}, {"degenerate", e.degenerate}};
  };
  if (sc.wants("lemma31")) {
    const auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      RieszOptions opt;
      opt.stencil = RieszStencil::InteriorTrimmed;
      const auto e = lemma31_check(domain, mu, exps.gamma, sc.q, sc.grid(), opt);
      r = energy_json(e);
      const double fraction = e.omega_mass > 0.0 ? e.clipped_mass / e.omega_mass : 0.0;
      r["clippedMass"] = num(e.clipped_mass);
      r["clippedFraction"] = num(fraction);
      r["satisfied"] = std::isfinite(e.lhs) && std::isfinite(e.rhs) && fraction <= tol("clippedFraction");
    } catch (const Error& e) {
      r = {{"error", e.what()}, {"satisfied", false}};
    }
    record("lemma31", r, t0);
  }
  if (sc.wants("lemma32")) {
    const auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      const auto e = lemma32_check(domain, mu, exps.gamma, dx_set);
      r = energy_json(e);
      r["p"] = exps.p_lem;
      r["satisfied"] = std::isfinite(e.lhs) && std::isfinite(e.rhs);
    } catch (const Error& e) {
      r = {{"error", e.what()}, {"satisfied", false}};
    }
    record("lemma32", r, t0);
  }

  if (trace && trace->solution) {
    Json s = {{"iterations", trace->iterations}, {"converged", trace->converged}};
    report["solver"] = s;
  }
  report["checks"] = checks;
  report["satisfied"] = all_satisfied;
  report["status"] = all_satisfied ? "ok" : "hypothesis_failure";

  if (options.profiles_dir) {
    std::filesystem::create_directories(*options.profiles_dir);
    const auto ray = profile_points(*eval_set, sc.domain_kind);
    PointSet pts(sc.dim);
    for (const auto& [i, r] : ray) pts.push_back(eval_set->points()[i]);
    const auto g_sigma = potential_at(sigma, pts);
    write_profile(*options.profiles_dir / "Gsigma.csv", ray, g_sigma);
    write_profile(*options.profiles_dir / "Gmu.csv", ray, potential_at(mu, pts));
    write_profile(*options.profiles_dir / "lower_bound.csv", ray, lower_bound_values(g_sigma, sc.q));
    if (trace && trace->solution) {
      std::vector<double> u;
      for (const auto& [i, r] : ray) u.push_back(trace->solution->values[i]);
      write_profile(*options.profiles_dir / "solution.csv", ray, u);
    }
  }

  timings["isa"] = std::string(simd::to_string(simd::active_isa()));
  timings["total"] = seconds_since(t_start);
  report["timings"] = timings;
  return {all_satisfied ? 0 : 2, report};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json strip_timings(const Json& report) {
  Json copy = report;
  copy.erase("timings");
  return copy;
}

}  // namespace sublin
