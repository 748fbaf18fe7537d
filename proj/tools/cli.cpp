#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aging/classification.hpp"
#include "aging/error.hpp"
#include "aging/estimation.hpp"
#include "aging/functionals.hpp"
#include "aging/hazard_model.hpp"
#include "aging/orders.hpp"
#include "aging/profile_io.hpp"
#include "aging/simstudy.hpp"
#include "aging/systems.hpp"

namespace aging::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag, "'" + text + "' is not a number");
}

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("--out", "cannot write '" + path + "'");
  file << text;
  if (!file) throw UsageError("--out", "failed writing '" + path + "'");
}

std::string read_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(flag, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

HazardModel model_from(const std::string& spec, const std::string& flag) {
  try {
    return parse_model_spec(spec);
  } catch (const Error& e) {
    std::string detail = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
    throw Error(e.code(), flag + ": " + detail);
  }
}

std::string format_choice(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format", "expected csv or json");
  return format;
}

json grid_json(std::span<const double> grid) {
  json out = json::array();
  for (double t : grid) out.push_back(number(t));
  return out;
}

json verdict_json(const ClassVerdict& v) {
  json w = nullptr;
  if (v.witness) w = json::array({number(v.witness->first), number(v.witness->second)});
  return {{"target", std::string(to_string(v.target))},
          {"label", std::string(to_string(v.label))},
          {"witness", w},
          {"tolerance", number(v.tolerance)}};
}

ClassTarget parse_target(const std::string& name) {
  for (ClassTarget t : kAllTargets) {
    if (to_string(t) == name) return t;
  }
  throw UsageError("--targets", "unknown target '" + name + "'");
}

// ---- subcommands ----------------------------------------------------------

struct AnalyzeArgs {
  std::string model;
  std::string grid;
  std::string out;
  std::string format = "csv";
  bool exact = false;
};

void analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto model = model_from(a.model, "--model");
  const auto grid = make_grid(parse_grid_spec(a.grid), model.support_left());
  EvalOptions opts;
  opts.exact = a.exact;
  const auto prof = profile(model, grid, opts);
  if (format_choice(a.format) == "csv") {
    emit(profile_to_csv(prof), a.out, out);
  } else {
    emit(profile_to_json(prof).dump(2) + "\n", a.out, out);
  }
}

struct ClassifyArgs {
  std::string model;
  std::string grid;
  std::string out;
  double tol = kAnalyticTolerance;
  std::string targets;
};

void classify_cmd(const ClassifyArgs& a, std::ostream& out) {
  const auto model = model_from(a.model, "--model");
  const auto grid = make_grid(parse_grid_spec(a.grid), model.support_left());
  json result = json::array();
  if (!a.targets.empty()) {
    std::vector<ClassTarget> targets;
    for (const auto& name : split(a.targets, ',')) targets.push_back(parse_target(name));
    for (const auto& v : classify(model, grid, a.tol, targets)) result.push_back(verdict_json(v));
  } else {
    // Without an explicit list, a divergent harmonic target is reported
    // rather than failing the whole run.
    if (grid.size() < 16) {
      throw Error(ErrorCode::InvalidParameter, "classification needs at least 16 grid points");
    }
    if (!(a.tol > 0.0)) throw UsageError("--tol", "must be positive");
    const auto prof = profile(model, grid);
    for (ClassTarget t : kAllTargets) {
      const ClassTarget one[] = {t};
      try {
        result.push_back(verdict_json(classify_profile(prof, a.tol, one).front()));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivergentFunctional) throw;
        result.push_back({{"target", std::string(to_string(t))},
                          {"label", nullptr},
                          {"error", std::string(to_string(e.code()))}});
      }
    }
  }
  emit(result.dump(2) + "\n", a.out, out);
}

struct CompareArgs {
  std::string x;
  std::string y;
  std::string grid;
  std::string orders = "all";
  std::string out;
  double tol = kOrderTolerance;
};

void compare(const CompareArgs& a, std::ostream& out) {
  const auto x = model_from(a.x, "--x");
  const auto y = model_from(a.y, "--y");
  if (x.support_left() != y.support_left()) {
    throw Error(ErrorCode::MixedSupports, x.describe() + " and " + y.describe() +
                                              " start at different times");
  }
  const auto grid = make_grid(parse_grid_spec(a.grid), x.support_left());
  std::vector<OrderKind> kinds;
  if (a.orders == "all") {
    kinds.assign(std::begin(kAllOrders), std::end(kAllOrders));
  } else {
    for (const auto& name : split(a.orders, ',')) {
      try {
        kinds.push_back(parse_order_kind(name));
      } catch (const Error&) {
        throw UsageError("--orders", "unknown order '" + name + "'");
      }
    }
  }
  json orders = json::array();
  for (OrderKind k : kinds) {
    try {
      const auto rep = check_order(x, y, k, grid, a.tol);
      orders.push_back({{"order", std::string(to_string(k))},
                        {"direction", std::string(to_string(rep.direction))},
                        {"witness_xy", optional_number(rep.witness_xy)},
                        {"witness_yx", optional_number(rep.witness_yx)}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivergentFunctional) throw;
      orders.push_back({{"order", std::string(to_string(k))},
                        {"direction", nullptr},
                        {"error", std::string(to_string(e.code()))}});
    }
  }
  const auto lattice = verify_implications(x, y, grid, a.tol);
  json checks = json::array();
  for (const auto& c : lattice.checks) {
    checks.push_back({{"name", c.name},
                      {"orientation", std::string(to_string(c.orientation))},
                      {"premise", c.premise},
                      {"conclusion", c.conclusion},
                      {"biconditional", c.biconditional},
                      {"skipped", c.skipped},
                      {"violated", c.violated()},
                      {"witness", optional_number(c.witness)}});
  }
  const json report = {{"x", x.describe()},
                       {"y", y.describe()},
                       {"grid", grid_json(grid)},
                       {"tolerance", number(a.tol)},
                       {"orders", orders},
                       {"implications", {{"checks", checks}, {"violations", lattice.violations()}}}};
  emit(report.dump(2) + "\n", a.out, out);
}

struct SystemArgs {
  std::vector<std::string> components;
  std::string grid;
  std::string out;
  double tol = 1e-8;
};

void system_cmd(const SystemArgs& a, std::ostream& out) {
  std::vector<HazardModel> parts;
  for (const auto& spec : a.components) parts.push_back(model_from(spec, "--component"));
  const auto sys = series(std::move(parts));
  const auto grid = make_grid(parse_grid_spec(a.grid), sys.composite.support_left());
  const auto report = verify_series_bounds(sys, grid, a.tol);
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"t", number(r.t)},
                {"a_sys", number(r.a_sys)},
                {"a_sum", number(r.a_sum)},
                {"g_sys", number(r.g_sys)},
                {"g_dgm", number(r.g_dgm)},
                {"gai_upper", r.gai_upper},
                {"gfr_lower", r.gfr_lower},
                {"superadditive", r.superadditive},
                {"mediant", r.mediant},
                {"harmonic_skipped", r.harmonic_skipped}};
    if (r.harmonic_skipped) {
      row["h_sys"] = row["h_dhm"] = row["hfr_lower"] = row["chain"] = nullptr;
    } else {
      row["h_sys"] = number(r.h_sys);
      row["h_dhm"] = number(r.h_dhm);
      row["hfr_lower"] = r.hfr_lower;
      row["chain"] = r.chain;
    }
    rows.push_back(std::move(row));
  }
  json components = json::array();
  for (const auto& c : sys.components) components.push_back(c.describe());
  const json doc = {{"components", components},
                    {"rows", rows},
                    {"all_hold", report.all_hold()},
                    {"violations", report.violations()},
                    {"harmonic_skipped", report.harmonic_skipped()},
                    {"profile", profile_to_json(profile(sys.composite, grid))}};
  emit(doc.dump(2) + "\n", a.out, out);
}

struct EstimateArgs {
  std::string input;
  std::string bandwidth = "auto";
  std::size_t grid_size = 128;
  std::string out;
  std::string format = "csv";
};

void estimate(const EstimateArgs& a, std::ostream& out) {
  const auto format = format_choice(a.format);
  std::optional<double> h;
  if (a.bandwidth != "auto") h = parse_number(a.bandwidth, "--bandwidth");
  const auto sample = ingest(read_file(a.input, "--input"));
  const auto est = kernel_hazard(sample, h, a.grid_size);
  const auto prof = estimated_profile(est);
  if (format == "csv") {
    emit(profile_to_csv(prof), a.out, out);
  } else {
    const json doc = {{"bandwidth", number(est.bandwidth)},
                      {"kernel", std::string(est.kernel)},
                      {"floor", number(est.floor)},
                      {"profile", profile_to_json(prof)}};
    emit(doc.dump(2) + "\n", a.out, out);
  }
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<std::uint64_t> seed;
};

void simulate(const SimulateArgs& a, std::ostream& out) {
  auto cfg = parse_sim_config(read_file(a.config, "--config"), default_seed());
  if (a.seed) cfg.base_seed = *a.seed;
  const auto report = run_study(cfg);
  emit(report.to_json().dump(2) + "\n", a.out, out);
  if (!a.csv.empty()) {
    std::ofstream file(a.csv, std::ios::binary);
    if (!file) throw UsageError("--csv", "cannot write '" + a.csv + "'");
    file << report.to_csv();
  }
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError(flag, "expected start:stop:points[:log|:lin], got '" + text + "'");
  }
  GridSpec g;
  g.start = parse_number(parts[0], flag);
  g.stop = parse_number(parts[1], flag);
  const auto& p = parts[2];
  if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(flag, "point count '" + p + "' is not a positive integer");
  }
  g.points = std::stoul(p);
  if (g.points < 2) throw UsageError(flag, "need at least 2 points");
  if (!(std::isfinite(g.start) && std::isfinite(g.stop) && g.start < g.stop)) {
    throw UsageError(flag, "start must be below stop");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.spacing = Spacing::Log;
    } else if (parts[3] == "lin" || parts[3] == "linear") {
      g.spacing = Spacing::Linear;
    } else {
      throw UsageError(flag, "spacing must be log or lin, got '" + parts[3] + "'");
    }
  }
  return g;
}

std::vector<double> make_grid(const GridSpec& spec, double support_left) {
  const bool log = spec.spacing == Spacing::Log ||
                   (spec.spacing == Spacing::Default && support_left == 0.0 && spec.start > 0.0);
  if (log && !(spec.start > 0.0)) throw UsageError("--grid", "log spacing needs start > 0");
  std::vector<double> grid(spec.points);
  const double n = static_cast<double>(spec.points - 1);
  for (std::size_t i = 0; i < spec.points; ++i) {
    const double f = static_cast<double>(i) / n;
    grid[i] = log ? spec.start * std::pow(spec.stop / spec.start, f)
                  : spec.start + (spec.stop - spec.start) * f;
  }
  grid.front() = spec.start;
  grid.back() = spec.stop;
  return grid;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("AGING_SEED");
  if (env != nullptr) {
    const std::string s(env);
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
      try {
        return std::stoull(s);
      } catch (const std::exception&) {
      }
    }
  }
  return kDefaultSeed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean failure rates and aging intensities of lifetime distributions", "aging"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Profile of every functional on a grid");
  analyze_cmd->add_option("--model", an.model, "Model spec, e.g. weibull:alpha=0.5,beta=1.5")->required();
  analyze_cmd->add_option("--grid", an.grid, "start:stop:points[:log|:lin]")->required();
  analyze_cmd->add_option("--out", an.out, "Output path (default stdout)");
  analyze_cmd->add_option("--format", an.format, "csv or json");
  analyze_cmd->add_flag("--exact", an.exact, "Use closed forms where available");

  ClassifyArgs cl;
  auto* classify_sub = app.add_subcommand("classify", "Aging class of each functional");
  classify_sub->add_option("--model", cl.model, "Model spec")->required();
  classify_sub->add_option("--grid", cl.grid, "start:stop:points[:log|:lin]")->required();
  classify_sub->add_option("--tol", cl.tol, "Relative tolerance");
  classify_sub->add_option("--targets", cl.targets, "Comma list of FR,AFR,GFR,HFR,AI,GAI,HAI");
  classify_sub->add_option("--out", cl.out, "Output path (default stdout)");

  CompareArgs co;
  auto* compare_sub = app.add_subcommand("compare", "Stochastic orders between two models");
  compare_sub->add_option("--x", co.x, "First model spec")->required();
  compare_sub->add_option("--y", co.y, "Second model spec")->required();
  compare_sub->add_option("--grid", co.grid, "start:stop:points[:log|:lin]")->required();
  compare_sub->add_option("--orders", co.orders, "all or a comma list of order names");
  compare_sub->add_option("--tol", co.tol, "Relative tolerance");
  compare_sub->add_option("--out", co.out, "Output path (default stdout)");

  SystemArgs sy;
  auto* system_sub = app.add_subcommand("system", "Series-system bounds");
  system_sub->add_option("--component", sy.components, "Component model spec (repeat)")->required();
  system_sub->add_option("--grid", sy.grid, "start:stop:points[:log|:lin]")->required();
  system_sub->add_option("--tol", sy.tol, "Relative tolerance");
  system_sub->add_option("--out", sy.out, "Output path (default stdout)");

  EstimateArgs es;
  auto* estimate_sub = app.add_subcommand("estimate", "Kernel hazard estimate from time,status data");
  estimate_sub->add_option("--input", es.input, "CSV with header time,status")->required();
  estimate_sub->add_option("--bandwidth", es.bandwidth, "auto or a positive number");
  estimate_sub->add_option("--grid-size", es.grid_size, "Number of grid points");
  estimate_sub->add_option("--out", es.out, "Output path (default stdout)");
  estimate_sub->add_option("--format", es.format, "csv or json");

  SimulateArgs si;
  std::uint64_t seed = 0;
  auto* simulate_sub = app.add_subcommand("simulate", "Weibull bias/MSE study");
  simulate_sub->add_option("--config", si.config, "key=value study config")->required();
  simulate_sub->add_option("--out", si.out, "JSON report path (default stdout)");
  simulate_sub->add_option("--csv", si.csv, "Also write functional,n,bias,mse here");
  auto* seed_opt = simulate_sub->add_option("--seed", seed, "Base seed, overrides the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze_cmd) analyze(an, out);
    if (*classify_sub) classify_cmd(cl, out);
    if (*compare_sub) compare(co, out);
    if (*system_sub) system_cmd(sy, out);
    if (*estimate_sub) estimate(es, out);
    if (*simulate_sub) {
      if (*seed_opt) si.seed = seed;
      simulate(si, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace aging::cli
