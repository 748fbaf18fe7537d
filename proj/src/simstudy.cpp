#include "aging/simstudy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aging/error.hpp"
#include "aging/estimation.hpp"
#include "aging/functionals.hpp"
#include "aging/profile_io.hpp"
#include "csv.hpp"

namespace aging {

std::string_view to_string(SimFunctional f) {
  switch (f) {
    case SimFunctional::HR: return "HR";
    case SimFunctional::AFR: return "AFR";
    case SimFunctional::GFR: return "GFR";
    case SimFunctional::HFR: return "HFR";
    case SimFunctional::AI: return "AI";
    case SimFunctional::GAI: return "GAI";
    case SimFunctional::HAI: return "HAI";
  }
  return "?";
}

void SimConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(std::isfinite(alpha) && alpha > 0.0)) bad("alpha must be positive");
  if (!(std::isfinite(beta) && beta > 0.0)) bad("beta must be positive");
  if (sample_sizes.empty()) bad("sample_sizes is empty");
  for (std::size_t n : sample_sizes) {
    if (n < 50) bad("sample size " + std::to_string(n) + " is below 50");
  }
  if (replications < 1) bad("replications must be at least 1");
  if (bandwidth && !(std::isfinite(*bandwidth) && *bandwidth > 0.0)) bad("bandwidth must be positive");
  if (grid_size < 2) bad("grid_size must be at least 2");
  if (eval_points < 2) bad("eval_points must be at least 2");
}

namespace {

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, key + ": '" + value + "' is not a non-negative integer");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, key + ": '" + value + "' is out of range");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  double x = 0.0;
  if (!csv::parse_double(value, x)) {
    throw Error(ErrorCode::InvalidConfig, key + ": '" + value + "' is not a number");
  }
  return x;
}

std::vector<std::size_t> parse_sizes(const std::string& value) {
  std::vector<std::size_t> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = csv::split(value, ':');
    if (parts.size() != 3) {
      throw Error(ErrorCode::InvalidConfig, "sample_sizes range must be start:stop:step");
    }
    const auto start = parse_count("sample_sizes", parts[0]);
    const auto stop = parse_count("sample_sizes", parts[1]);
    const auto step = parse_count("sample_sizes", parts[2]);
    if (step == 0 || stop < start) {
      throw Error(ErrorCode::InvalidConfig, "sample_sizes range '" + value + "' is empty");
    }
    for (auto n = start; n <= stop; n += step) out.push_back(n);
    return out;
  }
  for (const auto& part : csv::split(value)) out.push_back(parse_count("sample_sizes", part));
  return out;
}

}  // namespace

SimConfig parse_sim_config(std::string_view text, std::uint64_t default_seed) {
  SimConfig cfg;
  cfg.base_seed = default_seed;
  bool have_sizes = false;
  for (auto line : csv::lines(text)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = std::string(csv::trim(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "expected key=value, got '" + line + "'");
    }
    const std::string key(csv::trim(std::string_view(line).substr(0, eq)));
    const std::string value(csv::trim(std::string_view(line).substr(eq + 1)));
    if (key == "alpha") {
      cfg.alpha = parse_real(key, value);
    } else if (key == "beta") {
      cfg.beta = parse_real(key, value);
    } else if (key == "sample_sizes") {
      cfg.sample_sizes = parse_sizes(value);
      have_sizes = true;
    } else if (key == "replications") {
      cfg.replications = parse_count(key, value);
    } else if (key == "base_seed" || key == "seed") {
      cfg.base_seed = parse_count(key, value);
    } else if (key == "bandwidth") {
      if (value == "auto") {
        cfg.bandwidth.reset();
      } else {
        cfg.bandwidth = parse_real(key, value);
      }
    } else if (key == "grid_size") {
      cfg.grid_size = parse_count(key, value);
    } else if (key == "eval_points") {
      cfg.eval_points = parse_count(key, value);
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
    }
  }
  if (!have_sizes) throw Error(ErrorCode::InvalidConfig, "sample_sizes is required");
  cfg.validate();
  return cfg;
}

std::vector<double> sample_weibull(double alpha, double beta, std::size_t n, std::uint64_t seed) {
  if (!(std::isfinite(alpha) && alpha > 0.0 && std::isfinite(beta) && beta > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "Weibull alpha and beta must be positive");
  }
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "sample size must be at least 1");
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (auto& t : out) {
    const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    t = std::pow(-std::log(u) / alpha, 1.0 / beta);
  }
  return out;
}

std::vector<double> quantile_grid(double alpha, double beta, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double p = 0.1 + 0.8 * static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::pow(-std::log1p(-p) / alpha, 1.0 / beta);
  }
  return out;
}

std::array<std::vector<double>, kSimFunctionals> weibull_truth(double alpha, double beta,
                                                               const std::vector<double>& points) {
  std::array<std::vector<double>, kSimFunctionals> out;
  for (double t : points) {
    const double r = alpha * beta * std::pow(t, beta - 1.0);
    const double a = alpha * std::pow(t, beta - 1.0);
    const double g = r * std::exp(1.0 - beta);
    const double h = (2.0 - beta) * r;  // meaningful only for beta < 2
    out[0].push_back(r);
    out[1].push_back(a);
    out[2].push_back(g);
    out[3].push_back(h);
    out[4].push_back(beta);
    out[5].push_back(std::exp(beta - 1.0));
    out[6].push_back(1.0 / (2.0 - beta));
  }
  return out;
}

namespace {

bool includes_hai(const SimConfig& cfg) { return cfg.beta < 2.0; }

// Cross-checks the closed forms against direct quadrature.
void validate_truth(const SimConfig& cfg, const std::vector<double>& eval,
                    const std::array<std::vector<double>, kSimFunctionals>& truth) {
  const auto model = HazardModel::weibull(cfg.alpha, cfg.beta);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::abs(b); };
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const double t = eval[i];
    bool ok = close(model.hazard(t), truth[0][i]) && close(afr(model, t), truth[1][i]) &&
              close(gfr(model, t), truth[2][i]);
    if (includes_hai(cfg)) {
      const auto h = hfr(model, t);
      ok = ok && !h.divergent && close(h.value, truth[3][i]);
    }
    if (!ok) {
      throw Error(ErrorCode::QuadratureFailure,
                  "closed-form Weibull functionals disagree with quadrature at t=" +
                      std::to_string(t));
    }
  }
}

std::vector<double> estimation_grid(double lo, double hi, std::size_t size,
                                    const std::vector<double>& eval) {
  std::vector<double> grid(size);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(size - 1);
  }
  grid.back() = hi;
  grid.insert(grid.end(), eval.begin(), eval.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

ReplicationResult run_replication(const SimConfig& cfg, std::size_t n, std::size_t rep,
                                  const std::vector<double>& eval,
                                  const std::array<std::vector<double>, kSimFunctionals>& truth) {
  ReplicationResult res;
  try {
    const auto times = sample_weibull(cfg.alpha, cfg.beta, n, cfg.base_seed + rep);
    std::vector<Observation> obs;
    obs.reserve(n);
    for (double t : times) obs.push_back({t, true});
    const auto sample = make_sample(std::move(obs));
    const double lo = sample.min_time();
    if (!(eval.front() > lo && eval.back() < sample.max_time())) {
      throw Error(ErrorCode::OutOfSupport, "evaluation quantiles outside the sample range");
    }
    const auto grid = estimation_grid(lo, eval.back(), cfg.grid_size, eval);
    const auto est = kernel_hazard_serial(sample, cfg.bandwidth, grid);
    const auto prof = estimated_profile(est);

    std::size_t row = 0;
    for (std::size_t i = 0; i < eval.size(); ++i) {
      while (prof.rows[row].t != eval[i]) ++row;
      const auto& r = prof.rows[row];
      const double got[kSimFunctionals] = {r.r, r.afr, r.gfr, r.hfr, r.ai, r.gai, r.hai};
      for (std::size_t f = 0; f < kSimFunctionals; ++f) {
        const double d = got[f] - truth[f][i];
        res.bias[f] += d;
        res.sq_error[f] += d * d;
      }
    }
    for (std::size_t f = 0; f < kSimFunctionals; ++f) {
      res.bias[f] /= static_cast<double>(eval.size());
      res.sq_error[f] /= static_cast<double>(eval.size());
    }
    res.ok = true;
  } catch (const Error& e) {
    res.error = e.what();
  }
  return res;
}

namespace {

SimReport aggregate(const SimConfig& cfg, const std::vector<ReplicationResult>& results) {
  SimReport rep;
  rep.config = cfg;
  for (auto f : kAllSimFunctionals) {
    if (f != SimFunctional::HAI || includes_hai(cfg)) rep.functionals.push_back(f);
  }
  if (!includes_hai(cfg)) {
    rep.notices.push_back("HAI excluded: harmonic mean of a Weibull hazard with beta >= 2 diverges");
  }

  std::array<double, kSimFunctionals> bias_total{};
  std::array<double, kSimFunctionals> mse_total{};
  for (std::size_t k = 0; k < cfg.sample_sizes.size(); ++k) {
    const std::size_t n = cfg.sample_sizes[k];
    std::array<double, kSimFunctionals> bias{};
    std::array<double, kSimFunctionals> mse{};
    std::size_t ok = 0;
    for (std::size_t r = 0; r < cfg.replications; ++r) {
      const auto& res = results[k * cfg.replications + r];
      if (!res.ok) continue;
      ++ok;
      for (std::size_t f = 0; f < kSimFunctionals; ++f) {
        bias[f] += res.bias[f];
        mse[f] += res.sq_error[f];
      }
    }
    const std::size_t failed = cfg.replications - ok;
    rep.failures.push_back({n, failed, 20 * failed > cfg.replications});
    if (ok == 0) {
      rep.notices.push_back("all replications failed at n=" + std::to_string(n));
      continue;
    }
    for (auto f : rep.functionals) {
      const auto i = static_cast<std::size_t>(f);
      const double b = bias[i] / static_cast<double>(ok);
      const double m = mse[i] / static_cast<double>(ok);
      rep.cells.push_back({f, n, b, m});
      bias_total[i] += std::abs(b);
      mse_total[i] += m;
    }
  }

  const auto ranked = [&](const std::array<double, kSimFunctionals>& score) {
    auto order = rep.functionals;
    std::stable_sort(order.begin(), order.end(), [&](SimFunctional a, SimFunctional b) {
      return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
    });
    return order;
  };
  rep.bias_order = ranked(bias_total);
  rep.mse_order = ranked(mse_total);
  return rep;
}

struct Prepared {
  std::vector<double> eval;
  std::array<std::vector<double>, kSimFunctionals> truth;
};

Prepared prepare(const SimConfig& cfg) {
  cfg.validate();
  Prepared p{quantile_grid(cfg.alpha, cfg.beta, cfg.eval_points), {}};
  p.truth = weibull_truth(cfg.alpha, cfg.beta, p.eval);
  validate_truth(cfg, p.eval, p.truth);
  return p;
}

}  // namespace

SimReport run_study(const SimConfig& cfg) {
  const auto p = prepare(cfg);
  const std::size_t reps = cfg.replications;
  const auto tasks = static_cast<std::ptrdiff_t>(cfg.sample_sizes.size() * reps);
  std::vector<ReplicationResult> results(static_cast<std::size_t>(tasks));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < tasks; ++i) {
    const auto k = static_cast<std::size_t>(i);
    results[k] = run_replication(cfg, cfg.sample_sizes[k / reps], k % reps, p.eval, p.truth);
  }
  return aggregate(cfg, results);
}

SimReport run_study_serial(const SimConfig& cfg) {
  const auto p = prepare(cfg);
  const std::size_t reps = cfg.replications;
  std::vector<ReplicationResult> results;
  for (std::size_t n : cfg.sample_sizes) {
    for (std::size_t r = 0; r < reps; ++r) {
      results.push_back(run_replication(cfg, n, r, p.eval, p.truth));
    }
  }
  return aggregate(cfg, results);
}

std::optional<SimCell> SimReport::cell(SimFunctional f, std::size_t n) const {
  for (const auto& c : cells) {
    if (c.functional == f && c.n == n) return c;
  }
  return std::nullopt;
}

nlohmann::json SimReport::to_json() const {
  using nlohmann::json;
  const auto names = [](const auto& list) {
    json out = json::array();
    for (auto f : list) out.push_back(std::string(to_string(f)));
    return out;
  };
  json cfg = {
      {"alpha", round12(config.alpha)},
      {"beta", round12(config.beta)},
      {"sample_sizes", config.sample_sizes},
      {"replications", config.replications},
      {"base_seed", config.base_seed},
      {"grid_size", config.grid_size},
      {"eval_points", config.eval_points},
  };
  cfg["bandwidth"] = config.bandwidth ? json(round12(*config.bandwidth)) : json("auto");

  json results = json::array();
  for (const auto& c : cells) {
    results.push_back({{"functional", std::string(to_string(c.functional))},
                       {"n", c.n},
                       {"bias", round12(c.bias)},
                       {"mse", round12(c.mse)}});
  }
  json failed = json::array();
  for (const auto& f : failures) {
    failed.push_back({{"n", f.n}, {"failed", f.failed}, {"flagged", f.flagged}});
  }
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < config.replications; ++r) seeds.push_back(config.base_seed + r);

  // The reference orderings only cover the functionals actually studied.
  const auto restrict = [&](const auto& ref) {
    std::vector<SimFunctional> out;
    for (auto f : ref) {
      if (std::find(functionals.begin(), functionals.end(), f) != functionals.end()) out.push_back(f);
    }
    return out;
  };
  const auto ref_bias = restrict(kReferenceBiasOrder);
  const auto ref_mse = restrict(kReferenceMseOrder);

  return {
      {"config", cfg},
      {"functionals", names(functionals)},
      {"results", results},
      {"failures", failed},
      {"bias_order", names(bias_order)},
      {"mse_order", names(mse_order)},
      {"reference_bias_order", names(ref_bias)},
      {"reference_mse_order", names(ref_mse)},
      {"bias_order_matches_reference", bias_order == ref_bias},
      {"mse_order_matches_reference", mse_order == ref_mse},
      {"seeds", seeds},
      {"notices", notices},
  };
}

std::string SimReport::to_csv() const {
  std::string out = "functional,n,bias,mse\n";
  for (const auto& c : cells) {
    out += std::string(to_string(c.functional)) + ',' + std::to_string(c.n) + ',' +
           format_number(c.bias) + ',' + format_number(c.mse) + '\n';
  }
  return out;
}

}  // namespace aging
