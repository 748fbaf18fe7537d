#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aging/error.hpp"

namespace aging {

enum class SimFunctional { HR, AFR, GFR, HFR, AI, GAI, HAI };
inline constexpr std::size_t kSimFunctionals = 7;
inline constexpr std::array<SimFunctional, kSimFunctionals> kAllSimFunctionals = {
    SimFunctional::HR, SimFunctional::AFR, SimFunctional::GFR, SimFunctional::HFR,
    SimFunctional::AI, SimFunctional::GAI, SimFunctional::HAI};

std::string_view to_string(SimFunctional f);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SimConfig {
  double alpha = 0.5;
  double beta = 1.5;
  std::vector<std::size_t> sample_sizes;
  std::size_t replications = 100;
  std::uint64_t base_seed = kDefaultSeed;
  std::optional<double> bandwidth;  // nullopt = automatic
  std::size_t grid_size = 512;      // estimation grid between the sample minimum and the last evaluation point
  std::size_t eval_points = 64;

  /// Throws InvalidConfig on out-of-range fields.
  void validate() const;
};

/// key=value lines; `#` starts a comment. sample_sizes accepts a comma list
/// or start:stop:step. Unknown keys are rejected. `default_seed` applies when
/// the text has no base_seed line.
SimConfig parse_sim_config(std::string_view text, std::uint64_t default_seed = kDefaultSeed);

/// Inversion sampling t = (-ln U / alpha)^(1/beta) with U drawn from
/// std::mt19937_64(seed) as ((x >> 11) + 0.5) * 2^-53.
std::vector<double> sample_weibull(double alpha, double beta, std::size_t n, std::uint64_t seed);

/// `count` Weibull quantiles at probabilities evenly spaced on [0.1, 0.9].
std::vector<double> quantile_grid(double alpha, double beta, std::size_t count);

/// True functional values at `points`, one vector per functional.
std::array<std::vector<double>, kSimFunctionals> weibull_truth(double alpha, double beta,
                                                               const std::vector<double>& points);

struct ReplicationResult {
  bool ok = false;
  std::string error;
  std::array<double, kSimFunctionals> bias{};  // averaged over evaluation points
  std::array<double, kSimFunctionals> sq_error{};
};

/// One replication: sample with seed base_seed + rep, estimate, compare.
ReplicationResult run_replication(const SimConfig& config, std::size_t n, std::size_t rep,
                                  const std::vector<double>& eval,
                                  const std::array<std::vector<double>, kSimFunctionals>& truth);

struct SimCell {
  SimFunctional functional;
  std::size_t n;
  double bias;
  double mse;
};

struct SimFailures {
  std::size_t n;
  std::size_t failed;
  bool flagged;  // more than 5% of replications failed
};

struct SimReport {
  SimConfig config;
  std::vector<SimFunctional> functionals;
  std::vector<SimCell> cells;
  std::vector<SimFailures> failures;
  /// Functionals ranked by |bias| (resp. MSE) averaged over sample sizes, largest first.
  std::vector<SimFunctional> bias_order;
  std::vector<SimFunctional> mse_order;
  std::vector<std::string> notices;

  std::optional<SimCell> cell(SimFunctional f, std::size_t n) const;
  nlohmann::json to_json() const;
  /// Long format `functional,n,bias,mse`.
  std::string to_csv() const;
};

/// Orderings the study is expected to reproduce; reported, not enforced.
inline constexpr std::array<SimFunctional, kSimFunctionals> kReferenceBiasOrder = {
    SimFunctional::HR, SimFunctional::AI, SimFunctional::GAI, SimFunctional::HAI,
    SimFunctional::HFR, SimFunctional::AFR, SimFunctional::GFR};
inline constexpr std::array<SimFunctional, kSimFunctionals> kReferenceMseOrder = {
    SimFunctional::HAI, SimFunctional::HR, SimFunctional::GAI, SimFunctional::AI,
    SimFunctional::HFR, SimFunctional::AFR, SimFunctional::GFR};

/// Replications run in parallel; results are aggregated in (n, rep) order so
/// the report does not depend on scheduling.
SimReport run_study(const SimConfig& config);
SimReport run_study_serial(const SimConfig& config);

}  // namespace aging
