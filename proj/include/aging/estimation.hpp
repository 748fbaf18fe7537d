#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aging/functionals.hpp"

namespace aging {

struct Observation {
  double time = 0.0;
  bool event = false;  // false = right-censored
};

struct SurvivalSample {
  std::vector<Observation> observations;

  std::size_t size() const { return observations.size(); }
  std::size_t events() const;
  double min_time() const;
  double max_time() const;
};

/// Validates times (finite, > 0) and that at least one event is present.
/// Throws ParseError (0-based index + 1 as row), EmptyData, AllCensored.
SurvivalSample make_sample(std::vector<Observation> observations);

/// Parses CSV text with header `time,status`, status in {0, 1}.
SurvivalSample ingest(std::string_view csv_text);

/// Nelson-Aalen jumps d_i / Y(t_i) at the distinct event times. Subjects
/// censored at t_i are still at risk at t_i.
struct NelsonAalen {
  std::vector<double> times;
  std::vector<double> increments;
  std::vector<double> events;
};

NelsonAalen nelson_aalen(const SurvivalSample& sample);

inline constexpr double kRateFloor = 1e-8;

/// 0.75 (1 - u^2) on |u| <= 1.
double epanechnikov(double u);

/// sum_i K_h(t - t_i) dL_i divided by the kernel mass inside [lo, hi]. The
/// correction is skipped when hi <= lo.
double smooth_increments(std::span<const double> times, std::span<const double> increments,
                         double bandwidth, double t, double lo, double hi);

/// 1.06 * sd(event times) * n_events^(-1/5).
double auto_bandwidth(const SurvivalSample& sample);

struct HazardEstimate {
  std::vector<double> grid;
  std::vector<double> rhat;
  std::vector<bool> clamped;
  double bandwidth = 0.0;
  double floor = kRateFloor;
  std::string_view kernel = "epanechnikov";
};

/// Kernel-smoothed hazard on `grid_size` equally spaced points spanning the
/// observed times. `bandwidth` of nullopt selects auto_bandwidth. Throws
/// BandwidthTooSmall when no window holds at least 3 events.
HazardEstimate kernel_hazard(const SurvivalSample& sample, std::optional<double> bandwidth,
                             std::size_t grid_size);
/// Same on caller-supplied times inside the observed range.
HazardEstimate kernel_hazard(const SurvivalSample& sample, std::optional<double> bandwidth,
                             std::span<const double> grid);
/// Single-threaded reference; bit-identical to kernel_hazard.
HazardEstimate kernel_hazard_serial(const SurvivalSample& sample, std::optional<double> bandwidth,
                                    std::span<const double> grid);

/// Trapezoidal means of r, ln r, 1/r from the first grid point. Rows where
/// the floor was active carry the Clamped flag.
AgingProfile estimated_profile(const HazardEstimate& estimate);

}  // namespace aging
