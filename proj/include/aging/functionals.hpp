#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aging/hazard_model.hpp"
#include "aging/quadrature.hpp"

namespace aging {

struct EvalOptions {
  QuadratureOptions quadrature{};
  /// Use closed_form_oracle instead of quadrature where a formula exists.
  bool exact = false;
};

/// A mean that may fail to exist. When the reciprocal-hazard integral
/// diverges the harmonic mean is reported as 0 and the intensity as +inf.
struct MeanValue {
  double value = 0.0;
  bool divergent = false;
  double error = 0.0;
};

/// Averages of r, ln r, 1/r from support_left() to t.
double afr(const HazardModel& model, double t, const EvalOptions& opts = {});
double gfr(const HazardModel& model, double t, const EvalOptions& opts = {});
MeanValue hfr(const HazardModel& model, double t, const EvalOptions& opts = {});

double ai(const HazardModel& model, double t, const EvalOptions& opts = {});
double gai(const HazardModel& model, double t, const EvalOptions& opts = {});
MeanValue hai(const HazardModel& model, double t, const EvalOptions& opts = {});

/// Raw integrals over [lo, hi], exposed for convergence checks.
QuadratureResult integrate_hazard(const HazardModel& model, double lo, double hi,
                                  const QuadratureOptions& opts = {});
QuadratureResult integrate_log_hazard(const HazardModel& model, double lo, double hi,
                                      const QuadratureOptions& opts = {});
QuadratureResult integrate_reciprocal_hazard(const HazardModel& model, double lo, double hi,
                                             const QuadratureOptions& opts = {});

/// The window [offset, offset + length].
struct IntervalSpec {
  double offset = 0.0;
  double length = 0.0;
};

double interval_am(const HazardModel& model, IntervalSpec iv, const QuadratureOptions& opts = {});
double interval_gm(const HazardModel& model, IntervalSpec iv, const QuadratureOptions& opts = {});
MeanValue interval_hm(const HazardModel& model, IntervalSpec iv,
                      const QuadratureOptions& opts = {});

/// S(t) S(s) / S(t + s), with `iv.length` as t and `iv.offset` as s.
double specific_aging_factor(const HazardModel& model, IntervalSpec iv);

enum class DiscreteMean { Arithmetic, Geometric, Harmonic };

/// Throws EmptyList or NonPositiveEntry.
double discrete_mean(std::span<const double> values, DiscreteMean kind);

enum RowFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagDivergent = 1,
  kFlagClamped = 2,
};

std::string flags_to_string(std::uint8_t flags);

struct ProfileRow {
  double t = 0.0;
  double r = 0.0;
  double afr = 0.0;
  double gfr = 0.0;
  double hfr = 0.0;
  double ai = 0.0;
  double gai = 0.0;
  double hai = 0.0;
  std::uint8_t flags = kFlagNone;
  // Extremes of r over the averaging window [left, t].
  double r_min = 0.0;
  double r_max = 0.0;
};

struct AgingProfile {
  std::vector<ProfileRow> rows;

  std::size_t size() const { return rows.size(); }
};

/// Evaluates every functional on a strictly increasing grid inside the
/// support, one grid point per OpenMP work item.
AgingProfile profile(const HazardModel& model, std::span<const double> grid,
                     const EvalOptions& opts = {});
/// Single-threaded reference for profile(); results are bit-identical.
AgingProfile profile_serial(const HazardModel& model, std::span<const double> grid,
                            const EvalOptions& opts = {});

/// Throws OutOfSupport / InvalidParameter for a bad grid.
void validate_grid(const HazardModel& model, std::span<const double> grid);

}  // namespace aging
