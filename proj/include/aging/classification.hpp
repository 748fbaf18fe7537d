#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "aging/functionals.hpp"

namespace aging {

enum class ClassTarget { FR, AFR, GFR, HFR, AI, GAI, HAI };
enum class ClassLabel { Increasing, Decreasing, Constant, NonMonotone, Undetermined };

std::string_view to_string(ClassTarget target);
std::string_view to_string(ClassLabel label);

inline constexpr ClassTarget kAllTargets[] = {ClassTarget::FR,  ClassTarget::AFR, ClassTarget::GFR,
                                              ClassTarget::HFR, ClassTarget::AI,  ClassTarget::GAI,
                                              ClassTarget::HAI};

struct ClassVerdict {
  ClassTarget target = ClassTarget::FR;
  ClassLabel label = ClassLabel::Undetermined;
  /// Grid times bracketing the break; present iff label is NonMonotone.
  std::optional<std::pair<double, double>> witness;
  double tolerance = 0.0;
};

inline constexpr double kAnalyticTolerance = 1e-7;
inline constexpr double kEstimatedTolerance = 0.02;

/// Monotonicity label of a sampled sequence: successive differences are
/// compared against tol * max|v|.
ClassVerdict classify_sequence(ClassTarget target, std::span<const double> times,
                               std::span<const double> values, double tol);

/// Classifies a profile. AFR, GFR and HFR use the intensity test (L, LG, LH
/// against 1); the others use successive differences. Throws
/// DivergentFunctional when HFR or HAI is requested on a divergent row.
std::vector<ClassVerdict> classify_profile(const AgingProfile& profile, double tol,
                                           std::span<const ClassTarget> targets = kAllTargets);

/// Requires at least 16 grid points and tol > 0.
std::vector<ClassVerdict> classify(const HazardModel& model, std::span<const double> grid,
                                   double tol = kAnalyticTolerance,
                                   std::span<const ClassTarget> targets = kAllTargets);

struct BoundRow {
  double t = 0.0;
  /// r/sup r <= L <= LG <= LH <= r/inf r, extremes over the averaging window.
  bool chain = false;
  /// H <= G <= A.
  bool means = false;
  /// LG and LH on the side of 1 implied by a monotone FR verdict; true when
  /// FR is not monotone.
  bool fr_implication = false;

  bool ok() const { return chain && means && fr_implication; }
};

struct BoundReport {
  ClassLabel fr_label = ClassLabel::Undetermined;
  std::vector<BoundRow> rows;

  bool all_hold() const;
  std::size_t violations() const;
};

/// Pointwise check of the intensity chain and the monotone-FR bounds on LG
/// and LH. A divergent row counts LH as +inf.
BoundReport check_bounds(const AgingProfile& profile, double tol = kAnalyticTolerance);

}  // namespace aging
