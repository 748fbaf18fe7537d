#include "aging/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aging {

std::string_view to_string(ClassTarget target) {
  switch (target) {
    case ClassTarget::FR: return "FR";
    case ClassTarget::AFR: return "AFR";
    case ClassTarget::GFR: return "GFR";
    case ClassTarget::HFR: return "HFR";
    case ClassTarget::AI: return "AI";
    case ClassTarget::GAI: return "GAI";
    case ClassTarget::HAI: return "HAI";
  }
  return "?";
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Increasing: return "Increasing";
    case ClassLabel::Decreasing: return "Decreasing";
    case ClassLabel::Constant: return "Constant";
    case ClassLabel::NonMonotone: return "NonMonotone";
    case ClassLabel::Undetermined: return "Undetermined";
  }
  return "?";
}

ClassVerdict classify_sequence(ClassTarget target, std::span<const double> times,
                               std::span<const double> values, double tol) {
  ClassVerdict verdict{target, ClassLabel::Constant, std::nullopt, tol};
  if (values.size() < 2) return verdict;

  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double threshold = tol * (scale > 0.0 ? scale : 1.0);

  bool up = false;
  bool down = false;
  bool small_up = false;
  bool small_down = false;
  double total_variation = 0.0;
  int first_sign = 0;
  std::optional<std::pair<double, double>> reversal;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    total_variation += std::abs(d);
    small_up |= d > 0.0;
    small_down |= d < 0.0;
    const int sign = d > threshold ? 1 : (d < -threshold ? -1 : 0);
    if (sign == 0) continue;
    up |= sign > 0;
    down |= sign < 0;
    if (first_sign == 0) {
      first_sign = sign;
    } else if (sign != first_sign && !reversal) {
      reversal = std::make_pair(times[i - 1], times[i]);
    }
  }

  if (total_variation <= threshold) {
    verdict.label = ClassLabel::Constant;
  } else if (up && down) {
    verdict.label = ClassLabel::NonMonotone;
    verdict.witness = reversal;
  } else if (up) {
    verdict.label = ClassLabel::Increasing;
  } else if (down) {
    verdict.label = ClassLabel::Decreasing;
  } else if (small_up && small_down) {
    // Every step is within tolerance but the steps alternate.
    verdict.label = ClassLabel::Undetermined;
  } else {
    verdict.label = small_up ? ClassLabel::Increasing : ClassLabel::Decreasing;
  }
  return verdict;
}

namespace {

// Mean-rate classes from the sign of the matching intensity minus one.
ClassVerdict classify_by_intensity(ClassTarget target, const AgingProfile& profile,
                                   double ProfileRow::*column, double tol) {
  ClassVerdict verdict{target, ClassLabel::Constant, std::nullopt, tol};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::optional<double> below;
  std::optional<double> above;
  for (const auto& row : profile.rows) {
    const double v = row.*column;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v < 1.0 - tol && !below) below = row.t;
    if (v > 1.0 + tol && !above) above = row.t;
  }
  const bool increasing = lo >= 1.0 - tol;
  const bool decreasing = hi <= 1.0 + tol;
  if (increasing && decreasing) {
    verdict.label = ClassLabel::Constant;
  } else if (increasing) {
    verdict.label = ClassLabel::Increasing;
  } else if (decreasing) {
    verdict.label = ClassLabel::Decreasing;
  } else {
    verdict.label = ClassLabel::NonMonotone;
    verdict.witness = std::minmax(*below, *above);
  }
  return verdict;
}

std::vector<double> column_of(const AgingProfile& profile, double ProfileRow::*column) {
  std::vector<double> out;
  out.reserve(profile.size());
  for (const auto& row : profile.rows) out.push_back(row.*column);
  return out;
}

}  // namespace

std::vector<ClassVerdict> classify_profile(const AgingProfile& profile, double tol,
                                           std::span<const ClassTarget> targets) {
  const auto times = column_of(profile, &ProfileRow::t);
  const bool divergent = std::any_of(profile.rows.begin(), profile.rows.end(),
                                     [](const ProfileRow& r) { return r.flags & kFlagDivergent; });
  std::vector<ClassVerdict> out;
  for (ClassTarget target : targets) {
    if (divergent && (target == ClassTarget::HFR || target == ClassTarget::HAI)) {
      throw Error(ErrorCode::DivergentFunctional,
                  std::string(to_string(target)) + " undefined: reciprocal hazard diverges");
    }
    switch (target) {
      case ClassTarget::FR:
        out.push_back(classify_sequence(target, times, column_of(profile, &ProfileRow::r), tol));
        break;
      case ClassTarget::AI:
        out.push_back(classify_sequence(target, times, column_of(profile, &ProfileRow::ai), tol));
        break;
      case ClassTarget::GAI:
        out.push_back(classify_sequence(target, times, column_of(profile, &ProfileRow::gai), tol));
        break;
      case ClassTarget::HAI:
        out.push_back(classify_sequence(target, times, column_of(profile, &ProfileRow::hai), tol));
        break;
      case ClassTarget::AFR:
        out.push_back(classify_by_intensity(target, profile, &ProfileRow::ai, tol));
        break;
      case ClassTarget::GFR:
        out.push_back(classify_by_intensity(target, profile, &ProfileRow::gai, tol));
        break;
      case ClassTarget::HFR:
        out.push_back(classify_by_intensity(target, profile, &ProfileRow::hai, tol));
        break;
    }
  }
  return out;
}

std::vector<ClassVerdict> classify(const HazardModel& model, std::span<const double> grid,
                                   double tol, std::span<const ClassTarget> targets) {
  if (grid.size() < 16) {
    throw Error(ErrorCode::InvalidParameter, "classification needs at least 16 grid points");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
  return classify_profile(profile(model, grid), tol, targets);
}

bool BoundReport::all_hold() const { return violations() == 0; }

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const BoundRow& r) { return !r.ok(); }));
}

BoundReport check_bounds(const AgingProfile& profile, double tol) {
  BoundReport report;
  const auto times = column_of(profile, &ProfileRow::t);
  report.fr_label =
      classify_sequence(ClassTarget::FR, times, column_of(profile, &ProfileRow::r), tol).label;

  const auto le = [tol](double a, double b) { return a <= b + tol * std::abs(b) || a <= b; };
  for (const auto& row : profile.rows) {
    BoundRow out;
    out.t = row.t;
    const double lh = (row.flags & kFlagDivergent) ? std::numeric_limits<double>::infinity()
                                                   : row.hai;
    const double lower = row.r / row.r_max;  // 0 when the window has an unbounded hazard
    const double upper = row.r_min > 0.0 ? row.r / row.r_min
                                         : std::numeric_limits<double>::infinity();
    out.chain = le(lower, row.ai) && le(row.ai, row.gai) && le(row.gai, lh) && le(lh, upper);
    out.means = le(row.hfr, row.gfr) && le(row.gfr, row.afr);
    switch (report.fr_label) {
      case ClassLabel::Increasing:
        out.fr_implication = row.gai >= 1.0 - tol && lh >= 1.0 - tol;
        break;
      case ClassLabel::Decreasing:
        out.fr_implication = row.gai <= 1.0 + tol && lh <= 1.0 + tol;
        break;
      case ClassLabel::Constant:
        out.fr_implication = std::abs(row.gai - 1.0) <= tol && std::abs(lh - 1.0) <= tol;
        break;
      default:
        out.fr_implication = true;
    }
    report.rows.push_back(out);
  }
  return report;
}

}  // namespace aging
