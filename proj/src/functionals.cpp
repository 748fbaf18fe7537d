#include "aging/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace aging {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// t must be a point strictly right of the support-left end where r is finite.
void require_averaging_point(const HazardModel& model, double t) {
  if (!(t > model.support_left()) || !model.contains(t)) {
    throw Error(ErrorCode::OutOfSupport,
                "t=" + num(t) + " not inside support of " + model.describe());
  }
}

const OracleValue* oracle_if(const EvalOptions& opts, const HazardModel& model, Functional f,
                             double t, OracleValue& slot) {
  // A closed support's right end is a valid grid point but not an oracle point.
  if (!opts.exact || !(t < model.support_right())) return nullptr;
  slot = closed_form_oracle(model, f, t);
  return slot.status == OracleValue::Status::Unavailable ? nullptr : &slot;
}

QuadratureResult checked(QuadratureResult q, const char* what) {
  if (q.divergent) {
    throw Error(ErrorCode::QuadratureFailure, std::string("integral of ") + what + " diverges");
  }
  return q;
}

}  // namespace

QuadratureResult integrate_hazard(const HazardModel& model, double lo, double hi,
                                  const QuadratureOptions& opts) {
  return integrate_graded([&](double u) { return model.hazard_unchecked(u); }, lo, hi, opts);
}

QuadratureResult integrate_log_hazard(const HazardModel& model, double lo, double hi,
                                      const QuadratureOptions& opts) {
  return integrate_graded([&](double u) { return std::log(model.hazard_unchecked(u)); }, lo, hi,
                          opts);
}

QuadratureResult integrate_reciprocal_hazard(const HazardModel& model, double lo, double hi,
                                             const QuadratureOptions& opts) {
  return integrate_graded([&](double u) { return 1.0 / model.hazard_unchecked(u); }, lo, hi,
                          opts);
}

double afr(const HazardModel& model, double t, const EvalOptions& opts) {
  require_averaging_point(model, t);
  OracleValue slot;
  if (const auto* o = oracle_if(opts, model, Functional::A, t, slot)) return o->value;
  const double lo = model.support_left();
  return checked(integrate_hazard(model, lo, t, opts.quadrature), "r").value / (t - lo);
}

double gfr(const HazardModel& model, double t, const EvalOptions& opts) {
  require_averaging_point(model, t);
  OracleValue slot;
  if (const auto* o = oracle_if(opts, model, Functional::G, t, slot)) return o->value;
  const double lo = model.support_left();
  return std::exp(checked(integrate_log_hazard(model, lo, t, opts.quadrature), "ln r").value /
                  (t - lo));
}

MeanValue hfr(const HazardModel& model, double t, const EvalOptions& opts) {
  require_averaging_point(model, t);
  OracleValue slot;
  if (const auto* o = oracle_if(opts, model, Functional::H, t, slot)) {
    return o->available() ? MeanValue{o->value, false, 0.0} : MeanValue{0.0, true, 0.0};
  }
  const double lo = model.support_left();
  const auto q = integrate_reciprocal_hazard(model, lo, t, opts.quadrature);
  if (q.divergent) return {0.0, true, 0.0};
  const double h = (t - lo) / q.value;
  return {h, false, h * q.error / q.value};
}

double ai(const HazardModel& model, double t, const EvalOptions& opts) {
  return model.hazard(t) / afr(model, t, opts);
}

double gai(const HazardModel& model, double t, const EvalOptions& opts) {
  return model.hazard(t) / gfr(model, t, opts);
}

MeanValue hai(const HazardModel& model, double t, const EvalOptions& opts) {
  const auto h = hfr(model, t, opts);
  if (h.divergent) return {kInf, true, 0.0};
  return {model.hazard(t) / h.value, false, 0.0};
}

namespace {

void require_interval(const HazardModel& model, IntervalSpec iv) {
  if (!(iv.length > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "interval length must be positive");
  }
  if (!(iv.offset >= model.support_left()) || !model.contains(iv.offset + iv.length)) {
    throw Error(ErrorCode::OutOfSupport, "interval [" + num(iv.offset) + ", " +
                                             num(iv.offset + iv.length) +
                                             "] not inside support of " + model.describe());
  }
}

}  // namespace

double interval_am(const HazardModel& model, IntervalSpec iv, const QuadratureOptions& opts) {
  require_interval(model, iv);
  return checked(integrate_hazard(model, iv.offset, iv.offset + iv.length, opts), "r").value /
         iv.length;
}

double interval_gm(const HazardModel& model, IntervalSpec iv, const QuadratureOptions& opts) {
  require_interval(model, iv);
  return std::exp(
      checked(integrate_log_hazard(model, iv.offset, iv.offset + iv.length, opts), "ln r").value /
      iv.length);
}

MeanValue interval_hm(const HazardModel& model, IntervalSpec iv, const QuadratureOptions& opts) {
  require_interval(model, iv);
  const auto q = integrate_reciprocal_hazard(model, iv.offset, iv.offset + iv.length, opts);
  if (q.divergent) return {0.0, true, 0.0};
  return {iv.length / q.value, false, iv.length * q.error / (q.value * q.value)};
}

double specific_aging_factor(const HazardModel& model, IntervalSpec iv) {
  const double t = iv.length;
  const double s = iv.offset;
  return std::exp(model.cumulative_hazard(t + s) - model.cumulative_hazard(t) -
                  model.cumulative_hazard(s));
}

double discrete_mean(std::span<const double> values, DiscreteMean kind) {
  if (values.empty()) throw Error(ErrorCode::EmptyList, "discrete mean of an empty list");
  for (double v : values) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::NonPositiveEntry, "entry " + num(v) + " is not positive and finite");
    }
  }
  const double n = static_cast<double>(values.size());
  switch (kind) {
    case DiscreteMean::Arithmetic:
      return std::accumulate(values.begin(), values.end(), 0.0) / n;
    case DiscreteMean::Geometric: {
      double log_sum = 0.0;
      for (double v : values) log_sum += std::log(v);
      return std::exp(log_sum / n);
    }
    case DiscreteMean::Harmonic: {
      double inv_sum = 0.0;
      for (double v : values) inv_sum += 1.0 / v;
      return n / inv_sum;
    }
  }
  return 0.0;
}

std::string flags_to_string(std::uint8_t flags) {
  std::string out;
  if (flags & kFlagDivergent) out += "Divergent";
  if (flags & kFlagClamped) out += out.empty() ? "Clamped" : ";Clamped";
  return out;
}

void validate_grid(const HazardModel& model, std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidParameter, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidParameter, "grid must be strictly increasing");
    }
    require_averaging_point(model, grid[i]);
  }
}

namespace {

ProfileRow evaluate_row(const HazardModel& model, double t, const EvalOptions& opts) {
  ProfileRow row;
  row.t = t;
  row.r = model.hazard(t);
  row.afr = afr(model, t, opts);
  row.gfr = gfr(model, t, opts);
  const auto h = hfr(model, t, opts);
  row.hfr = h.value;
  row.ai = row.r / row.afr;
  row.gai = row.r / row.gfr;
  if (h.divergent) {
    row.flags |= kFlagDivergent;
    row.hai = kInf;
  } else {
    row.hai = row.r / row.hfr;
  }
  return row;
}

// Running extremes of r over [left, t_i], from the left limit, the grid
// values and a sampling of each gap.
void fill_hazard_range(const HazardModel& model, AgingProfile& prof) {
  const double left = model.support_left();
  double lo = model.left_limit();
  double hi = lo;
  const auto knots = model.knot_times();
  double prev = left;
  for (auto& row : prof.rows) {
    auto visit = [&](double u) {
      if (u > left && u <= row.t && model.contains(u)) {
        const double r = model.hazard_unchecked(u);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    };
    if (prev == left) {
      const double span = row.t - left;
      for (int j = 0; j <= 32; ++j) visit(left + span * std::pow(10.0, -6.0 + 6.0 * j / 32.0));
    } else {
      for (int j = 1; j < 8; ++j) visit(prev + (row.t - prev) * j / 8.0);
    }
    for (double k : knots) {
      if (k > prev && k <= row.t) visit(k);
    }
    visit(row.t);
    row.r_min = lo;
    row.r_max = hi;
    prev = row.t;
  }
}

}  // namespace

AgingProfile profile_serial(const HazardModel& model, std::span<const double> grid,
                            const EvalOptions& opts) {
  validate_grid(model, grid);
  AgingProfile prof;
  prof.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) prof.rows[i] = evaluate_row(model, grid[i], opts);
  fill_hazard_range(model, prof);
  return prof;
}

AgingProfile profile(const HazardModel& model, std::span<const double> grid,
                     const EvalOptions& opts) {
  validate_grid(model, grid);
  AgingProfile prof;
  prof.rows.resize(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      prof.rows[i] = evaluate_row(model, grid[i], opts);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  fill_hazard_range(model, prof);
  return prof;
}

}  // namespace aging
