#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aging/error.hpp"

namespace aging {

enum class ModelKind {
  Exponential,
  Weibull,
  ErlangLike,
  Uniform,
  Rayleigh,
  Pareto,
  TruncatedLogWeibull,
  Tabulated,
  Composite,
  Residual,
  Scaled,
};

std::string_view to_string(ModelKind kind);

/// An immutable hazard-rate function r(t) together with its support.
///
/// Catalog kinds are parameterised as follows (survival in brackets):
///   Exponential(rate)              r = rate
///   Weibull(scale a, shape b)      r = a b t^(b-1)        [exp(-a t^b)]
///   ErlangLike(rate l)             r = l^2 t / (1 + l t)
///   Uniform(left a, right b)       r = 1 / (b - t),  a < t < b
///   Rayleigh(intercept a, slope b) r = a + b t
///   Pareto(shape a, threshold k)   r = a / t,  t >= k
///   TruncatedLogWeibull(loc a, scale b)  r = exp((t - a) / b) / b
///
/// Averages are taken from support_left(), which is a for Uniform, k for
/// Pareto, the first knot for Tabulated and 0 otherwise.
///
/// Copies share the underlying immutable node, so passing by value is cheap
/// and concurrent evaluation is safe.
class HazardModel {
 public:
  static HazardModel exponential(double rate);
  static HazardModel weibull(double scale, double shape);
  static HazardModel erlang_like(double rate);
  static HazardModel uniform(double left, double right);
  static HazardModel rayleigh(double intercept, double slope);
  static HazardModel pareto(double shape, double threshold);
  static HazardModel truncated_log_weibull(double location, double scale);
  /// Piecewise-linear interpolation of r over strictly increasing knots.
  static HazardModel tabulated(std::vector<double> times, std::vector<double> rates);
  /// Sum of member hazards on the intersection of member supports.
  static HazardModel composite(std::vector<HazardModel> members);
  /// r(t) multiplied by a positive constant.
  static HazardModel scaled(const HazardModel& base, double factor);

  ModelKind kind() const;
  double support_left() const;
  /// +infinity for unbounded supports.
  double support_right() const;

  /// True when t lies in [left, right] and r(t) is finite and positive there.
  bool contains(double t) const;

  /// Throws OutOfSupport outside the support or where r is not finite.
  double hazard(double t) const;
  /// No support check; for quadrature nodes already known to be inside.
  double hazard_unchecked(double t) const;

  /// lim r(t) as t approaches support_left() from the right; may be 0 or inf.
  double left_limit() const;

  /// Exact integral of r from support_left() to t.
  double cumulative_hazard(double t) const;
  double survival(double t) const;

  /// Catalog parameters in constructor order; empty for derived kinds.
  std::span<const double> params() const;
  const std::vector<HazardModel>& members() const;
  /// Knots of a Tabulated model.
  std::span<const double> knot_times() const;
  std::span<const double> knot_rates() const;

  std::string describe() const;

  struct Node;

 private:
  explicit HazardModel(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;

  friend HazardModel residual(const HazardModel& model, double age);
};

/// Hazard of the residual lifetime at age x: t -> r(x + t), supported from 0.
HazardModel residual(const HazardModel& model, double age);

enum class Functional { A, G, H, L, LG, LH };

std::string_view to_string(Functional f);

struct OracleValue {
  enum class Status { Available, Unavailable, Divergent };
  Status status = Status::Unavailable;
  double value = 0.0;

  bool available() const { return status == Status::Available; }
};

/// Published closed forms for the catalog kinds.
/// Throws OutOfSupport when t is not strictly inside the support.
OracleValue closed_form_oracle(const HazardModel& model, Functional functional, double t);

/// Parses `kind:param=value,...`, e.g. `weibull:alpha=0.5,beta=1.5` or
/// `tabulated:file=rates.csv`. Throws InvalidParameter on grammar errors.
HazardModel parse_model_spec(const std::string& spec);

/// Reads a CSV with a header naming columns `t` and `r` (other columns are
/// ignored) into a Tabulated model.
HazardModel load_tabulated_csv(const std::string& path);

}  // namespace aging
