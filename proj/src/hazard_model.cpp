#include "aging/hazard_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace aging {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

struct HazardModel::Node {
  ModelKind kind;
  std::vector<double> params;
  std::vector<double> times;
  std::vector<double> rates;
  std::vector<HazardModel> members;  // Composite members, or the base of Residual/Scaled
  double left = 0.0;
  double right = kInf;
  double offset = 0.0;  // Residual age
  double factor = 1.0;  // Scaled multiplier
};

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Exponential: return "exponential";
    case ModelKind::Weibull: return "weibull";
    case ModelKind::ErlangLike: return "erlang";
    case ModelKind::Uniform: return "uniform";
    case ModelKind::Rayleigh: return "rayleigh";
    case ModelKind::Pareto: return "pareto";
    case ModelKind::TruncatedLogWeibull: return "tlw";
    case ModelKind::Tabulated: return "tabulated";
    case ModelKind::Composite: return "composite";
    case ModelKind::Residual: return "residual";
    case ModelKind::Scaled: return "scaled";
  }
  return "unknown";
}

std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::A: return "A";
    case Functional::G: return "G";
    case Functional::H: return "H";
    case Functional::L: return "L";
    case Functional::LG: return "LG";
    case Functional::LH: return "LH";
  }
  return "?";
}

HazardModel::HazardModel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

std::shared_ptr<HazardModel::Node> make_node(ModelKind kind, std::vector<double> params,
                                             double left, double right) {
  auto node = std::make_shared<HazardModel::Node>();
  node->kind = kind;
  node->params = std::move(params);
  node->left = left;
  node->right = right;
  return node;
}

}  // namespace

HazardModel HazardModel::exponential(double rate) {
  require(finite_positive(rate), "exponential rate must be positive");
  return HazardModel(make_node(ModelKind::Exponential, {rate}, 0.0, kInf));
}

HazardModel HazardModel::weibull(double scale, double shape) {
  require(finite_positive(scale), "weibull alpha must be positive");
  require(finite_positive(shape), "weibull beta must be positive");
  return HazardModel(make_node(ModelKind::Weibull, {scale, shape}, 0.0, kInf));
}

HazardModel HazardModel::erlang_like(double rate) {
  require(finite_positive(rate), "erlang lambda must be positive");
  return HazardModel(make_node(ModelKind::ErlangLike, {rate}, 0.0, kInf));
}

HazardModel HazardModel::uniform(double left, double right) {
  require(std::isfinite(left) && std::isfinite(right) && left >= 0.0 && left < right,
          "uniform requires 0 <= a < b");
  return HazardModel(make_node(ModelKind::Uniform, {left, right}, left, right));
}

HazardModel HazardModel::rayleigh(double intercept, double slope) {
  require(std::isfinite(intercept) && intercept >= 0.0, "rayleigh a must be >= 0");
  require(finite_positive(slope), "rayleigh b must be positive");
  return HazardModel(make_node(ModelKind::Rayleigh, {intercept, slope}, 0.0, kInf));
}

HazardModel HazardModel::pareto(double shape, double threshold) {
  require(finite_positive(shape), "pareto a must be positive");
  require(finite_positive(threshold), "pareto k must be positive");
  return HazardModel(make_node(ModelKind::Pareto, {shape, threshold}, threshold, kInf));
}

HazardModel HazardModel::truncated_log_weibull(double location, double scale) {
  require(std::isfinite(location), "log-weibull a must be finite");
  require(finite_positive(scale), "log-weibull b must be positive");
  return HazardModel(make_node(ModelKind::TruncatedLogWeibull, {location, scale}, 0.0, kInf));
}

HazardModel HazardModel::tabulated(std::vector<double> times, std::vector<double> rates) {
  require(times.size() == rates.size(), "tabulated columns differ in length");
  require(times.size() >= 2, "tabulated model needs at least two knots");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && times[i] >= 0.0, "tabulated times must be finite and >= 0");
    if (i > 0) require(times[i] > times[i - 1], "tabulated times must be strictly increasing");
    if (!finite_positive(rates[i])) {
      throw Error(ErrorCode::NonPositiveRate,
                  "tabulated rate at t=" + num(times[i]) + " is " + num(rates[i]));
    }
  }
  auto node = make_node(ModelKind::Tabulated, {}, times.front(), times.back());
  node->times = std::move(times);
  node->rates = std::move(rates);
  return HazardModel(std::move(node));
}

HazardModel HazardModel::composite(std::vector<HazardModel> members) {
  require(!members.empty(), "composite needs at least one member");
  double left = -kInf;
  double right = kInf;
  for (const auto& m : members) {
    left = std::max(left, m.support_left());
    right = std::min(right, m.support_right());
  }
  if (!(left < right)) {
    throw Error(ErrorCode::MixedSupports, "member supports do not overlap");
  }
  auto node = make_node(ModelKind::Composite, {}, left, right);
  node->members = std::move(members);
  return HazardModel(std::move(node));
}

HazardModel HazardModel::scaled(const HazardModel& base, double factor) {
  require(finite_positive(factor), "scale factor must be positive");
  auto node = make_node(ModelKind::Scaled, {}, base.support_left(), base.support_right());
  node->members = {base};
  node->factor = factor;
  return HazardModel(std::move(node));
}

HazardModel residual(const HazardModel& model, double age) {
  const double left = model.support_left();
  const double right = model.support_right();
  if (!(age >= left && age < right) || (age > left && !model.contains(age))) {
    throw Error(ErrorCode::OutOfSupport, "residual age " + num(age) + " outside support of " +
                                             model.describe());
  }
  if (model.kind() == ModelKind::Exponential) return model;
  if (model.kind() == ModelKind::Residual) {
    return residual(model.members().front(), model.node_->offset + age);
  }
  auto node = make_node(ModelKind::Residual, {}, 0.0, right - age);
  node->members = {model};
  node->offset = age;
  return HazardModel(std::move(node));
}

ModelKind HazardModel::kind() const { return node_->kind; }
double HazardModel::support_left() const { return node_->left; }
double HazardModel::support_right() const { return node_->right; }
std::span<const double> HazardModel::params() const { return node_->params; }
const std::vector<HazardModel>& HazardModel::members() const { return node_->members; }
std::span<const double> HazardModel::knot_times() const { return node_->times; }
std::span<const double> HazardModel::knot_rates() const { return node_->rates; }

double HazardModel::hazard_unchecked(double t) const {
  const Node& n = *node_;
  const auto& p = n.params;
  switch (n.kind) {
    case ModelKind::Exponential:
      return p[0];
    case ModelKind::Weibull:
      return p[0] * p[1] * std::pow(t, p[1] - 1.0);
    case ModelKind::ErlangLike:
      return p[0] * p[0] * t / (1.0 + p[0] * t);
    case ModelKind::Uniform:
      return 1.0 / (p[1] - t);
    case ModelKind::Rayleigh:
      return p[0] + p[1] * t;
    case ModelKind::Pareto:
      return p[0] / t;
    case ModelKind::TruncatedLogWeibull:
      return std::exp((t - p[0]) / p[1]) / p[1];
    case ModelKind::Tabulated: {
      const auto& ts = n.times;
      const auto& rs = n.rates;
      if (t <= ts.front()) return rs.front();
      if (t >= ts.back()) return rs.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const auto i = static_cast<std::size_t>(it - ts.begin());
      const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
      return rs[i - 1] + w * (rs[i] - rs[i - 1]);
    }
    case ModelKind::Composite: {
      double sum = 0.0;
      for (const auto& m : n.members) sum += m.hazard_unchecked(t);
      return sum;
    }
    case ModelKind::Residual:
      return n.members.front().hazard_unchecked(n.offset + t);
    case ModelKind::Scaled:
      return n.factor * n.members.front().hazard_unchecked(t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool HazardModel::contains(double t) const {
  if (!(t >= node_->left && t <= node_->right)) return false;
  return finite_positive(hazard_unchecked(t));
}

double HazardModel::hazard(double t) const {
  if (!contains(t)) {
    throw Error(ErrorCode::OutOfSupport, "t=" + num(t) + " outside support of " + describe());
  }
  return hazard_unchecked(t);
}

double HazardModel::left_limit() const {
  const Node& n = *node_;
  const auto& p = n.params;
  switch (n.kind) {
    case ModelKind::Exponential: return p[0];
    case ModelKind::Weibull:
      if (p[1] < 1.0) return kInf;
      return p[1] == 1.0 ? p[0] : 0.0;
    case ModelKind::ErlangLike: return 0.0;
    case ModelKind::Uniform: return 1.0 / (p[1] - p[0]);
    case ModelKind::Rayleigh: return p[0];
    case ModelKind::Pareto: return p[0] / p[1];
    case ModelKind::TruncatedLogWeibull: return std::exp(-p[0] / p[1]) / p[1];
    case ModelKind::Tabulated: return n.rates.front();
    case ModelKind::Composite: {
      double sum = 0.0;
      for (const auto& m : n.members) {
        sum += m.support_left() == n.left ? m.left_limit() : m.hazard_unchecked(n.left);
      }
      return sum;
    }
    case ModelKind::Residual: {
      const auto& base = n.members.front();
      return n.offset == base.support_left() ? base.left_limit()
                                             : base.hazard_unchecked(n.offset);
    }
    case ModelKind::Scaled: return n.factor * n.members.front().left_limit();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HazardModel::cumulative_hazard(double t) const {
  const Node& n = *node_;
  const bool open_right = n.kind == ModelKind::Uniform;
  if (!(t >= n.left && (open_right ? t < n.right : t <= n.right))) {
    throw Error(ErrorCode::OutOfSupport, "t=" + num(t) + " outside support of " + describe());
  }
  const auto& p = n.params;
  switch (n.kind) {
    case ModelKind::Exponential: return p[0] * t;
    case ModelKind::Weibull: return p[0] * std::pow(t, p[1]);
    case ModelKind::ErlangLike: return p[0] * t - std::log1p(p[0] * t);
    case ModelKind::Uniform: return -std::log1p(-(t - p[0]) / (p[1] - p[0]));
    case ModelKind::Rayleigh: return p[0] * t + 0.5 * p[1] * t * t;
    case ModelKind::Pareto: return p[0] * std::log(t / p[1]);
    case ModelKind::TruncatedLogWeibull: return std::exp(-p[0] / p[1]) * std::expm1(t / p[1]);
    case ModelKind::Tabulated: {
      const auto& ts = n.times;
      const auto& rs = n.rates;
      double sum = 0.0;
      for (std::size_t i = 1; i < ts.size(); ++i) {
        if (t <= ts[i - 1]) break;
        const double hi = std::min(t, ts[i]);
        const double r_hi = hazard_unchecked(hi);
        sum += 0.5 * (rs[i - 1] + r_hi) * (hi - ts[i - 1]);
      }
      return sum;
    }
    case ModelKind::Composite: {
      double sum = 0.0;
      for (const auto& m : n.members) {
        sum += m.cumulative_hazard(t) - m.cumulative_hazard(n.left);
      }
      return sum;
    }
    case ModelKind::Residual: {
      const auto& base = n.members.front();
      return base.cumulative_hazard(n.offset + t) - base.cumulative_hazard(n.offset);
    }
    case ModelKind::Scaled: return n.factor * n.members.front().cumulative_hazard(t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HazardModel::survival(double t) const { return std::exp(-cumulative_hazard(t)); }

std::string HazardModel::describe() const {
  const Node& n = *node_;
  const auto& p = n.params;
  switch (n.kind) {
    case ModelKind::Exponential: return "exp:lambda=" + num(p[0]);
    case ModelKind::Weibull: return "weibull:alpha=" + num(p[0]) + ",beta=" + num(p[1]);
    case ModelKind::ErlangLike: return "erlang:lambda=" + num(p[0]);
    case ModelKind::Uniform: return "uniform:a=" + num(p[0]) + ",b=" + num(p[1]);
    case ModelKind::Rayleigh: return "rayleigh:a=" + num(p[0]) + ",b=" + num(p[1]);
    case ModelKind::Pareto: return "pareto:a=" + num(p[0]) + ",k=" + num(p[1]);
    case ModelKind::TruncatedLogWeibull: return "tlw:a=" + num(p[0]) + ",b=" + num(p[1]);
    case ModelKind::Tabulated: return "tabulated(" + std::to_string(n.times.size()) + " knots)";
    case ModelKind::Composite: {
      std::string out = "composite(";
      for (std::size_t i = 0; i < n.members.size(); ++i) {
        if (i) out += " + ";
        out += n.members[i].describe();
      }
      return out + ")";
    }
    case ModelKind::Residual:
      return "residual(" + n.members.front().describe() + ", x=" + num(n.offset) + ")";
    case ModelKind::Scaled:
      return "scaled(" + n.members.front().describe() + ", c=" + num(n.factor) + ")";
  }
  return "unknown";
}

namespace {

OracleValue available(double v) { return {OracleValue::Status::Available, v}; }
OracleValue divergent() {
  return {OracleValue::Status::Divergent, std::numeric_limits<double>::infinity()};
}

OracleValue weibull_oracle(double a, double b, Functional f, double t) {
  const double r = a * b * std::pow(t, b - 1.0);
  switch (f) {
    case Functional::A: return available(a * std::pow(t, b - 1.0));
    case Functional::G: return available(r * std::exp(1.0 - b));
    case Functional::H: return b < 2.0 ? available((2.0 - b) * r) : divergent();
    case Functional::L: return available(b);
    case Functional::LG: return available(std::exp(b - 1.0));
    case Functional::LH: return b < 2.0 ? available(1.0 / (2.0 - b)) : divergent();
  }
  return {};
}

OracleValue erlang_oracle(double l, Functional f, double t) {
  const double lt = l * t;
  const double r = l * l * t / (1.0 + lt);
  const double lg = std::exp(std::log1p(lt) / lt);
  switch (f) {
    case Functional::A: return available((lt - std::log1p(lt)) / t);
    case Functional::G: return available(r / lg);
    case Functional::L: return available(lt * lt / ((1.0 + lt) * (lt - std::log1p(lt))));
    case Functional::LG: return available(lg);
    // The reciprocal hazard behaves like 1/(l^2 u) near 0.
    case Functional::H:
    case Functional::LH: return divergent();
  }
  return {};
}

OracleValue uniform_oracle(double a, double b, Functional f, double t) {
  const double log_ratio = std::log(b - a) - std::log(b - t);
  switch (f) {
    case Functional::A: return available(log_ratio / (t - a));
    case Functional::L: return available((t - a) / ((b - t) * log_ratio));
    case Functional::G:
      return available(std::exp(1.0 - (t - b) / (t - a) * std::log(b - t) -
                                 (b - a) / (t - a) * std::log(b - a)));
    case Functional::LG:
      return available(std::exp(-1.0 + (a - b) / (t - a) * (std::log(b - t) - std::log(b - a))));
    case Functional::H: return available(2.0 / (2.0 * b - a - t));
    case Functional::LH: return available(1.0 + (t - a) / (2.0 * (b - t)));
  }
  return {};
}

OracleValue rayleigh_oracle(double a, double b, Functional f, double t) {
  const double r = a + b * t;
  const double lg = a > 0.0 ? std::numbers::e / std::exp(a / (b * t) * std::log1p(b * t / a))
                            : std::numbers::e;
  switch (f) {
    case Functional::A: return available(a + 0.5 * b * t);
    case Functional::L: return available(r / (a + 0.5 * b * t));
    case Functional::LG: return available(lg);
    case Functional::G: return available(r / lg);
    case Functional::H:
      return a > 0.0 ? available(b * t / std::log1p(b * t / a)) : divergent();
    case Functional::LH:
      return a > 0.0 ? available((1.0 + a / (b * t)) * std::log1p(b * t / a)) : divergent();
  }
  return {};
}

OracleValue pareto_oracle(double a, double k, Functional f, double t) {
  const double r = a / t;
  const double log_lg = -1.0 - std::log(t) + (t * std::log(t) - k * std::log(k)) / (t - k);
  switch (f) {
    case Functional::A: return available(a * std::log(t / k) / (t - k));
    case Functional::L: return available((t - k) / (t * std::log(t / k)));
    case Functional::LG: return available(std::exp(log_lg));
    case Functional::G: return available(r / std::exp(log_lg));
    case Functional::H: return available(2.0 * a / (t + k));
    case Functional::LH: return available((t + k) / (2.0 * t));
  }
  return {};
}

OracleValue log_weibull_oracle(double a, double b, Functional f, double t) {
  const double r = std::exp((t - a) / b) / b;
  const double afr = std::exp(-a / b) * std::expm1(t / b) / t;
  const double hfr = t / (b * b * std::exp(a / b) * -std::expm1(-t / b));
  switch (f) {
    case Functional::A: return available(afr);
    case Functional::L: return available(r / afr);
    case Functional::G: return available(std::exp((t - 2.0 * a) / (2.0 * b)) / b);
    case Functional::LG: return available(std::exp(t / (2.0 * b)));
    case Functional::H: return available(hfr);
    case Functional::LH: return available(r / hfr);
  }
  return {};
}

}  // namespace

OracleValue closed_form_oracle(const HazardModel& model, Functional functional, double t) {
  if (!(t > model.support_left() && t < model.support_right()) || !model.contains(t)) {
    throw Error(ErrorCode::OutOfSupport,
                "oracle point t=" + num(t) + " not inside support of " + model.describe());
  }
  const auto p = model.params();
  switch (model.kind()) {
    case ModelKind::Exponential:
      switch (functional) {
        case Functional::A:
        case Functional::G:
        case Functional::H: return available(p[0]);
        default: return available(1.0);
      }
    case ModelKind::Weibull: return weibull_oracle(p[0], p[1], functional, t);
    case ModelKind::ErlangLike: return erlang_oracle(p[0], functional, t);
    case ModelKind::Uniform: return uniform_oracle(p[0], p[1], functional, t);
    case ModelKind::Rayleigh: return rayleigh_oracle(p[0], p[1], functional, t);
    case ModelKind::Pareto: return pareto_oracle(p[0], p[1], functional, t);
    case ModelKind::TruncatedLogWeibull: return log_weibull_oracle(p[0], p[1], functional, t);
    default: return {};
  }
}

}  // namespace aging
