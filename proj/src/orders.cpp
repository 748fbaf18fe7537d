#include "aging/orders.hpp"

#include <algorithm>
#include <cmath>

namespace aging {

std::string_view to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::FR: return "FR";
    case OrderKind::AF: return "AF";
    case OrderKind::ST: return "ST";
    case OrderKind::AFR: return "AFR";
    case OrderKind::GFR: return "GFR";
    case OrderKind::HFR: return "HFR";
    case OrderKind::AI: return "AI";
    case OrderKind::GAI: return "GAI";
    case OrderKind::HAI: return "HAI";
  }
  return "?";
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::XleY: return "XleY";
    case Direction::YleX: return "YleX";
    case Direction::Both: return "Both";
    case Direction::Neither: return "Neither";
  }
  return "?";
}

OrderKind parse_order_kind(std::string_view name) {
  for (OrderKind k : kAllOrders) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown order kind '" + std::string(name) + "'");
}

namespace {

struct PairData {
  AgingProfile x;
  AgingProfile y;
  std::vector<double> cum_x;
  std::vector<double> cum_y;
  std::vector<double> grid;
  // Hazards over the whole window [left, t_max], not only at grid points:
  // the integrated orders see r everywhere in it.
  std::vector<double> window;
  std::vector<double> rx;
  std::vector<double> ry;
};

// Same sampling as the running hazard extremes of a profile.
std::vector<double> window_times(const HazardModel& x, const HazardModel& y,
                                 std::span<const double> grid) {
  const double left = x.support_left();
  std::vector<double> out;
  double prev = left;
  for (double t : grid) {
    if (prev == left) {
      for (int j = 0; j < 32; ++j) out.push_back(left + (t - left) * std::pow(10.0, -6.0 + 6.0 * j / 32.0));
    } else {
      for (int j = 1; j < 8; ++j) out.push_back(prev + (t - prev) * j / 8.0);
    }
    out.push_back(t);
    prev = t;
  }
  for (const auto* m : {&x, &y}) {
    for (double k : m->knot_times()) {
      if (k > left && k <= grid.back()) out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](double u) { return !(u > left) || !x.contains(u) || !y.contains(u); });
  return out;
}

PairData evaluate_pair(const HazardModel& x, const HazardModel& y, std::span<const double> grid) {
  if (x.support_left() != y.support_left()) {
    throw Error(ErrorCode::MixedSupports,
                x.describe() + " and " + y.describe() + " start at different times");
  }
  PairData d{profile(x, grid), profile(y, grid), {}, {}, {grid.begin(), grid.end()}, {}, {}, {}};
  for (double t : grid) {
    d.cum_x.push_back(x.cumulative_hazard(t));
    d.cum_y.push_back(y.cumulative_hazard(t));
  }
  d.window = window_times(x, y, grid);
  for (double u : d.window) {
    d.rx.push_back(x.hazard_unchecked(u));
    d.ry.push_back(y.hazard_unchecked(u));
  }
  return d;
}

Direction direction_of(bool xy, bool yx) {
  if (xy && yx) return Direction::Both;
  if (xy) return Direction::XleY;
  if (yx) return Direction::YleX;
  return Direction::Neither;
}

// X <= Y wherever qx >= qy, within tol relative to the larger magnitude.
OrderReport pointwise(OrderKind kind, std::span<const double> grid, std::span<const double> qx,
                      std::span<const double> qy, double tol) {
  OrderReport rep{kind, Direction::Neither, std::nullopt, std::nullopt, {grid.begin(), grid.end()}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double slack = tol * std::max(std::abs(qx[i]), std::abs(qy[i]));
    const bool tie = qx[i] == qy[i];
    if (!tie && qx[i] < qy[i] - slack && !rep.witness_xy) rep.witness_xy = grid[i];
    if (!tie && qy[i] < qx[i] - slack && !rep.witness_yx) rep.witness_yx = grid[i];
  }
  rep.direction = direction_of(!rep.witness_xy, !rep.witness_yx);
  return rep;
}

// X <=_AF Y iff r_X / r_Y is nondecreasing.
OrderReport aging_faster(std::span<const double> times, std::span<const double> rx,
                         std::span<const double> ry, double tol) {
  OrderReport rep{OrderKind::AF, Direction::Neither, std::nullopt, std::nullopt, {}};
  std::vector<double> ratio(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) ratio[i] = rx[i] / ry[i];
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!std::isfinite(ratio[i]) || !std::isfinite(ratio[i - 1])) continue;
    const double d = ratio[i] - ratio[i - 1];
    const double threshold = tol * std::max(std::abs(ratio[i]), std::abs(ratio[i - 1]));
    if (d < -threshold && !rep.witness_xy) rep.witness_xy = times[i];
    if (d > threshold && !rep.witness_yx) rep.witness_yx = times[i];
  }
  rep.direction = direction_of(!rep.witness_xy, !rep.witness_yx);
  return rep;
}

std::vector<double> column(const AgingProfile& p, double ProfileRow::*member) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& row : p.rows) out.push_back(row.*member);
  return out;
}

bool any_divergent(const AgingProfile& p) {
  return std::any_of(p.rows.begin(), p.rows.end(),
                     [](const ProfileRow& r) { return r.flags & kFlagDivergent; });
}

OrderReport order_from(const PairData& d, OrderKind kind, double tol) {
  const auto member = [&](double ProfileRow::*m) {
    return pointwise(kind, d.grid, column(d.x, m), column(d.y, m), tol);
  };
  if ((kind == OrderKind::HFR || kind == OrderKind::HAI) &&
      (any_divergent(d.x) || any_divergent(d.y))) {
    throw Error(ErrorCode::DivergentFunctional,
                std::string(to_string(kind)) + " order undefined: a harmonic mean diverges");
  }
  switch (kind) {
    case OrderKind::FR: {
      auto rep = pointwise(kind, d.window, d.rx, d.ry, tol);
      rep.grid = d.grid;
      return rep;
    }
    case OrderKind::AFR: return member(&ProfileRow::afr);
    case OrderKind::GFR: return member(&ProfileRow::gfr);
    case OrderKind::HFR: return member(&ProfileRow::hfr);
    case OrderKind::AI: return member(&ProfileRow::ai);
    case OrderKind::GAI: return member(&ProfileRow::gai);
    case OrderKind::HAI: return member(&ProfileRow::hai);
    case OrderKind::ST: return pointwise(kind, d.grid, d.cum_x, d.cum_y, tol);
    case OrderKind::AF: {
      auto rep = aging_faster(d.window, d.rx, d.ry, tol);
      rep.grid = d.grid;
      return rep;
    }
  }
  return {};
}

}  // namespace

std::vector<OrderReport> check_orders(const HazardModel& x, const HazardModel& y,
                                      std::span<const OrderKind> kinds,
                                      std::span<const double> grid, double tol) {
  const auto data = evaluate_pair(x, y, grid);
  std::vector<OrderReport> out;
  for (OrderKind k : kinds) out.push_back(order_from(data, k, tol));
  return out;
}

OrderReport check_order(const HazardModel& x, const HazardModel& y, OrderKind kind,
                        std::span<const double> grid, double tol) {
  const OrderKind kinds[] = {kind};
  return check_orders(x, y, kinds, grid, tol).front();
}

OrderReport gai_order_integral_form(const HazardModel& x, const HazardModel& y,
                                    std::span<const double> grid, double tol) {
  if (x.support_left() != y.support_left()) {
    throw Error(ErrorCode::MixedSupports,
                x.describe() + " and " + y.describe() + " start at different times");
  }
  validate_grid(x, grid);
  validate_grid(y, grid);
  const double left = x.support_left();
  OrderReport rep{OrderKind::GAI, Direction::Neither, std::nullopt, std::nullopt,
                  {grid.begin(), grid.end()}};
  const auto log_ratio = [&](double u) {
    return std::log(x.hazard_unchecked(u)) - std::log(y.hazard_unchecked(u));
  };
  for (double t : grid) {
    const auto q = integrate_graded(log_ratio, left, t);
    const double gap = log_ratio(t) - q.value / (t - left);
    if (gap < -tol && !rep.witness_xy) rep.witness_xy = t;
    if (gap > tol && !rep.witness_yx) rep.witness_yx = t;
  }
  rep.direction = direction_of(!rep.witness_xy, !rep.witness_yx);
  return rep;
}

std::size_t LatticeReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const ImplicationCheck& c) {
        return c.violated();
      }));
}

LatticeReport verify_implications(const HazardModel& x, const HazardModel& y,
                                  std::span<const double> grid, double tol) {
  const auto data = evaluate_pair(x, y, grid);
  const bool harmonic_ok = !any_divergent(data.x) && !any_divergent(data.y);
  const auto get = [&](OrderKind k) { return order_from(data, k, tol); };

  const auto fr = get(OrderKind::FR);
  const auto af = get(OrderKind::AF);
  const auto st = get(OrderKind::ST);
  const auto afr_rep = get(OrderKind::AFR);
  const auto gfr_rep = get(OrderKind::GFR);
  const auto gai_rep = get(OrderKind::GAI);
  std::optional<OrderReport> hfr_rep;
  if (harmonic_ok) hfr_rep = get(OrderKind::HFR);

  LatticeReport report;
  for (Direction orient : {Direction::XleY, Direction::YleX}) {
    const bool xy = orient == Direction::XleY;
    const auto holds = [xy](const OrderReport& r) { return xy ? r.x_le_y() : r.y_le_x(); };
    const auto witness = [xy](const OrderReport& r) { return xy ? r.witness_xy : r.witness_yx; };
    const auto add = [&](std::string name, const OrderReport& premise,
                         const OrderReport* conclusion, bool biconditional) {
      ImplicationCheck c;
      c.name = std::move(name);
      c.orientation = orient;
      c.biconditional = biconditional;
      c.premise = holds(premise);
      if (conclusion == nullptr) {
        c.skipped = true;
      } else {
        c.conclusion = holds(*conclusion);
        c.witness = c.conclusion ? witness(premise) : witness(*conclusion);
      }
      report.checks.push_back(std::move(c));
    };
    add("FR=>AFR", fr, &afr_rep, false);
    add("FR=>GFR", fr, &gfr_rep, false);
    add("FR=>HFR", fr, hfr_rep ? &*hfr_rep : nullptr, false);
    add("AF=>GAI", af, &gai_rep, false);
    add("AFR<=>ST", afr_rep, &st, true);
  }
  return report;
}

}  // namespace aging
