#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aging/functionals.hpp"

namespace aging {

enum class OrderKind { FR, AF, ST, AFR, GFR, HFR, AI, GAI, HAI };
enum class Direction { XleY, YleX, Both, Neither };

std::string_view to_string(OrderKind kind);
std::string_view to_string(Direction direction);
/// Accepts the names printed by to_string; throws InvalidParameter otherwise.
OrderKind parse_order_kind(std::string_view name);

inline constexpr OrderKind kAllOrders[] = {OrderKind::FR,  OrderKind::AF,  OrderKind::ST,
                                           OrderKind::AFR, OrderKind::GFR, OrderKind::HFR,
                                           OrderKind::AI,  OrderKind::GAI, OrderKind::HAI};

inline constexpr double kOrderTolerance = 1e-9;

/// X <=_kind Y means, for the pointwise kinds, that X's quantity dominates
/// Y's at every grid point: r, A, G, H, L, LG, LH larger, survival smaller.
/// For AF it means r_X / r_Y is nondecreasing. FR and AF are checked on a
/// sampling of the whole window [left, last grid point], since the averaged
/// orders depend on r before the first grid point too.
struct OrderReport {
  OrderKind kind = OrderKind::FR;
  Direction direction = Direction::Neither;
  /// First time where X <= Y fails.
  std::optional<double> witness_xy;
  /// First time where Y <= X fails.
  std::optional<double> witness_yx;
  std::vector<double> grid;

  bool x_le_y() const { return direction == Direction::XleY || direction == Direction::Both; }
  bool y_le_x() const { return direction == Direction::YleX || direction == Direction::Both; }
};

/// Throws MixedSupports when the two models start at different times and
/// DivergentFunctional for HFR/HAI when a harmonic mean diverges on the grid.
OrderReport check_order(const HazardModel& x, const HazardModel& y, OrderKind kind,
                        std::span<const double> grid, double tol = kOrderTolerance);

/// Several kinds sharing one evaluation of both profiles.
std::vector<OrderReport> check_orders(const HazardModel& x, const HazardModel& y,
                                      std::span<const OrderKind> kinds,
                                      std::span<const double> grid, double tol = kOrderTolerance);

/// GAI verdict from ln(r_X/r_Y)(t) against its running mean, integrated
/// directly rather than through the two geometric means.
OrderReport gai_order_integral_form(const HazardModel& x, const HazardModel& y,
                                    std::span<const double> grid, double tol = kOrderTolerance);

struct ImplicationCheck {
  std::string name;
  /// XleY or YleX: which orientation the premise was tested in.
  Direction orientation = Direction::XleY;
  bool premise = false;
  bool conclusion = false;
  bool biconditional = false;
  bool skipped = false;
  std::optional<double> witness;

  bool violated() const {
    if (skipped) return false;
    return biconditional ? premise != conclusion : premise && !conclusion;
  }
};

struct LatticeReport {
  std::vector<ImplicationCheck> checks;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
};

/// FR => {AFR, GFR, HFR}, AF => GAI and AFR <=> ST, in both orientations.
/// Harmonic checks are skipped when a harmonic mean diverges.
LatticeReport verify_implications(const HazardModel& x, const HazardModel& y,
                                  std::span<const double> grid, double tol = kOrderTolerance);

}  // namespace aging
