#pragma once

#include <span>
#include <vector>

#include "aging/functionals.hpp"

namespace aging {

/// Independent components in series; the system hazard is the sum.
struct SeriesSystem {
  std::vector<HazardModel> components;
  HazardModel composite;
};

/// Throws MixedSupports unless every component starts at the same support
/// left end; InvalidParameter for an empty list.
SeriesSystem series(std::vector<HazardModel> components);

/// Per-grid-point outcome of the series-system bound families.
struct SeriesBoundRow {
  double t = 0.0;
  bool gai_upper = false;      // LG_sys <= max_i LG_i
  bool gfr_lower = false;      // G_sys >= n DGM{G_i}
  bool hfr_lower = false;      // H_sys >= n DHM{H_i}
  bool chain = false;          // n DAM{A_i} = A_sys >= G_sys >= H_sys >= n DHM{H_i}
  bool superadditive = false;  // G(sum r_i) >= sum G(r_i)
  bool mediant = false;        // min r_i/G_i <= sum r_i / sum G_i <= max r_i/G_i
  bool harmonic_skipped = false;

  // Values behind the checks.
  double a_sys = 0.0;
  double a_sum = 0.0;
  double g_sys = 0.0;
  double g_dgm = 0.0;
  double h_sys = 0.0;
  double h_dhm = 0.0;

  bool ok() const {
    return gai_upper && gfr_lower && superadditive && mediant &&
           (harmonic_skipped || (hfr_lower && chain));
  }
};

struct SeriesBoundReport {
  std::size_t components = 0;
  std::vector<SeriesBoundRow> rows;

  bool all_hold() const;
  std::size_t violations() const;
  bool harmonic_skipped() const;
};

/// Evaluates the bound families at each grid point. When a component's
/// harmonic mean diverges the two harmonic families are skipped and flagged.
SeriesBoundReport verify_series_bounds(const SeriesSystem& system, std::span<const double> grid,
                                       double tol = 1e-8);

}  // namespace aging
