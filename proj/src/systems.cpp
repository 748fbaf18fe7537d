#include "aging/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aging {

SeriesSystem series(std::vector<HazardModel> components) {
  if (components.empty()) throw Error(ErrorCode::InvalidParameter, "series system needs components");
  const double left = components.front().support_left();
  for (const auto& c : components) {
    if (c.support_left() != left) {
      throw Error(ErrorCode::MixedSupports,
                  "components " + components.front().describe() + " and " + c.describe() +
                      " start at different times");
    }
  }
  HazardModel composite = HazardModel::composite(components);
  return {std::move(components), std::move(composite)};
}

bool SeriesBoundReport::all_hold() const { return violations() == 0; }

std::size_t SeriesBoundReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SeriesBoundRow& r) { return !r.ok(); }));
}

bool SeriesBoundReport::harmonic_skipped() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SeriesBoundRow& r) { return r.harmonic_skipped; });
}

SeriesBoundReport verify_series_bounds(const SeriesSystem& system, std::span<const double> grid,
                                       double tol) {
  const std::size_t n = system.components.size();
  const auto sys = profile(system.composite, grid);
  std::vector<AgingProfile> parts;
  parts.reserve(n);
  for (const auto& c : system.components) parts.push_back(profile(c, grid));

  const auto ge = [tol](double a, double b) { return a >= b - tol * std::abs(b); };
  const auto le = [tol](double a, double b) { return a <= b + tol * std::abs(b); };

  SeriesBoundReport report;
  report.components = n;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& s = sys.rows[i];
    std::vector<double> a_i, g_i, h_i, r_i, lg_i;
    bool any_divergent = (s.flags & kFlagDivergent) != 0;
    for (const auto& p : parts) {
      const auto& row = p.rows[i];
      a_i.push_back(row.afr);
      g_i.push_back(row.gfr);
      h_i.push_back(row.hfr);
      r_i.push_back(row.r);
      lg_i.push_back(row.gai);
      any_divergent |= (row.flags & kFlagDivergent) != 0;
    }
    const double dn = static_cast<double>(n);

    SeriesBoundRow out;
    out.t = s.t;
    out.a_sys = s.afr;
    out.a_sum = dn * discrete_mean(a_i, DiscreteMean::Arithmetic);
    out.g_sys = s.gfr;
    out.g_dgm = dn * discrete_mean(g_i, DiscreteMean::Geometric);

    out.gai_upper = le(s.gai, *std::max_element(lg_i.begin(), lg_i.end()));
    out.gfr_lower = ge(s.gfr, out.g_dgm);
    out.superadditive = ge(s.gfr, std::accumulate(g_i.begin(), g_i.end(), 0.0));

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      lo = std::min(lo, r_i[k] / g_i[k]);
      hi = std::max(hi, r_i[k] / g_i[k]);
    }
    const double mediant = std::accumulate(r_i.begin(), r_i.end(), 0.0) /
                           std::accumulate(g_i.begin(), g_i.end(), 0.0);
    out.mediant = ge(mediant, lo) && le(mediant, hi);

    if (any_divergent) {
      out.harmonic_skipped = true;
    } else {
      out.h_sys = s.hfr;
      out.h_dhm = dn * discrete_mean(h_i, DiscreteMean::Harmonic);
      out.hfr_lower = ge(s.hfr, out.h_dhm);
      const bool additive = std::abs(out.a_sys - out.a_sum) <= tol * std::abs(out.a_sum);
      out.chain = additive && ge(s.afr, s.gfr) && ge(s.gfr, s.hfr) && ge(s.hfr, out.h_dhm);
    }
    report.rows.push_back(out);
  }
  return report;
}

}  // namespace aging
