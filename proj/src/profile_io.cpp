#include "aging/profile_io.hpp"

#include <cmath>
#include <cstdio>

namespace aging {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

std::string profile_to_csv(const AgingProfile& profile) {
  std::string out = "t,r,afr,gfr,hfr,ai,gai,hai,flags\n";
  for (const auto& row : profile.rows) {
    const bool divergent = row.flags & kFlagDivergent;
    out += format_number(row.t) + ',' + format_number(row.r) + ',' + format_number(row.afr) + ',' +
           format_number(row.gfr) + ',' + format_number(row.hfr) + ',' + format_number(row.ai) +
           ',' + format_number(row.gai) + ',' + (divergent ? "" : format_number(row.hai)) + ',' +
           flags_to_string(row.flags) + '\n';
  }
  return out;
}

nlohmann::json profile_to_json(const AgingProfile& profile) {
  auto rows = nlohmann::json::array();
  for (const auto& row : profile.rows) {
    const bool divergent = row.flags & kFlagDivergent;
    rows.push_back({
        {"t", round12(row.t)},
        {"r", round12(row.r)},
        {"afr", round12(row.afr)},
        {"gfr", round12(row.gfr)},
        {"hfr", round12(row.hfr)},
        {"ai", round12(row.ai)},
        {"gai", round12(row.gai)},
        {"hai", divergent ? nlohmann::json(nullptr) : nlohmann::json(round12(row.hai))},
        {"flags", flags_to_string(row.flags)},
    });
  }
  return rows;
}

}  // namespace aging
