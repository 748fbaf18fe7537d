#pragma once

#include <string>

#include <json.hpp>

#include "aging/functionals.hpp"

namespace aging {

/// 12 significant digits, `%.12g` style.
std::string format_number(double x);

/// x rounded to 12 significant digits, so that JSON output (which prints the
/// shortest round-trip form) carries at most 12 digits.
double round12(double x);

/// Header `t,r,afr,gfr,hfr,ai,gai,hai,flags`. A divergent row keeps hfr = 0
/// and leaves hai empty; the Divergent flag says why.
std::string profile_to_csv(const AgingProfile& profile);

/// Array of row objects with the CSV column names; divergent hai is null.
nlohmann::json profile_to_json(const AgingProfile& profile);

}  // namespace aging
