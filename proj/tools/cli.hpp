#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aging::cli {

/// Bad invocation: exit code 2, message names the flag.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& detail)
      : std::runtime_error(flag + ": " + detail) {}
};

enum class Spacing { Default, Linear, Log };

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::Default;
};

/// `start:stop:points[:log|:lin]`; throws UsageError against `flag`.
GridSpec parse_grid_spec(const std::string& text, const std::string& flag = "--grid");

/// Log spacing when requested, or by default when the support starts at 0.
std::vector<double> make_grid(const GridSpec& spec, double support_left);

/// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Base seed for `simulate` when neither --seed nor the config sets one:
/// AGING_SEED if set and numeric, else the library default.
std::uint64_t default_seed();

}  // namespace aging::cli
