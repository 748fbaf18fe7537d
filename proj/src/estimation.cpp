#include "aging/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "csv.hpp"

namespace aging {

std::size_t SurvivalSample::events() const {
  return static_cast<std::size_t>(std::count_if(
      observations.begin(), observations.end(), [](const Observation& o) { return o.event; }));
}

double SurvivalSample::min_time() const {
  return std::min_element(observations.begin(), observations.end(),
                          [](const auto& a, const auto& b) { return a.time < b.time; })
      ->time;
}

double SurvivalSample::max_time() const {
  return std::max_element(observations.begin(), observations.end(),
                          [](const auto& a, const auto& b) { return a.time < b.time; })
      ->time;
}

SurvivalSample make_sample(std::vector<Observation> observations) {
  if (observations.empty()) throw Error(ErrorCode::EmptyData, "sample has no observations");
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const double t = observations[i].time;
    if (!(std::isfinite(t) && t > 0.0)) {
      throw ParseError(i + 1, "time must be finite and positive");
    }
  }
  SurvivalSample sample{std::move(observations)};
  if (sample.events() == 0) throw Error(ErrorCode::AllCensored, "sample has no failures");
  return sample;
}

SurvivalSample ingest(std::string_view csv_text) {
  const auto rows = csv::lines(csv_text);
  if (rows.empty()) throw Error(ErrorCode::EmptyData, "input is empty");
  const auto header = csv::split(rows.front());
  if (header.size() != 2 || header[0] != "time" || header[1] != "status") {
    throw ParseError(0, "header must be 'time,status'");
  }
  std::vector<Observation> obs;
  for (std::size_t row = 1; row < rows.size(); ++row) {
    if (rows[row].empty()) continue;
    const auto fields = csv::split(rows[row]);
    if (fields.size() != 2) throw ParseError(row, "expected 2 fields");
    double time = 0.0;
    if (!csv::parse_double(fields[0], time) || !std::isfinite(time) || time <= 0.0) {
      throw ParseError(row, "time '" + fields[0] + "' must be a positive number");
    }
    double status = 0.0;
    if (!csv::parse_double(fields[1], status) || (status != 0.0 && status != 1.0)) {
      throw ParseError(row, "status '" + fields[1] + "' must be 0 or 1");
    }
    obs.push_back({time, status == 1.0});
  }
  if (obs.empty()) throw Error(ErrorCode::EmptyData, "input has a header but no rows");
  return make_sample(std::move(obs));
}

NelsonAalen nelson_aalen(const SurvivalSample& sample) {
  std::vector<Observation> sorted = sample.observations;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.time < b.time; });
  NelsonAalen na;
  std::size_t at_risk = sorted.size();
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::size_t deaths = 0;
    while (j < sorted.size() && sorted[j].time == sorted[i].time) {
      deaths += sorted[j].event ? 1 : 0;
      ++j;
    }
    if (deaths > 0) {
      na.times.push_back(sorted[i].time);
      na.increments.push_back(static_cast<double>(deaths) / static_cast<double>(at_risk));
      na.events.push_back(static_cast<double>(deaths));
    }
    at_risk -= j - i;
    i = j;
  }
  return na;
}

double epanechnikov(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }

namespace {

// Integral of the Epanechnikov kernel from -1 to v.
double kernel_cdf(double v) {
  v = std::clamp(v, -1.0, 1.0);
  return 0.5 + 0.75 * (v - v * v * v / 3.0);
}

}  // namespace

double smooth_increments(std::span<const double> times, std::span<const double> increments,
                         double bandwidth, double t, double lo, double hi) {
  const auto first = std::lower_bound(times.begin(), times.end(), t - bandwidth);
  double sum = 0.0;
  for (auto it = first; it != times.end() && *it <= t + bandwidth; ++it) {
    const auto i = static_cast<std::size_t>(it - times.begin());
    sum += epanechnikov((t - *it) / bandwidth) / bandwidth * increments[i];
  }
  if (hi > lo) {
    const double mass = kernel_cdf((t - lo) / bandwidth) - kernel_cdf((t - hi) / bandwidth);
    if (mass > 0.0) sum /= mass;
  }
  return sum;
}

double auto_bandwidth(const SurvivalSample& sample) {
  std::vector<double> times;
  for (const auto& o : sample.observations) {
    if (o.event) times.push_back(o.time);
  }
  const double n = static_cast<double>(times.size());
  if (times.size() < 2) {
    throw Error(ErrorCode::BandwidthTooSmall, "automatic bandwidth needs at least two events");
  }
  const double mean = std::accumulate(times.begin(), times.end(), 0.0) / n;
  double ss = 0.0;
  for (double t : times) ss += (t - mean) * (t - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw Error(ErrorCode::BandwidthTooSmall, "event times have zero spread");
  return 1.06 * sd * std::pow(n, -0.2);
}

namespace {

struct Prepared {
  NelsonAalen na;
  std::vector<double> event_prefix;  // cumulative event counts for window tests
  double bandwidth;
  double lo;
  double hi;
};

Prepared prepare(const SurvivalSample& sample, std::optional<double> bandwidth,
                 std::span<const double> grid) {
  Prepared p{nelson_aalen(sample), {}, 0.0, sample.min_time(), sample.max_time()};
  if (bandwidth && !(std::isfinite(*bandwidth) && *bandwidth > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "bandwidth must be positive");
  }
  p.bandwidth = bandwidth ? *bandwidth : auto_bandwidth(sample);
  if (grid.empty()) throw Error(ErrorCode::InvalidParameter, "estimation grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= p.lo && grid[i] <= p.hi)) {
      throw Error(ErrorCode::OutOfSupport, "estimation grid point " + std::to_string(grid[i]) +
                                               " outside observed range");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidParameter, "estimation grid must be strictly increasing");
    }
  }
  p.event_prefix.resize(p.na.events.size() + 1, 0.0);
  std::partial_sum(p.na.events.begin(), p.na.events.end(), p.event_prefix.begin() + 1);

  double best = 0.0;
  for (double t : grid) {
    const auto a = std::lower_bound(p.na.times.begin(), p.na.times.end(), t - p.bandwidth);
    const auto b = std::upper_bound(p.na.times.begin(), p.na.times.end(), t + p.bandwidth);
    best = std::max(best, p.event_prefix[static_cast<std::size_t>(b - p.na.times.begin())] -
                              p.event_prefix[static_cast<std::size_t>(a - p.na.times.begin())]);
  }
  if (best < 3.0) {
    throw Error(ErrorCode::BandwidthTooSmall,
                "bandwidth " + std::to_string(p.bandwidth) + " leaves fewer than 3 events in every window");
  }
  return p;
}

HazardEstimate make_estimate(const Prepared& p, std::span<const double> grid) {
  HazardEstimate est;
  est.grid.assign(grid.begin(), grid.end());
  est.rhat.resize(grid.size());
  est.clamped.resize(grid.size());
  est.bandwidth = p.bandwidth;
  return est;
}

void finish(HazardEstimate& est) {
  for (std::size_t i = 0; i < est.rhat.size(); ++i) {
    if (!(est.rhat[i] > est.floor)) {
      est.rhat[i] = est.floor;
      est.clamped[i] = true;
    }
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "grid size must be at least 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

HazardEstimate kernel_hazard_serial(const SurvivalSample& sample, std::optional<double> bandwidth,
                                    std::span<const double> grid) {
  const auto p = prepare(sample, bandwidth, grid);
  auto est = make_estimate(p, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    est.rhat[i] = smooth_increments(p.na.times, p.na.increments, p.bandwidth, grid[i], p.lo, p.hi);
  }
  finish(est);
  return est;
}

HazardEstimate kernel_hazard(const SurvivalSample& sample, std::optional<double> bandwidth,
                             std::span<const double> grid) {
  const auto p = prepare(sample, bandwidth, grid);
  auto est = make_estimate(p, grid);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    est.rhat[i] = smooth_increments(p.na.times, p.na.increments, p.bandwidth, grid[i], p.lo, p.hi);
  }
  finish(est);
  return est;
}

HazardEstimate kernel_hazard(const SurvivalSample& sample, std::optional<double> bandwidth,
                             std::size_t grid_size) {
  const auto grid = linspace(sample.min_time(), sample.max_time(), grid_size);
  return kernel_hazard(sample, bandwidth, grid);
}

AgingProfile estimated_profile(const HazardEstimate& est) {
  AgingProfile prof;
  const std::size_t n = est.grid.size();
  prof.rows.resize(n);
  double int_r = 0.0;
  double int_log = 0.0;
  double int_inv = 0.0;
  double lo = est.rhat.empty() ? 0.0 : est.rhat.front();
  double hi = lo;
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = prof.rows[i];
    const double r = est.rhat[i];
    row.t = est.grid[i];
    row.r = r;
    if (i == 0) {
      row.afr = row.gfr = row.hfr = r;
    } else {
      const double h = est.grid[i] - est.grid[i - 1];
      const double r0 = est.rhat[i - 1];
      int_r += 0.5 * h * (r0 + r);
      int_log += 0.5 * h * (std::log(r0) + std::log(r));
      int_inv += 0.5 * h * (1.0 / r0 + 1.0 / r);
      const double span = est.grid[i] - est.grid.front();
      row.afr = int_r / span;
      row.gfr = std::exp(int_log / span);
      row.hfr = span / int_inv;
    }
    row.ai = r / row.afr;
    row.gai = r / row.gfr;
    row.hai = r / row.hfr;
    if (est.clamped[i]) row.flags |= kFlagClamped;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    row.r_min = lo;
    row.r_max = hi;
  }
  return prof;
}

}  // namespace aging
