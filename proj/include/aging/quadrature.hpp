#pragma once

// Adaptive Simpson quadrature on a mesh graded geometrically toward the left
// endpoint. The integrands handled here (r, ln r, 1/r) can be singular at the
// left end of the support; dyadic grading turns a power-law or log singularity
// into a sequence of smooth level pieces whose contributions decay
// geometrically, so the remainder can be extrapolated from the observed ratio.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "aging/error.hpp"

namespace aging {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double grading = 0.5;
  int initial_panels = 32;  // outermost level
  int level_panels = 8;     // each inner level
  std::size_t max_panels = std::size_t{1} << 20;
  int max_depth = 40;
  // A run of `divergence_run` level-to-level ratios above this marks the
  // integral as divergent, as does growth past `divergence_cap` times the
  // outermost level.
  double divergence_ratio = 0.99;
  int divergence_run = 5;
  int min_levels = 8;
  double divergence_cap = 1e12;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  std::size_t panels = 0;
  int levels = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  double tol;
  std::size_t panels = 0;
  std::size_t max_panels;
  int max_depth;
  double error = 0.0;
  double abs_sum = 0.0;
  bool exhausted = false;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps || !(m > a && b > m)) {
      ++panels;
      if (panels > max_panels || (depth <= 0 && std::abs(delta) > 15.0 * eps)) exhausted = true;
      error += std::abs(delta);
      abs_sum += (m - a) / 6.0 * (std::abs(fa) + 4.0 * std::abs(flm) + std::abs(fm)) +
                 (b - m) / 6.0 * (std::abs(fm) + 4.0 * std::abs(frm) + std::abs(fb));
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }

  // Composite adaptive Simpson over [a, b] split into `count` panels.
  // Returns the integral; `abs_out` receives the matching integral of |f|.
  double level(double a, double b, int count, double scale, double& abs_out) {
    const double h = (b - a) / count;
    // Coarse pass to size the local tolerance.
    double coarse_abs = 0.0;
    double prev_x = a;
    double prev_f = f(a);
    for (int i = 1; i <= count; ++i) {
      const double x = i == count ? b : a + i * h;
      const double fx = f(x);
      coarse_abs += 0.5 * (std::abs(prev_f) + std::abs(fx)) * (x - prev_x);
      prev_x = x;
      prev_f = fx;
    }
    const double eps = tol * std::max(coarse_abs, scale) / count;
    const double abs_before = abs_sum;
    double sum = 0.0;
    double fa = f(a);
    for (int i = 0; i < count; ++i) {
      const double x0 = i == 0 ? a : a + i * h;
      const double x1 = i + 1 == count ? b : a + (i + 1) * h;
      const double fm = f(0.5 * (x0 + x1));
      const double fb = f(x1);
      const double whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
      sum += recurse(x0, x1, fa, fm, fb, whole, eps, max_depth);
      fa = fb;
    }
    abs_out = abs_sum - abs_before;
    return sum;
  }
};

}  // namespace detail

/// Integrates f over [lo, hi]. f is only evaluated strictly right of lo.
/// Throws QuadratureFailure when the panel cap is exhausted.
template <class F>
QuadratureResult integrate_graded(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
  QuadratureResult result;
  if (!(hi > lo)) return result;
  detail::SimpsonState<F> state{f, opts.rel_tol, 0, opts.max_panels, opts.max_depth};

  const double length = hi - lo;
  double total = 0.0;
  double abs_total = 0.0;
  double prev_abs = 0.0;
  double outer_abs = 0.0;
  int high_ratio_run = 0;
  int converged_run = 0;
  double width = length;  // width of [lo, upper end of current level]

  for (int k = 0;; ++k) {
    const double inner = width * opts.grading;
    const double a = lo + inner;
    const double b = k == 0 ? hi : lo + width;
    if (!(a > lo) || !(b > a)) {
      // Remaining piece is below floating resolution of lo.
      break;
    }
    double level_abs = 0.0;
    const double c = state.level(a, b, k == 0 ? opts.initial_panels : opts.level_panels, abs_total,
                                 level_abs);
    if (state.exhausted) {
      throw Error(ErrorCode::QuadratureFailure,
                  "tolerance unattainable within " + std::to_string(opts.max_panels) + " panels");
    }
    total += c;
    abs_total += level_abs;
    result.levels = k + 1;
    width = inner;

    if (k == 0) outer_abs = level_abs;
    if (!std::isfinite(total) || (outer_abs > 0.0 && abs_total > opts.divergence_cap * outer_abs)) {
      result.divergent = true;
      break;
    }
    if (k == 0) {
      prev_abs = level_abs;
      continue;
    }
    const double ratio = prev_abs > 0.0 ? level_abs / prev_abs : (level_abs > 0.0 ? 2.0 : 0.0);
    prev_abs = level_abs;

    high_ratio_run = ratio > opts.divergence_ratio ? high_ratio_run + 1 : 0;
    if (k + 1 >= opts.min_levels && high_ratio_run >= opts.divergence_run) {
      result.divergent = true;
      break;
    }
    if (ratio < opts.divergence_ratio) {
      const double tail_abs = level_abs * ratio / (1.0 - ratio);
      if (tail_abs <= 0.01 * opts.rel_tol * abs_total) {
        ++converged_run;
      } else {
        converged_run = 0;
      }
      if (converged_run >= 3 || level_abs == 0.0) {
        const double tail = c * ratio / (1.0 - ratio);
        total += tail;
        state.error += std::abs(tail);
        break;
      }
    } else {
      converged_run = 0;
    }
  }
  result.value = result.divergent ? std::numeric_limits<double>::infinity() : total;
  result.error = state.error;
  result.panels = state.panels;
  return result;
}

}  // namespace aging
