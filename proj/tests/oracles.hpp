#pragma once

// Reference values computed independently of the library: closed forms coded
// from the survival functions, and a tanh-sinh quadrature that shares nothing
// with the library's graded Simpson rule.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracle {

/// Double-exponential quadrature on [a, b]. Abscissae are generated as
/// distances from the nearer endpoint so integrable endpoint singularities
/// are never sampled exactly.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double width = b - a;
  const auto term = [&](double x) {
    const double s = half_pi * std::sinh(x);
    const double c = std::cosh(s);
    const double w = half_pi * std::cosh(x) / (c * c);
    const double d = width / (1.0 + std::exp(2.0 * s));  // distance from the endpoint
    if (!(d > 0.0) || w < 1e-300) return 0.0;
    return w * (f(a + d) + f(b - d));
  };
  double h = 1.0;
  double sum = half_pi * f(0.5 * (a + b));
  for (int k = 1; k * h < 6.5; ++k) sum += term(k * h);
  double prev = sum * h * 0.5 * width;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    for (int k = 1; k * h < 6.5; k += 2) sum += term(k * h);
    const double est = sum * h * 0.5 * width;
    if (level > 2 && std::abs(est - prev) <= tol * std::abs(est)) return est;
    prev = est;
  }
  return prev;
}

struct Means {
  double r, a, g, h;
  double l() const { return r / a; }
  double lg() const { return r / g; }
  double lh() const { return r / h; }
};

/// Averages over [lo, t] of r, ln r, 1/r by tanh-sinh.
inline Means numeric_means(const std::function<double(double)>& r, double lo, double t) {
  const double len = t - lo;
  const double ia = tanh_sinh(r, lo, t);
  const double ig = tanh_sinh([&](double u) { return std::log(r(u)); }, lo, t);
  const double ih = tanh_sinh([&](double u) { return 1.0 / r(u); }, lo, t);
  return {r(t), ia / len, std::exp(ig / len), len / ih};
}

// Closed forms. Each family is written from its cumulative hazard and the
// antiderivatives of ln r and 1/r, independently of the library's oracle.

inline Means exponential(double lambda, double) { return {lambda, lambda, lambda, lambda}; }

// r = a b t^(b-1), S = exp(-a t^b)
inline Means weibull(double alpha, double beta, double t) {
  const double r = alpha * beta * std::pow(t, beta - 1.0);
  const double a = alpha * std::pow(t, beta) / t;
  // int_0^t ln(ab) + (b-1) ln u = t ln(ab) + (b-1)(t ln t - t)
  const double mean_log = std::log(alpha * beta) + (beta - 1.0) * (std::log(t) - 1.0);
  // int_0^t u^(1-b)/(ab) = t^(2-b) / (ab(2-b)), finite only for b < 2
  const double h = beta < 2.0 ? alpha * beta * (2.0 - beta) * std::pow(t, beta - 1.0) : 0.0;
  return {r, a, std::exp(mean_log), h};
}

// r = l^2 t / (1 + l t)
inline Means erlang_like(double lambda, double t) {
  const double x = lambda * t;
  const double r = lambda * x / (1.0 + x);
  const double a = (x - std::log1p(x)) / t;
  // int_0^t ln(l^2 u) - ln(1 + l u) du
  const double int_log = t * (std::log(lambda * x) - 1.0) - ((1.0 + x) * std::log1p(x) - x) / lambda;
  return {r, a, std::exp(int_log / t), 0.0};
}

// r = 1/(b - t) on [a, b)
inline Means uniform(double lo, double hi, double t) {
  const double len = t - lo;
  const double r = 1.0 / (hi - t);
  const double a = std::log((hi - lo) / (hi - t)) / len;
  // int ln(1/(b-u)) du = (b-u) ln(b-u) - (b-u) ... evaluated from lo to t
  const auto prim = [&](double u) { return (hi - u) * std::log(hi - u) - (hi - u); };
  const double int_log = prim(t) - prim(lo);
  const double int_inv = hi * len - 0.5 * (t * t - lo * lo);
  return {r, a, std::exp(int_log / len), len / int_inv};
}

// r = a + b t
inline Means rayleigh(double a0, double b, double t) {
  const double r = a0 + b * t;
  const double a = a0 + 0.5 * b * t;
  const auto prim_log = [&](double u) {
    const double v = a0 + b * u;
    return (v * std::log(v) - v) / b;
  };
  const double int_log = a0 > 0.0 ? prim_log(t) - prim_log(0.0) : t * (std::log(b * t) - 1.0);
  const double h = a0 > 0.0 ? b * t / std::log1p(b * t / a0) : 0.0;
  return {r, a, std::exp(int_log / t), h};
}

// r = a / t on [k, inf)
inline Means pareto(double a0, double k, double t) {
  const double len = t - k;
  const double r = a0 / t;
  const double a = a0 * std::log(t / k) / len;
  const auto prim_log = [&](double u) { return u * std::log(a0) - (u * std::log(u) - u); };
  const double int_log = prim_log(t) - prim_log(k);
  const double int_inv = (t * t - k * k) / (2.0 * a0);
  return {r, a, std::exp(int_log / len), len / int_inv};
}

// r = exp((t - a)/b) / b
inline Means tlw(double a0, double b, double t) {
  const double r = std::exp((t - a0) / b) / b;
  const double a = std::exp(-a0 / b) * std::expm1(t / b) / t;
  const double mean_log = -std::log(b) + (0.5 * t - a0) / b;
  const double int_inv = b * b * std::exp(a0 / b) * (-std::expm1(-t / b));
  return {r, a, std::exp(mean_log), t / int_inv};
}

}  // namespace oracle
