#include "ntil/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ntil {

std::int64_t triple_count_formula(int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  if (n > 20000) throw std::invalid_argument("triple count guarded to n <= 20000");
  // gcd sum accumulated exactly; the guard keeps everything inside 64 bits.
  std::int64_t sum = 0;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      sum += static_cast<std::int64_t>(n - a) * (n - b) * std::gcd(a, b);
    }
  }
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  return 2 * sum - n2 * (n2 - 1) / 6;
}

long double collinear_triple_probability(int n) {
  const std::int64_t t = triple_count_formula(n);
  const __int128 m = static_cast<__int128>(n) * n;
  const __int128 choose3 = m * (m - 1) * (m - 2) / 6;
  return static_cast<long double>(t) / static_cast<long double>(choose3);
}

namespace {

long double log_binomial(long double m, long double k) {
  return std::lgammal(m + 1) - std::lgammal(k + 1) - std::lgammal(m - k + 1);
}

}  // namespace

double heuristic_count_log(int n, std::int64_t k) {
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  if (k < 0 || k > n2) throw std::invalid_argument("subset size out of range");
  long double value = log_binomial(static_cast<long double>(n2), static_cast<long double>(k));
  if (k >= 3) {
    const long double k_choose_3 =
        static_cast<long double>(static_cast<__int128>(k) * (k - 1) * (k - 2) / 6);
    value += k_choose_3 * std::log1pl(-collinear_triple_probability(n));
  }
  return static_cast<double>(value);
}

double heuristic_leading_coefficient(double lambda) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return lambda * (pi2 - 3.0 * lambda * lambda) / pi2;
}

double lambda_critical() { return std::numbers::pi / std::numbers::sqrt3; }

double cdf_transform_value(double f, int m) {
  if (m < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (f < 0.0 || f > 1.0) throw std::invalid_argument("CDF value outside [0, 1]");
  // 1 - (1-F)^M, stable near F = 0.
  return -std::expm1(static_cast<double>(m) * std::log1p(-f));
}

std::vector<std::pair<double, double>> transformed_samples(const EmpiricalCdf& cdf, int m) {
  std::vector<std::pair<double, double>> samples;
  const std::size_t k = cdf.times.size();
  samples.reserve(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    if (idx + 1 < k && cdf.times[idx + 1] == cdf.times[idx]) continue;  // final step height
    const double f = static_cast<double>(idx + 1) / static_cast<double>(cdf.total_runs);
    samples.emplace_back(cdf.times[idx], cdf_transform_value(f, m));
  }
  return samples;
}

ShiftedExpFit fit_shifted_exponential(std::span<const std::pair<double, double>> fm_samples,
                                      int m, std::optional<std::pair<double, double>> window,
                                      double max_probability) {
  if (m < 1) throw std::invalid_argument("parallelism must be at least 1");
  std::vector<std::pair<double, double>> kept;
  for (const auto& [t, f] : fm_samples) {
    if (f <= 0.0 || f >= 1.0) continue;  // -log(1-F) undefined or uninformative
    if (window) {
      if (t < window->first || t > window->second) continue;
    } else if (f > max_probability) {
      continue;
    }
    kept.emplace_back(t, -std::log1p(-f));
  }
  if (kept.size() < 2) throw FitError("need at least two usable samples inside the fit window");

  double st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& [t, y] : kept) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double count = static_cast<double>(kept.size());
  const double denom = count * stt - st * st;
  if (denom == 0.0) throw FitError("degenerate fit: all sample times coincide");
  const double a = (count * sty - st * sy) / denom;
  const double b = (sy - a * st) / count;
  if (a <= 0.0) throw FitError("non-positive fitted slope");

  ShiftedExpFit fit;
  fit.m = m;
  fit.t1 = static_cast<double>(m) / a;
  fit.t0 = std::max(0.0, -b / a);
  fit.window_lo = kept.front().first;
  fit.window_hi = kept.back().first;
  for (const auto& [t, y] : kept) {
    fit.window_lo = std::min(fit.window_lo, t);
    fit.window_hi = std::max(fit.window_hi, t);
  }
  return fit;
}

FitStats fit_statistics(const ShiftedExpFit& fit, double p) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("quantile probability must be in (0, 1)");
  FitStats s;
  const double rate_scale = fit.t1 / static_cast<double>(fit.m);
  s.mean = fit.t0 + rate_scale;
  s.quantile = fit.t0 + rate_scale * std::log(1.0 / (1.0 - p));
  return s;
}

double shifted_exp_cdf(const ShiftedExpFit& fit, double t) {
  if (t <= fit.t0) return 0.0;
  return -std::expm1(-static_cast<double>(fit.m) * (t - fit.t0) / fit.t1);
}

double shifted_exp_quantile(const ShiftedExpFit& fit, double u) {
  if (u < 0.0 || u >= 1.0) throw std::invalid_argument("quantile argument must be in [0, 1)");
  return fit.t0 - fit.t1 / static_cast<double>(fit.m) * std::log1p(-u);
}

}  // namespace ntil
