// Closed-form collinearity counts, the heuristic solution-count estimate,
// parallel-CDF transforms, and shifted-exponential runtime fitting.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "ntil/cdf.hpp"

namespace ntil {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collinear triples of G_n in exact integer arithmetic:
//   2 * sum_{a,b=1}^{n-1} (n-a)(n-b) gcd(a,b) - n^2(n^2-1)/6.
std::int64_t triple_count_formula(int n);

// Probability q_n that a uniformly random point triple is collinear.
long double collinear_triple_probability(int n);

// ln C(n, k) with C(n, k) = binom(n^2, k) (1 - q_n)^binom(k,3), evaluated in
// log space with log-gamma binomials. Throws for k < 0 or k > n^2.
double heuristic_count_log(int n, std::int64_t k);

// Leading coefficient of ln C(n, lambda*n) in units of n log n:
// lambda (pi^2 - 3 lambda^2) / pi^2. Changes sign at lambda_critical().
double heuristic_leading_coefficient(double lambda);
double lambda_critical();  // pi / sqrt(3)

// First-success-of-M transform F_M = 1 - (1 - F)^M.
double cdf_transform_value(double f, int m);

// The transform applied at every step of an empirical CDF, as (t, F_M(t))
// sample pairs (duplicate times collapsed to the final step height).
std::vector<std::pair<double, double>> transformed_samples(const EmpiricalCdf& cdf, int m);

struct ShiftedExpFit {
  double t0 = 0.0;  // threshold
  double t1 = 0.0;  // delay scale
  int m = 1;        // parallelism the fit refers to
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Least-squares line through (t, -log(1 - F_M(t))) over the fit window
// (default: every sample with 0 < F_M <= max_probability). Slope a and
// intercept b give t1 = M/a and t0 = -b/a; a <= 0 or fewer than two usable
// samples raise FitError.
ShiftedExpFit fit_shifted_exponential(std::span<const std::pair<double, double>> fm_samples,
                                      int m,
                                      std::optional<std::pair<double, double>> window = {},
                                      double max_probability = 0.98);

struct FitStats {
  double mean = 0.0;      // t0 + t1/M
  double quantile = 0.0;  // t0 + (t1/M) log(1/(1-p))
};

FitStats fit_statistics(const ShiftedExpFit& fit, double p);

double shifted_exp_cdf(const ShiftedExpFit& fit, double t);
double shifted_exp_quantile(const ShiftedExpFit& fit, double u);

}  // namespace ntil
