#pragma once

#include <cstdint>
#include <vector>

namespace ntil {

// Right-continuous step estimate of a runtime distribution. Censored runs
// contribute to total_runs but not to times, so value() stays an honest
// sub-distribution under censoring.
struct EmpiricalCdf {
  std::vector<double> times;  // sorted ascending, all <= cutoff
  std::uint64_t total_runs = 0;
  double cutoff = 0.0;

  // F(t) = #(completion times <= t) / total_runs.
  double value(double t) const;
};

// Sorts and validates; times above cutoff are rejected.
EmpiricalCdf make_empirical_cdf(std::vector<double> completion_times,
                                std::uint64_t total_runs, double cutoff);

}  // namespace ntil
