#include "ntil/cdf.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntil {

double EmpiricalCdf::value(double t) const {
  if (total_runs == 0) return 0.0;
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<double>(it - times.begin()) / static_cast<double>(total_runs);
}

EmpiricalCdf make_empirical_cdf(std::vector<double> completion_times, std::uint64_t total_runs,
                                double cutoff) {
  if (cutoff <= 0.0) throw std::invalid_argument("cutoff must be positive");
  if (completion_times.size() > total_runs) {
    throw std::invalid_argument("more completions than runs");
  }
  std::sort(completion_times.begin(), completion_times.end());
  if (!completion_times.empty() && completion_times.back() > cutoff) {
    throw std::invalid_argument("completion time beyond the cutoff");
  }
  EmpiricalCdf cdf;
  cdf.times = std::move(completion_times);
  cdf.total_runs = total_runs;
  cdf.cutoff = cutoff;
  return cdf;
}

}  // namespace ntil
