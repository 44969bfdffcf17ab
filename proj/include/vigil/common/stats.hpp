#pragma once

#include <cstddef>
#include <span>

namespace vigil {

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // population
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Mean, population standard deviation, median, min and max of `values`.
/// Throws std::invalid_argument when `values` is empty.
SummaryStats summarize(std::span<const double> values);

double mean_of(std::span<const double> values);
double population_std(std::span<const double> values);
double median_of(std::span<const double> values);

}  // namespace vigil
