#pragma once

#include <span>
#include <vector>

namespace netpolicy {

/// Mean and sample standard deviation (n - 1 denominator; 0 for one value).
struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> values);

/// Linear-interpolation quantile (the "type 7" rule), prob in [0, 1].
double quantile(std::vector<double> values, double prob);

}  // namespace netpolicy
