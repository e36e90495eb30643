#pragma once

#include <vector>

namespace nlkpp {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log|y| against log x: the observed order of y in x.
double loglog_order(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nlkpp
