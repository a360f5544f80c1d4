#pragma once

#include <span>
#include <vector>

namespace qmac {

/// Quantile of an ascending-sorted sample using linear interpolation between
/// order statistics (position q * (size - 1)).
double quantile_sorted(std::span<const double> sorted, double q);

/// Box-plot summary with Tukey whiskers: each whisker reaches the most extreme
/// datum within 1.5 * IQR of its quartile; anything beyond is an outlier.
struct BoxSummary {
  double min = 0.0;
  double first = 0.0;
  double median = 0.0;
  double third = 0.0;
  double max = 0.0;
  double lower_whisker = 0.0;
  double upper_whisker = 0.0;
  double mean = 0.0;
  std::vector<double> outliers;

  double iqr() const { return third - first; }
};

/// Throws std::invalid_argument on an empty sample.
BoxSummary box_summary(std::vector<double> sample);

}  // namespace qmac
