#include "qmac/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmac {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxSummary box_summary(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("box summary of an empty sample");
  std::sort(sample.begin(), sample.end());
  BoxSummary b;
  b.min = sample.front();
  b.max = sample.back();
  b.first = quantile_sorted(sample, 0.25);
  b.median = quantile_sorted(sample, 0.5);
  b.third = quantile_sorted(sample, 0.75);
  b.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
  const double lo_fence = b.first - 1.5 * b.iqr();
  const double hi_fence = b.third + 1.5 * b.iqr();
  b.lower_whisker = b.first;
  b.upper_whisker = b.third;
  for (double x : sample) {
    if (x < lo_fence || x > hi_fence) {
      b.outliers.push_back(x);
      continue;
    }
    b.lower_whisker = std::min(b.lower_whisker, x);
    b.upper_whisker = std::max(b.upper_whisker, x);
  }
  return b;
}

}  // namespace qmac
