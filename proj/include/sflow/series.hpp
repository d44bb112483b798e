#pragma once

#include <cmath>
#include <cstdint>

#include "sflow/roof.hpp"

namespace sflow {

struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t direct_terms = 0;
  bool tail_integrated = false;
};

inline constexpr std::int64_t kDirectTermLimit = std::int64_t{1} << 16;

/// sum_{k >= 1} g(k) e^{-beta k}, beta > 0. Direct summation stops once the tail
/// bound drops below rel_tol times the partial sum; past direct_limit terms the
/// remainder is evaluated by Euler-Maclaurin with adaptive quadrature.
SeriesValue weighted_gap_series(const GapProfile& g, double beta, double rel_tol,
                                std::int64_t direct_limit = kDirectTermLimit);

/// sum_{k = first}^{last} g(k) for 0 <= first, last finite (empty range gives 0).
SeriesValue gap_range_sum(const GapProfile& g, std::int64_t first, std::int64_t last);

/// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace sflow
