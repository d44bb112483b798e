#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sflow/roof.hpp"

namespace sflow {

inline constexpr double kDefaultSeriesTolerance = 1e-18;

/// -lambda log lambda - (1 - lambda) log(1 - lambda), with 0 log 0 = 0.
double shannon_binary(double lambda);

struct RoofIntegral {
  double value = 0.0;
  double truncation_bound = 0.0;
  std::int64_t direct_terms = 0;
  bool tail_integrated = false;
};

/// Integral of f(u) = g(k_u) against the Bernoulli(lambda) measure, lambda = P(x_n = 1):
/// g0 lambda + sum_{k >= 1} g(k) lambda (2 - lambda) (1 - lambda)^{2k - 1}.
/// tol is relative to the partial sum.
RoofIntegral roof_integral_bernoulli(double lambda, const GapProfile& g, double tol = kDefaultSeriesTolerance);

/// h_base / roof_integral.
double abramov(double h_base, double roof_integral);

enum class EntropyMethod { kClosedForm, kSeries, kWordCount, kSeparatedSets };
std::string to_string(EntropyMethod m);

struct EntropyReport {
  double value = 0.0;
  bool infinite = false;
  EntropyMethod method = EntropyMethod::kClosedForm;
  std::optional<double> error_bound;
  std::string flag;
};

/// Entropy of the flow measure induced by Bernoulli(lambda).
EntropyReport flow_entropy_bernoulli(double lambda, const GapProfile& g, double tol = kDefaultSeriesTolerance);

enum class LimitKind { kFinite, kZero, kDivergent };

struct ScanRow {
  double lambda = 0.0;
  double integral = 0.0;
  double entropy = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
  double error_bound = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  LimitKind limit_kind = LimitKind::kFinite;
  double target = 0.0;  // 1/(2l), 0 when l = inf, +inf when l = 0
  bool strictly_decreasing = false;
  bool strictly_increasing = false;
  bool errors_shrinking = false;
};

/// Rows for a strictly decreasing grid in (0, 1) with trend diagnostics toward the limit 1/(2l).
ScanResult singular_limit_scan(const GapProfile& g, const std::vector<double>& grid,
                               double tol = kDefaultSeriesTolerance);

/// 10^{-first}, 10^{-first-1}, ..., 10^{-last}.
std::vector<double> decade_grid(int first, int last);

struct BernoulliComponent {
  double lambda;
};
struct DiracAtSingularity {};

struct MeasureAtom {
  std::variant<BernoulliComponent, DiracAtSingularity> component;
  double weight;
};

/// Finite convex combination of flow measures induced by Bernoulli measures and the Dirac mass at (*, 0).
class FlowMeasureSpec {
 public:
  explicit FlowMeasureSpec(std::vector<MeasureAtom> atoms);

  static FlowMeasureSpec dirac();
  static FlowMeasureSpec bernoulli(double lambda);
  /// t a + (1 - t) b.
  static FlowMeasureSpec mix(const FlowMeasureSpec& a, const FlowMeasureSpec& b, double t);

  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  double singular_weight() const;
  /// Entropy of the normalized non-atomic part (0 when there is none).
  double base_part_entropy(const GapProfile& g, double tol = kDefaultSeriesTolerance) const;

 private:
  std::vector<MeasureAtom> atoms_;
};

/// h (1 - w) + w / (2l), w the mass of the singular point.
double sex_entropy_formula(const FlowMeasureSpec& nu, double l, double h_of_base_part);

}  // namespace sflow
