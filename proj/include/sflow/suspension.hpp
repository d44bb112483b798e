#pragma once

#include <cstdint>

#include "sflow/bit_sequence.hpp"
#include "sflow/roof.hpp"

namespace sflow {

inline constexpr std::int64_t kDefaultMaxCrossings = 1'000'000;
inline constexpr double kHeightTolerance = 1e-9;

/// A point (x, t) of the suspension space, canonical when 0 <= t < f(x) (or (*, 0)).
struct FlowPoint {
  BitSequence base = singularity();
  double height = 0.0;

  friend bool operator==(const FlowPoint&, const FlowPoint&) = default;
};

FlowPoint singular_flow_point();

/// Canonical representative of the time-t image of p.
FlowPoint flow(const FlowPoint& p, double t, const RoofFunction& f,
               std::int64_t max_crossings = kDefaultMaxCrossings);

/// Canonical representative of (x, t) for any real t.
FlowPoint make_flow_point(const BitSequence& x, double t, const RoofFunction& f,
                          std::int64_t max_crossings = kDefaultMaxCrossings);

/// u = t / f(x), with u = 0 at (*, 0).
double normalized_height(const FlowPoint& p, const RoofFunction& f);

/// Equality in the quotient space, where (x, f(x)) ~ (sigma x, 0), up to tol in height.
bool same_point(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, double tol = kHeightTolerance);

/// Unit-roof suspension of the time-1 map of the flow, with its factor map to the flow.
class UnitRoofExtension {
 public:
  struct Point {
    FlowPoint base;
    double s = 0.0;  // in [0, 1)
  };

  explicit UnitRoofExtension(RoofFunction f, std::int64_t max_crossings = kDefaultMaxCrossings);

  /// pi(x, s) = flow(x, s).
  FlowPoint project(const Point& q) const;
  /// (x, s) -> (phi_1^{floor(s + t)} x, frac(s + t)).
  Point flow(const Point& q, double t) const;
  const RoofFunction& roof() const { return f_; }

 private:
  RoofFunction f_;
  std::int64_t max_crossings_;
};

/// Requires an admissible roof.
UnitRoofExtension unit_roof_extension(const RoofFunction& f);

}  // namespace sflow
