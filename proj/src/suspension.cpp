#include "sflow/suspension.hpp"

#include <cmath>

#include "sflow/error.hpp"
#include "sflow/series.hpp"

namespace sflow {

FlowPoint singular_flow_point() { return FlowPoint{singularity(), 0.0}; }

FlowPoint flow(const FlowPoint& p, double t, const RoofFunction& f, std::int64_t max_crossings) {
  if (!std::isfinite(t) || !std::isfinite(p.height)) throw DomainError("flow time and height must be finite");
  if (is_singularity(p.base)) {
    if (!f.is_constant()) return singular_flow_point();
  }
  if (f.is_constant()) {
    const double c = f.constant_value();
    const double total = p.height + t;
    const double n = std::floor(total / c);
    if (std::abs(n) > 4.0e18) throw ResourceError("flow time exceeds coordinate range");
    if (std::abs(n) > static_cast<double>(max_crossings))
      throw ResourceError("flow needs more than " + std::to_string(max_crossings) + " roof crossings");
    double h = total - n * c;
    auto steps = static_cast<std::int64_t>(n);
    if (h < 0.0) h = 0.0;
    if (h >= c) {
      h = 0.0;
      ++steps;
    }
    return FlowPoint{p.base.shifted(steps), h};
  }

  BitSequence x = p.base;
  CompensatedSum h;
  h.add(p.height);
  h.add(t);
  double roof = f(x);
  std::int64_t crossings = 0;
  auto count = [&] {
    if (++crossings > max_crossings)
      throw ResourceError("flow needs more than " + std::to_string(max_crossings) + " roof crossings");
  };
  while (h.value() < 0.0) {
    x = x.shifted(-1);
    roof = f(x);
    h.add(roof);
    count();
  }
  while (h.value() >= roof) {
    h.add(-roof);
    x = x.shifted(1);
    roof = f(x);
    count();
  }
  double hv = h.value();
  if (hv < 0.0) hv = 0.0;
  return FlowPoint{std::move(x), hv};
}

FlowPoint make_flow_point(const BitSequence& x, double t, const RoofFunction& f, std::int64_t max_crossings) {
  return flow(FlowPoint{x, 0.0}, t, f, max_crossings);
}

double normalized_height(const FlowPoint& p, const RoofFunction& f) {
  const double r = f(p.base);
  if (r == 0.0) return 0.0;
  return p.height / r;
}

bool same_point(const FlowPoint& a, const FlowPoint& b, const RoofFunction& f, double tol) {
  if (a.base == b.base) return std::abs(a.height - b.height) <= tol;
  if (b.base == a.base.shifted(1)) return (f(a.base) - a.height) + b.height <= tol;
  if (a.base == b.base.shifted(1)) return (f(b.base) - b.height) + a.height <= tol;
  return false;
}

UnitRoofExtension::UnitRoofExtension(RoofFunction f, std::int64_t max_crossings)
    : f_(std::move(f)), max_crossings_(max_crossings) {}

FlowPoint UnitRoofExtension::project(const Point& q) const { return sflow::flow(q.base, q.s, f_, max_crossings_); }

UnitRoofExtension::Point UnitRoofExtension::flow(const Point& q, double t) const {
  const double total = q.s + t;
  const double n = std::floor(total);
  double s = total - n;
  double whole = n;
  if (s >= 1.0) {
    s = 0.0;
    whole += 1.0;
  }
  return Point{sflow::flow(q.base, whole, f_, max_crossings_), s};
}

UnitRoofExtension unit_roof_extension(const RoofFunction& f) {
  if (!f.is_constant() && admissibility_check(f.profile()) != Admissibility::kAdmissible)
    throw DomainError("unit-roof extension needs an admissible roof");
  return UnitRoofExtension(f);
}

}  // namespace sflow
