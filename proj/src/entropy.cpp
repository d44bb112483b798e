#include "sflow/entropy.hpp"

#include <cmath>
#include <limits>

#include "sflow/error.hpp"
#include "sflow/parallel.hpp"
#include "sflow/series.hpp"

namespace sflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double shannon_binary(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  if (lambda == 0.0 || lambda == 1.0) return 0.0;
  return term(lambda) - (1.0 - lambda) * std::log1p(-lambda);
}

RoofIntegral roof_integral_bernoulli(double lambda, const GapProfile& g, double tol) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  const double beta = -2.0 * std::log1p(-lambda);
  const double c = lambda * (2.0 - lambda) / (1.0 - lambda);
  const SeriesValue s = weighted_gap_series(g, beta, tol);
  return {g.g0() * lambda + c * s.value, c * s.error_bound, s.direct_terms, s.tail_integrated};
}

double abramov(double h_base, double roof_integral) {
  if (!(roof_integral > 0.0)) throw DomainError("roof integral must be positive");
  if (!(h_base >= 0.0)) throw DomainError("base entropy must be nonnegative");
  return h_base / roof_integral;
}

std::string to_string(EntropyMethod m) {
  switch (m) {
    case EntropyMethod::kClosedForm:
      return "closed_form";
    case EntropyMethod::kSeries:
      return "series";
    case EntropyMethod::kWordCount:
      return "word_count";
    case EntropyMethod::kSeparatedSets:
      return "separated_sets";
  }
  return "unknown";
}

EntropyReport flow_entropy_bernoulli(double lambda, const GapProfile& g, double tol) {
  const double h = shannon_binary(lambda);
  const RoofIntegral I = roof_integral_bernoulli(lambda, g, tol);
  EntropyReport r;
  r.value = abramov(h, I.value);
  r.method = EntropyMethod::kSeries;
  r.error_bound = h * I.truncation_bound / (I.value * (I.value - I.truncation_bound));
  if (g.uses_extension(1)) r.flag = "g(1) uses the log-harmonic extension 1/log 2";
  return r;
}

std::vector<double> decade_grid(int first, int last) {
  if (last < first) throw DomainError("decade grid must run toward smaller lambda");
  std::vector<double> grid;
  for (int e = first; e <= last; ++e) grid.push_back(std::pow(10.0, -e));
  return grid;
}

ScanResult singular_limit_scan(const GapProfile& g, const std::vector<double>& grid, double tol) {
  if (grid.empty()) throw DomainError("lambda grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw DomainError("lambda grid values must lie in (0, 1)");
    if (i && !(grid[i] < grid[i - 1])) throw DomainError("lambda grid must be strictly decreasing");
  }
  ScanResult out;
  const double l = g.kg_limit();
  if (l == 0.0) {
    out.limit_kind = LimitKind::kDivergent;
    out.target = kInf;
  } else if (std::isinf(l)) {
    out.limit_kind = LimitKind::kZero;
    out.target = 0.0;
  } else {
    out.limit_kind = LimitKind::kFinite;
    out.target = 1.0 / (2.0 * l);
  }
  out.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double h = shannon_binary(grid[i]);
    const RoofIntegral I = roof_integral_bernoulli(grid[i], g, tol);
    ScanRow& row = out.rows[i];
    row.lambda = grid[i];
    row.integral = I.value;
    row.entropy = abramov(h, I.value);
    row.target = out.target;
    row.abs_error = std::abs(row.entropy - out.target);
    row.error_bound = h * I.truncation_bound / (I.value * (I.value - I.truncation_bound));
  });
  out.strictly_decreasing = out.strictly_increasing = out.errors_shrinking = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const auto& a = out.rows[i - 1];
    const auto& b = out.rows[i];
    if (!(b.entropy < a.entropy)) out.strictly_decreasing = false;
    if (!(b.entropy > a.entropy)) out.strictly_increasing = false;
    if (out.limit_kind != LimitKind::kDivergent && !(b.abs_error < a.abs_error)) out.errors_shrinking = false;
  }
  if (out.limit_kind == LimitKind::kDivergent) out.errors_shrinking = out.strictly_increasing;
  return out;
}

FlowMeasureSpec::FlowMeasureSpec(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("measure needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw DomainError("measure weights must be positive");
    if (const auto* b = std::get_if<BernoulliComponent>(&a.component))
      if (!(b->lambda > 0.0 && b->lambda < 1.0)) throw DomainError("Bernoulli parameter must lie in (0, 1)");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("measure weights must sum to 1");
}

FlowMeasureSpec FlowMeasureSpec::dirac() { return FlowMeasureSpec({{DiracAtSingularity{}, 1.0}}); }

FlowMeasureSpec FlowMeasureSpec::bernoulli(double lambda) {
  return FlowMeasureSpec({{BernoulliComponent{lambda}, 1.0}});
}

FlowMeasureSpec FlowMeasureSpec::mix(const FlowMeasureSpec& a, const FlowMeasureSpec& b, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("mixing parameter must lie in (0, 1)");
  std::vector<MeasureAtom> atoms;
  for (const auto& x : a.atoms_) atoms.push_back({x.component, t * x.weight});
  for (const auto& x : b.atoms_) atoms.push_back({x.component, (1.0 - t) * x.weight});
  return FlowMeasureSpec(std::move(atoms));
}

double FlowMeasureSpec::singular_weight() const {
  double w = 0.0;
  for (const auto& a : atoms_)
    if (std::holds_alternative<DiracAtSingularity>(a.component)) w += a.weight;
  return w;
}

double FlowMeasureSpec::base_part_entropy(const GapProfile& g, double tol) const {
  double mass = 0.0;
  double acc = 0.0;
  for (const auto& a : atoms_) {
    if (const auto* b = std::get_if<BernoulliComponent>(&a.component)) {
      acc += a.weight * flow_entropy_bernoulli(b->lambda, g, tol).value;
      mass += a.weight;
    }
  }
  return mass > 0.0 ? acc / mass : 0.0;
}

double sex_entropy_formula(const FlowMeasureSpec& nu, double l, double h_of_base_part) {
  if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("l must be finite and positive");
  if (!(h_of_base_part >= 0.0)) throw DomainError("base-part entropy must be nonnegative");
  const double w = nu.singular_weight();
  return h_of_base_part * (1.0 - w) + w / (2.0 * l);
}

}  // namespace sflow
