#include "sflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sflow/error.hpp"

namespace sflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

// Integral of F over [a, b] after the substitution t = e^s, split at the given cut points.
template <typename F>
Quadrature integrate_log_scale(F f, double a, double b, const std::vector<double>& cuts) {
  std::vector<double> pts{std::log(a), std::log(b)};
  for (double c : cuts)
    if (c > a && c < b) pts.push_back(std::log(c));
  std::sort(pts.begin(), pts.end());
  Quadrature q;
  CompensatedSum acc;
  auto integrand = [&](double s) {
    const double t = std::exp(s);
    return f(t) * t;
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i];
    const double hi = pts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    for (int j = 0; j < pieces; ++j) {
      const double s0 = lo + (hi - lo) * j / pieces;
      const double s1 = j + 1 == pieces ? hi : lo + (hi - lo) * (j + 1) / pieces;
      double err = 0.0;
      const double v =
          boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, s0, s1, 10, 1e-13, &err);
      acc.add(v);
      q.error += err;
    }
  }
  q.value = acc.value();
  return q;
}

double tail_bound(const GapProfile& g, std::int64_t K, double beta) {
  const double head = std::exp(-beta * static_cast<double>(K + 1));
  const auto& tag = g.tag();
  const bool growing_geometric = g.family() == GapProfile::Family::kTable && tag &&
                                 tag->kind == TailKind::kGeometric && tag->param > 1.0 && !g.truncation() &&
                                 K >= static_cast<std::int64_t>(g.table_values().size());
  if (growing_geometric) {
    const double q = tag->param * std::exp(-beta);
    if (q >= 1.0) return kInf;
    return g(K + 1) * head / (1.0 - q);
  }
  return g.sup_beyond(K) * head / (-std::expm1(-beta));
}

double central_difference(const auto& f, double t) {
  const double h = std::max(1.0, 1e-3 * t);
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace

SeriesValue weighted_gap_series(const GapProfile& g, double beta, double rel_tol, std::int64_t direct_limit) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("series decay rate must be positive and finite");
  if (!(rel_tol > 0.0)) throw DomainError("series tolerance must be positive");
  const std::int64_t limit = std::max(direct_limit, g.smooth_from() + 2);

  CompensatedSum sum;
  for (std::int64_t k = 1; k <= limit; ++k) {
    sum.add(g(k) * std::exp(-beta * static_cast<double>(k)));
    if ((k & 63) == 0 || k == limit) {
      const double bound = tail_bound(g, k, beta);
      const double v = sum.value();
      if (bound == 0.0 || bound <= rel_tol * v) return {v, bound, k, false};
    }
  }
  if (!std::isfinite(tail_bound(g, limit, beta))) throw DomainError("weighted gap series diverges");

  const double n = static_cast<double>(limit + 1);
  auto F = [&](double t) { return g.smooth(t) * std::exp(-beta * t); };
  const double t_max = std::max(2.0 * n, 90.0 / beta);
  std::vector<double> cuts = g.kinks(n, t_max);
  cuts.push_back(1.0 / beta);
  const Quadrature q = integrate_log_scale(F, n, t_max, cuts);
  const double fn = F(n);
  const double dfn = central_difference(F, n);
  const double tail = q.value + 0.5 * fn - dfn / 12.0;
  const double beyond = g.sup_beyond(static_cast<std::int64_t>(std::min(t_max, 9.0e15))) * std::exp(-beta * t_max) / beta;
  const double em_error = std::abs(fn) * (beta * beta * beta + 6.0 / (n * n * n)) / 720.0 + 1e-6 * std::abs(dfn);
  const double total = sum.value() + tail;
  return {total, q.error + em_error + beyond + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(total), limit,
          true};
}

SeriesValue gap_range_sum(const GapProfile& g, std::int64_t first, std::int64_t last) {
  if (first < 0) throw DomainError("gap range must start at k >= 0");
  if (last < first) return {};
  CompensatedSum sum;
  std::int64_t k = first;
  std::int64_t terms = 0;
  if (k == 0) {
    sum.add(g(0));
    k = 1;
    ++terms;
  }
  const std::int64_t switch_at = std::max(g.smooth_from() + 2, k + kDirectTermLimit);
  constexpr std::int64_t kDirectSpan = std::int64_t{1} << 20;
  if (last - k < kDirectSpan || last < switch_at + 16) {
    for (; k <= last; ++k, ++terms) sum.add(g(k));
    const double v = sum.value();
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v), terms, false};
  }
  for (; k < switch_at; ++k, ++terms) sum.add(g(k));
  const double a = static_cast<double>(switch_at);
  const double b = static_cast<double>(last);
  auto F = [&](double t) { return g.smooth(t); };
  const Quadrature q = integrate_log_scale(F, a, b, g.kinks(a, b));
  const double tail = q.value + 0.5 * (F(a) + F(b)) + (central_difference(F, b) - central_difference(F, a)) / 12.0;
  const double total = sum.value() + tail;
  const double em_error = (std::abs(F(a)) / (a * a * a)) / 120.0;
  return {total, q.error + em_error + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(total), terms, true};
}

}  // namespace sflow
