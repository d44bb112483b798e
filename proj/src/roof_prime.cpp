#include "sflow/roof_prime.hpp"

#include <cmath>
#include <numbers>

#include "sflow/error.hpp"
#include "sflow/series.hpp"

namespace sflow {

namespace {

double star_value(const RoofFunction& f) {
  if (f.is_constant()) throw DomainError("a constant roof does not vanish at *; f' is undefined there");
  const double l = f.profile().kg_limit();
  if (!std::isfinite(l) || !(l > 0.0)) throw DomainError("f'(*) needs a finite positive l = lim k g(k)");
  return l * std::numbers::ln2;
}

}  // namespace

double window_sum(const GapProfile& g, std::int64_t lo, std::int64_t hi) { return gap_range_sum(g, lo, hi).value; }

double roof_prime(const GapPair& k, const RoofFunction& f, Boundary b) {
  if (k.singular()) return star_value(f);
  const std::int64_t L = step_length(k, b);
  if (f.is_constant()) return f.constant_value() * static_cast<double>(L);
  const GapProfile& g = f.profile();
  // f(sigma^j x) = g(min(k- + j, k+ - j)) for 0 <= j < L.
  if (k.minus_infinite()) return gap_range_sum(g, k.plus - L + 1, k.plus).value;
  if (k.plus_infinite()) return gap_range_sum(g, k.minus, k.minus + L - 1).value;
  const std::int64_t jstar = floor_div(k.plus - k.minus, 2);  // last j with k- + j <= k+ - j
  CompensatedSum s;
  const std::int64_t a_end = std::min(L - 1, jstar);
  if (a_end >= 0) s.add(gap_range_sum(g, k.minus, k.minus + a_end).value);
  const std::int64_t b_begin = std::max<std::int64_t>(jstar + 1, 0);
  if (b_begin <= L - 1) s.add(gap_range_sum(g, k.plus - (L - 1), k.plus - b_begin).value);
  return s.value();
}

double roof_prime(const BitSequence& x, const RoofFunction& f, Boundary b) { return roof_prime(gap_pair(x), f, b); }

std::vector<GapPair> continuity_probe_grid(std::int64_t K) {
  if (K < 3) throw DomainError("continuity probe needs K >= 3");
  static const double multipliers[] = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0};
  std::vector<std::int64_t> values;
  for (double m : multipliers) values.push_back(static_cast<std::int64_t>(std::floor(m * static_cast<double>(K))));
  values.push_back(GapPair::kInfinity);
  std::vector<GapPair> grid;
  for (auto a : values)
    for (auto c : values)
      if (!(a == GapPair::kInfinity && c == GapPair::kInfinity)) grid.push_back({a, c});
  return grid;
}

double roof_prime_continuity_probe(const GapProfile& g, std::int64_t K, Boundary b) {
  const RoofFunction f = RoofFunction::from_profile(g);
  const double target = star_value(f);
  double worst = 0.0;
  for (const GapPair& k : continuity_probe_grid(K)) worst = std::max(worst, std::abs(roof_prime(k, f, b) - target));
  return worst;
}

}  // namespace sflow
