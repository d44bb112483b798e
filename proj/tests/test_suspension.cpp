#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "sflow/chain_metric.hpp"
#include "sflow/error.hpp"
#include "sflow/suspension.hpp"

using namespace sflow;

namespace {

// Moves up one roof level at a time; only forward times.
FlowPoint step_flow(FlowPoint p, double t, const RoofFunction& f) {
  double h = p.height + t;
  BitSequence x = p.base;
  for (;;) {
    const double r = f(x);
    if (h < r) break;
    h -= r;
    x = x.shifted(1);
  }
  return {x, h};
}

BitSequence random_base(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 10);
  std::uniform_int_distribution<int> origin(0, 9);
  std::bernoulli_distribution coin(0.5);
  std::string w(static_cast<std::size_t>(len(rng)), '0');
  for (auto& c : w) c = coin(rng) ? '1' : '0';
  w.front() = '1';
  w.back() = '1';
  if (coin(rng)) {
    std::vector<Bit> period;
    for (char c : w) period.push_back(c == '1');
    return BitSequence::periodic(period, origin(rng));
  }
  return bits_with_zero_tails(w, std::min<std::int64_t>(origin(rng), static_cast<std::int64_t>(w.size()) - 1));
}

// Minimum over chains of at most max_points vertices, with pair lengths taken from pair_length.
double brute_chain(const ChainMetric& m, std::size_t a, std::size_t b, int max_points, const RoofFunction& f) {
  const auto& vs = m.vertices();
  auto point = [&](std::size_t i) {
    const auto& v = vs[i];
    const BitSequence& x = m.bases()[v.base];
    return FlowPoint{x, v.u * f(x)};
  };
  auto len = [&](std::size_t i, std::size_t j) {
    const FlowPoint p = point(i), q = point(j);
    double best = std::numeric_limits<double>::infinity();
    try {
      best = std::min(best, pair_length(p, q, PairKind::kHorizontal, f));
    } catch (const DomainError&) {
    }
    try {
      best = std::min(best, pair_length(p, q, PairKind::kVertical, f));
    } catch (const DomainError&) {
    }
    return best;
  };
  const std::size_t n = vs.size();
  double best = len(a, b);
  if (max_points >= 3)
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, len(a, i) + len(i, b));
  if (max_points >= 4)
    for (std::size_t i = 0; i < n; ++i) {
      const double ai = len(a, i);
      if (ai >= best) continue;
      for (std::size_t j = 0; j < n; ++j) best = std::min(best, ai + len(i, j) + len(j, b));
    }
  return best;
}

std::size_t vertex_of(const ChainMetric& m, const FlowPoint& p, const RoofFunction& f) {
  const double u = normalized_height(p, f);
  for (std::size_t i = 0; i < m.vertices().size(); ++i)
    if (m.bases()[m.vertices()[i].base] == p.base && m.vertices()[i].u == u) return i;
  FAIL("point not among the vertices");
  return 0;
}

}  // namespace

TEST_CASE("flow fixes the singular point") {
  const RoofFunction h = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  CHECK(flow(singular_flow_point(), 7.3, h) == singular_flow_point());
  CHECK(flow(singular_flow_point(), -2.0, h) == singular_flow_point());
}

TEST_CASE("flow under the unit roof") {
  const RoofFunction one = RoofFunction::constant(1.0);
  const BitSequence x = bits_with_zero_tails("1101");
  const FlowPoint q = flow({x, 0.0}, 2.5, one);
  CHECK(q.base == x.shifted(2));
  CHECK(q.height == doctest::Approx(0.5));
  const FlowPoint back = flow(q, -2.5, one);
  CHECK(back.base == x);
  CHECK(back.height == doctest::Approx(0.0));
}

TEST_CASE("one roof crossing at a block") {
  const RoofFunction h = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  const BitSequence x = bits_with_zero_tails("1001");
  REQUIRE(gap_pair(x) == GapPair{0, 3});
  const FlowPoint q = flow({x, 0.0}, 1.0, h);
  CHECK(q == step_flow({x, 0.0}, 1.0, h));
  CHECK(q.base == x.shifted(1));
  CHECK(q.height == 0.0);
}

TEST_CASE("flow agrees with stepwise crossings and stays canonical") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(0.0, 6.0);
  for (const char* spec : {"const:0.7", "harmonic:1", "power:0.5", "trunc:2:power:0.5"}) {
    const RoofFunction f = parse_roof(spec);
    for (int i = 0; i < 300; ++i) {
      const BitSequence x = random_base(rng);
      const double t = time(rng);
      const FlowPoint got = flow({x, 0.0}, t, f);
      const FlowPoint want = step_flow({x, 0.0}, t, f);
      CAPTURE(spec);
      CHECK(same_point(got, want, f, 1e-9));
      CHECK(got.height >= 0.0);
      CHECK(got.height < f(got.base));
    }
  }
}

TEST_CASE("flow is additive") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> time(-4.0, 4.0);
  const RoofFunction f = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  for (int i = 0; i < 2000; ++i) {
    const BitSequence x = random_base(rng);
    const FlowPoint p = make_flow_point(x, time(rng), f);
    const double a = time(rng), b = time(rng);
    CHECK(same_point(flow(flow(p, a, f), b, f), flow(p, a + b, f), f, 1e-9));
    CHECK(flow(p, 0.0, f) == p);
  }
}

TEST_CASE("crossing budget") {
  const RoofFunction tiny = RoofFunction::constant(1e-3);
  CHECK_THROWS_AS(flow({bits_with_zero_tails("1"), 0.0}, 10.0, tiny, 1000), ResourceError);
  CHECK_NOTHROW(flow({bits_with_zero_tails("1"), 0.0}, 0.5, tiny, 1000));
}

TEST_CASE("pair lengths") {
  const RoofFunction one = RoofFunction::constant(1.0);
  const FlowPoint a{bits_with_zero_tails("101"), 0.3};
  CHECK(pair_length(a, a, PairKind::kHorizontal, one) == 0.0);
  CHECK(pair_length(a, a, PairKind::kVertical, one) == 0.0);

  const BitSequence x = bits_with_zero_tails("11");
  CHECK(pair_length({x, 0.2}, {x, 0.7}, PairKind::kVertical, one) == doctest::Approx(0.5));
  CHECK(pair_length({x, 0.8}, {x.shifted(1), 0.1}, PairKind::kVertical, one) == doctest::Approx(0.3));

  const FlowPoint ha{bits_with_zero_tails("001"), 0.5};
  const FlowPoint hb{singularity(), 0.5};
  CHECK(pair_length(ha, hb, PairKind::kHorizontal, one) == 0.375);

  CHECK_THROWS_AS(pair_length({x, 0.2}, {bits_with_zero_tails("1"), 0.7}, PairKind::kHorizontal, one), DomainError);
  CHECK_THROWS_AS(pair_length({x, 0.2}, {bits_with_zero_tails("1001"), 0.7}, PairKind::kVertical, one), DomainError);
}

TEST_CASE("chain distance examples") {
  const RoofFunction one = RoofFunction::constant(1.0);
  const BitSequence x = bits_with_zero_tails("1011");
  const FlowPoint a{x, 0.0};
  CHECK(bw_distance_upper(a, a, one, 2) == 0.0);
  CHECK(bw_distance_upper({x, 0.2}, {x, 0.65}, one, 2) <= 0.45 + 1e-15);

  const FlowPoint b{x.shifted(1), 0.0};
  const double d = bw_distance_upper(a, b, one, 4);
  CHECK(d <= 1.0);
  ChainMetric m(one, {a, b});
  CHECK(d == doctest::Approx(brute_chain(m, vertex_of(m, a, one), vertex_of(m, b, one), 4, one)).epsilon(1e-15));
}

TEST_CASE("hop-limited search agrees with chain enumeration") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const char* spec : {"const:1", "harmonic:1"}) {
    const RoofFunction f = parse_roof(spec);
    for (int i = 0; i < 25; ++i) {
      const BitSequence xa = random_base(rng), xb = random_base(rng);
      const FlowPoint a{xa, u(rng) * f(xa)}, b{xb, u(rng) * f(xb)};
      ChainMetric m(f, {a, b}, 2);
      const std::size_t ia = vertex_of(m, a, f), ib = vertex_of(m, b, f);
      for (int points = 2; points <= 4; ++points) {
        const double want = std::min(brute_chain(m, ia, ib, points, f), brute_chain(m, ib, ia, points, f));
        CAPTURE(spec);
        CAPTURE(points);
        const double got = m.distance(a, b, points);
        if (std::isinf(want))
          CHECK(std::isinf(got));
        else
          CHECK(got == doctest::Approx(want).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("chain distance properties on random triples") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const RoofFunction f = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  for (int i = 0; i < 60; ++i) {
    std::vector<FlowPoint> pts;
    for (int j = 0; j < 3; ++j) {
      const BitSequence x = random_base(rng);
      pts.push_back({x, u(rng) * f(x)});
    }
    const ChainMetric m(f, pts);
    const auto& A = pts[0];
    const auto& B = pts[1];
    const auto& C = pts[2];
    for (int k = 2; k <= 4; ++k) {
      CHECK(m.distance(A, B, k) == m.distance(B, A, k));
      CHECK(m.distance(A, A, k) == 0.0);
      CHECK(m.distance(A, B, k + 1) <= m.distance(A, B, k));
      CHECK(m.distance(A, C, 2 * k) <= m.distance(A, B, k) + m.distance(B, C, k) + 1e-12);
    }
  }
}

TEST_CASE("same-height points under a constant roof") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const RoofFunction one = RoofFunction::constant(1.0);
  for (int i = 0; i < 200; ++i) {
    const BitSequence xa = random_base(rng), xb = random_base(rng);
    const double t = u(rng);
    const FlowPoint a{xa, t}, b{xb, t};
    CHECK(bw_distance_upper(a, b, one, 4) == pair_length(a, b, PairKind::kHorizontal, one));
  }
}

TEST_CASE("unit roof extension") {
  const RoofFunction one = RoofFunction::constant(1.0);
  const UnitRoofExtension e1 = unit_roof_extension(one);
  const BitSequence x = bits_with_zero_tails("1101");
  CHECK(e1.project({{x, 0.0}, 0.0}) == FlowPoint{x, 0.0});
  const FlowPoint p = e1.project({{x, 0.0}, 0.25});
  CHECK(p.base == x);
  CHECK(p.height == doctest::Approx(0.25));

  const RoofFunction h = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  const UnitRoofExtension eh = unit_roof_extension(h);
  const BitSequence y = bits_with_zero_tails("10001", 2);
  REQUIRE(singularity_depth(y) == 2);
  CHECK(eh.project({{y, 0.0}, 0.4}) == flow({y, 0.0}, 0.4, h));

  CHECK_THROWS_AS(unit_roof_extension(RoofFunction::from_profile(GapProfile::power(1.5))), DomainError);
}

TEST_CASE("unit roof extension is equivariant") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> s(0.0, 1.0);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  const RoofFunction f = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  const UnitRoofExtension e = unit_roof_extension(f);
  for (int i = 0; i < 500; ++i) {
    const FlowPoint base = make_flow_point(random_base(rng), time(rng), f);
    const UnitRoofExtension::Point q{base, s(rng)};
    const double t = time(rng);
    const UnitRoofExtension::Point moved = e.flow(q, t);
    CHECK(moved.s >= 0.0);
    CHECK(moved.s < 1.0);
    CHECK(same_point(e.project(moved), flow(e.project(q), t, f), f, 1e-9));
  }
}
