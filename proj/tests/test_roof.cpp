#include <cmath>
#include <limits>

#include "doctest.h"
#include "sflow/error.hpp"
#include "sflow/roof.hpp"
#include "sflow/series.hpp"

using namespace sflow;

TEST_CASE("roof evaluation examples") {
  const RoofFunction one = RoofFunction::constant(1.0);
  CHECK(roof_eval(one, bits_with_zero_tails("1")).value == 1.0);
  CHECK(roof_eval(one, singularity()).value == 1.0);

  const RoofFunction h = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  CHECK(roof_eval(h, singularity()).value == 0.0);
  CHECK(roof_eval(h, bits_with_zero_tails("100000001", 4)).value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(roof_eval(h, bits_with_zero_tails("1")).value == 1.0);
  CHECK(h(bits_with_zero_tails("10001", 2)) == doctest::Approx(0.5));
}

TEST_CASE("g0 sets the value on the cylinder of a one") {
  const RoofFunction h = RoofFunction::from_profile(GapProfile::harmonic(1.0).with_g0(3.0));
  CHECK(roof_eval(h, bits_with_zero_tails("1")).value == 3.0);
  CHECK_THROWS_AS(RoofFunction::from_profile(GapProfile::harmonic(1.0).with_g0(0.0)), DomainError);
}

TEST_CASE("log-harmonic uses the documented value at k = 1") {
  const GapProfile g = GapProfile::log_harmonic();
  CHECK(g(1) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-15));
  CHECK(g(3) == doctest::Approx(1.0 / (3.0 * std::log(3.0))).epsilon(1e-15));
  const RoofFunction f = RoofFunction::from_profile(g);
  const auto s = roof_eval(f, bits_with_zero_tails("01", 0));
  CHECK(s.extended);
  CHECK_FALSE(roof_eval(f, bits_with_zero_tails("001", 0)).extended);
}

TEST_CASE("truncation is the pointwise minimum") {
  const GapProfile g = GapProfile::power(0.5);
  for (double a : {1.0, 2.0, 7.5}) {
    const GapProfile ga = g.truncated(a);
    for (std::int64_t k = 1; k <= 500; ++k) CHECK(ga(k) == std::min(std::pow(double(k), -0.5), a / double(k)));
  }
  CHECK(g.truncated(2.0).kg_limit() == 2.0);
}

TEST_CASE("admissibility follows divergence of the gap sum") {
  CHECK(admissibility_check(GapProfile::harmonic(1.0)) == Admissibility::kAdmissible);
  CHECK(admissibility_check(GapProfile::power(0.5)) == Admissibility::kAdmissible);
  CHECK(admissibility_check(GapProfile::power(1.0)) == Admissibility::kAdmissible);
  CHECK(admissibility_check(GapProfile::power(1.5)) == Admissibility::kInadmissible);
  CHECK(admissibility_check(GapProfile::log_harmonic()) == Admissibility::kAdmissible);
  CHECK(admissibility_check(GapProfile::table({0.5, 0.25}, AsymptoticTag{TailKind::kGeometric, 0.5})) ==
        Admissibility::kInadmissible);
  CHECK_THROWS_AS(admissibility_check(GapProfile::table({1.0, 0.5}, std::nullopt)), DomainError);
}

TEST_CASE("table profiles") {
  const GapProfile t = GapProfile::table({1.0, 0.5, 1.0 / 3}, AsymptoticTag{TailKind::kHarmonic, 1.0});
  CHECK(t(2) == 0.5);
  CHECK(t(10) == doctest::Approx(0.1));
  CHECK(t.kg_limit() == 1.0);
  const GapProfile bare = GapProfile::table({1.0, 2.0}, std::nullopt);
  CHECK(bare(2) == 2.0);
  CHECK_THROWS_AS(bare(3), DomainError);
  CHECK_THROWS_AS(GapProfile::table({1.0, -1.0}, std::nullopt), DomainError);
  CHECK_THROWS_AS(RoofFunction::from_profile(bare), DomainError);
}

TEST_CASE("l = lim k g(k)") {
  CHECK(GapProfile::harmonic(2.0).kg_limit() == 2.0);
  CHECK(std::isinf(GapProfile::power(0.5).kg_limit()));
  CHECK(GapProfile::power(2.0).kg_limit() == 0.0);
  CHECK(GapProfile::log_harmonic().kg_limit() == 0.0);
}

TEST_CASE("roof mini-language") {
  CHECK(parse_roof("const:2").is_constant());
  CHECK(parse_roof("const:2").constant_value() == 2.0);
  CHECK(parse_roof("harmonic:1").profile().family() == GapProfile::Family::kHarmonic);
  CHECK(parse_roof("power:0.5").profile().parameter() == 0.5);
  CHECK(parse_roof("logharmonic").profile().family() == GapProfile::Family::kLogHarmonic);
  const RoofFunction t = parse_roof("trunc:2:power:0.5");
  CHECK(t.profile().truncation() == 2.0);
  CHECK(t.profile()(100) == 0.02);
  CHECK(parse_roof(parse_roof("trunc:2:power:0.5").spec()).spec() == t.spec());
  CHECK(parse_roof(" harmonic:1 ").spec() == "harmonic:1");

  CHECK_THROWS_AS(parse_roof("harmonic:"), ParseError);
  CHECK_THROWS_AS(parse_roof("power:abc"), ParseError);
  CHECK_THROWS_AS(parse_roof("power:0.5x"), ParseError);
  CHECK_THROWS_AS(parse_roof("cosine:1"), ParseError);
  CHECK_THROWS_AS(parse_roof("logharmonic:2"), ParseError);
  CHECK_THROWS_AS(parse_roof("harmonic:-1"), ParseError);
  CHECK_THROWS_AS(parse_roof("const:0"), ParseError);
}

TEST_CASE("range sums against long double accumulation") {
  for (const char* spec : {"harmonic:1", "power:0.5", "logharmonic", "trunc:2:power:0.5"}) {
    const GapProfile g = parse_profile(spec);
    for (auto [lo, hi] : {std::pair<std::int64_t, std::int64_t>{1, 1000}, {1000, 1999}, {3, 3000000}}) {
      long double ref = 0.0L;
      for (std::int64_t k = lo; k <= hi; ++k) ref += static_cast<long double>(g(k));
      CAPTURE(spec);
      CAPTURE(hi);
      CHECK(gap_range_sum(g, lo, hi).value == doctest::Approx(static_cast<double>(ref)).epsilon(1e-11));
    }
  }
  CHECK(gap_range_sum(GapProfile::harmonic(1.0), 0, 0).value == 1.0);
  CHECK(gap_range_sum(GapProfile::harmonic(1.0), 5, 4).value == 0.0);
}

TEST_CASE("weighted series against direct long double summation") {
  const double beta = 2e-6;
  for (const char* spec : {"harmonic:1", "power:0.5", "logharmonic", "trunc:1:power:0.5"}) {
    const GapProfile g = parse_profile(spec);
    long double ref = 0.0L;
    const long double q = std::exp(-static_cast<long double>(beta));
    long double w = 1.0L;
    for (std::int64_t k = 1; k <= 40'000'000; ++k) {
      w *= q;
      ref += static_cast<long double>(g(k)) * w;
    }
    CAPTURE(spec);
    const SeriesValue s = weighted_gap_series(g, beta, 1e-18);
    CHECK(s.tail_integrated);
    CHECK(s.value == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
  }
}
