#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sflow/block_code.hpp"
#include "sflow/error.hpp"
#include "sflow/json_io.hpp"
#include "sflow/roof_prime.hpp"
#include "sflow/sequence_codec.hpp"
#include "sflow/verify.hpp"

using namespace sflow;

namespace {

constexpr std::int64_t kInf = GapPair::kInfinity;

// Independent arithmetic for regions, step lengths and block words.
int region_oracle(std::int64_t m, std::int64_t p, bool literal) {
  if (m == 0) return 1;
  if (p <= m) return 4;
  if (literal ? 3 * m <= p : 3 * m < p) return 2;
  return 3;
}

std::int64_t isqrt_ceil(std::int64_t n) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (s * s < n) ++s;
  while (s > 0 && (s - 1) * (s - 1) >= n) --s;
  return s;
}

std::int64_t step_oracle(std::int64_t m, std::int64_t p, bool literal) {
  switch (region_oracle(m, p, literal)) {
    case 1:
      return 1;
    case 2:
      return m;
    case 3:
      return p - (m + p) * (m + p) / (8 * m);
    default:
      return (p + 1) / 2;
  }
}

std::string word_oracle(std::int64_t gap, bool literal = false) {
  if (gap == 1) return "1^x";
  if (gap == 2) return "1^x 4^x";
  std::vector<std::pair<std::int64_t, std::int64_t>> orbit;
  std::int64_t m = 0, p = gap;
  for (;;) {
    orbit.emplace_back(m, p);
    const std::int64_t L = step_oracle(m, p, literal);
    if (L >= p) break;
    m += L;
    p -= L;
  }
  const int P = static_cast<int>(orbit.size());
  int r = -1;
  for (int q = 0; q < P; ++q)
    if (region_oracle(orbit[q].first, orbit[q].second, literal) == 3) r = q;
  if (r < 0) return "";
  std::vector<int> y(P), z(P, -1);
  for (int q = 0; q < P; ++q) y[q] = region_oracle(orbit[q].first, orbit[q].second, literal);
  const auto [km, kp] = orbit[r];
  const std::int64_t L = step_oracle(km, kp, literal);
  z[0] = static_cast<int>(kp + km - isqrt_ceil(8 * km * (kp - L)));
  const std::int64_t next = orbit[r + 1].second;
  for (int i = 0; i <= P - 3 - r; ++i) {
    const int q = P - 2 - i;  // eps_q is bit (q - r - 1) of k+ at S^{r+1}
    z[P - 2 * i - 1] = static_cast<int>((next >> (q - r - 1)) & 1);
  }
  std::string out;
  for (int q = 0; q < P; ++q) {
    if (q) out += ' ';
    out += std::to_string(y[q]) + "^" + (z[q] < 0 ? std::string("x") : std::to_string(z[q]));
  }
  return out;
}

BitSequence block_point(std::int64_t gap) {
  return bits_with_zero_tails("1" + std::string(static_cast<std::size_t>(gap - 1), '0') + "1");
}

std::vector<Bit> block_bits(std::int64_t gap) {
  std::vector<Bit> w(static_cast<std::size_t>(gap), 0);
  w[0] = 1;
  return w;
}

}  // namespace

TEST_CASE("regions") {
  CHECK(region_of({0, 5}) == Region::kR1);
  CHECK(region_of({4, 7}) == Region::kR3);
  CHECK(region_of({8, 3}) == Region::kR4);
  CHECK(region_of({2, 9}) == Region::kR2);
  CHECK(region_of({3, 9}) == Region::kR3);
  CHECK(region_of({3, 9}, Boundary::kPaper) == Region::kR2);
  CHECK(region_of({0, kInf}) == Region::kR1);
  CHECK(region_of({5, kInf}) == Region::kR2);
  CHECK(region_of({kInf, 5}) == Region::kR4);
  CHECK_THROWS_AS(region_of({kInf, kInf}), DomainError);
  for (std::int64_t m = 0; m <= 300; ++m)
    for (std::int64_t p = 1; p <= 300; ++p) {
      REQUIRE(static_cast<int>(region_of({m, p})) == region_oracle(m, p, false));
      REQUIRE(static_cast<int>(region_of({m, p}, Boundary::kPaper)) == region_oracle(m, p, true));
    }
}

TEST_CASE("step lengths") {
  CHECK(step_length({0, 17}) == 1);
  CHECK(step_length({0, kInf}) == 1);
  CHECK(step_length({4, 7}) == 4);
  CHECK(step_length({8, 3}) == 2);
  CHECK(step_length({2, 9}) == 2);
  CHECK(step_length({kInf, 13}) == 7);
  for (std::int64_t m = 0; m <= 300; ++m)
    for (std::int64_t p = 1; p <= 300; ++p) {
      const std::int64_t L = step_length({m, p});
      REQUIRE(L == step_oracle(m, p, false));
      REQUIRE(L >= 1);
    }
  CHECK(ceil_sqrt(96) == 10);
  CHECK(ceil_sqrt(100) == 10);
  CHECK(ceil_sqrt(0) == 0);
  const unsigned __int128 big = static_cast<unsigned __int128>(3037000500ULL) * 3037000500ULL;
  CHECK(ceil_sqrt(big) == 3037000500ULL);
  CHECK(ceil_sqrt(big + 1) == 3037000501ULL);
}

TEST_CASE("accelerated shift") {
  CHECK(accel_step(singularity()) == singularity());
  const BitSequence x = bits_with_zero_tails("10000000001", 2);
  REQUIRE(gap_pair(x) == GapPair{2, 8});
  CHECK(accel_step(x) == x.shifted(2));
  const BitSequence y = bits_with_zero_tails("1101");
  CHECK(accel_step(y) == y.shifted(1));
  CHECK(advance_pair({2, 9}) == GapPair{4, 7});
  CHECK_THROWS_AS(advance_pair({8, 1}), DomainError);
}

TEST_CASE("first-return profiles") {
  const BlockProfile p11 = return_profile(11);
  CHECK(p11.p == 6);
  CHECK(p11.r == 3);
  CHECK(p11.epsilon == std::map<int, int>{{4, 1}});
  CHECK(p11.offsets == std::vector<std::int64_t>{0, 1, 2, 4, 8, 10, 11});
  CHECK(p11.orbit[1].minus == 1);
  CHECK(p11.orbit[2].minus == 2);
  CHECK(p11.orbit[3].minus == 4);

  const BlockProfile p5 = return_profile(5);
  CHECK(p5.p == 4);
  CHECK(p5.r == 2);
  CHECK(p5.epsilon.empty());

  const BlockProfile p4 = return_profile(4);
  CHECK(p4.p == 4);
  CHECK(p4.r == 1);
  CHECK(p4.epsilon == std::map<int, int>{{2, 0}});

  const BlockProfile lit = return_profile(4, Boundary::kPaper);
  CHECK(lit.regions == std::vector<Region>{Region::kR1, Region::kR2, Region::kR4, Region::kR4});
  CHECK_FALSE(lit.r.has_value());
  CHECK(lit.word.empty());
  CHECK_THROWS_AS(encode_block(4, Boundary::kPaper), DomainError);

  const BlockProfile p1 = return_profile(1);
  CHECK(p1.p == 1);
  CHECK_FALSE(p1.r.has_value());
  CHECK_THROWS_AS(return_profile(0), DomainError);
}

TEST_CASE("profile offsets follow the simulated orbit") {
  for (std::int64_t gap = 1; gap <= 600; ++gap) {
    const BlockProfile bp = return_profile(gap);
    BitSequence x = block_point(gap);
    for (int q = 0; q < bp.p; ++q) {
      REQUIRE(x == block_point(gap).shifted(bp.offsets[static_cast<std::size_t>(q)]));
      REQUIRE(gap_pair(x) == bp.orbit[static_cast<std::size_t>(q)]);
      x = accel_step(x);
    }
    REQUIRE(bp.offsets.back() == gap);
    REQUIRE(gap_pair(x) == GapPair{0, kInf});
  }
}

TEST_CASE("block words") {
  CHECK(format_word(encode_block(11)) == "1^1 2^x 2^x 3^x 4^x 4^1");
  CHECK(format_word(encode_block(4)) == "1^0 3^x 4^x 4^0");
  CHECK(format_word(encode_block(1)) == "1^x");
  CHECK(format_word(encode_block(2)) == "1^x 4^x");
  for (std::int64_t gap = 1; gap <= 20000; ++gap) {
    CAPTURE(gap);
    REQUIRE(format_word(encode_block(gap)) == word_oracle(gap));
  }
  for (std::int64_t gap = 1; gap <= 3000; ++gap) {
    const std::string want = word_oracle(gap, true);
    if (want.empty())
      CHECK_THROWS_AS(encode_block(gap, Boundary::kPaper), DomainError);
    else
      CHECK(format_word(encode_block(gap, Boundary::kPaper)) == want);
  }
}

TEST_CASE("block word y-pattern and return bound") {
  for (std::int64_t gap = 3; gap <= 5000; ++gap) {
    const BlockProfile bp = return_profile(gap);
    REQUIRE(bp.r.has_value());
    const int r = *bp.r;
    REQUIRE(static_cast<int>(bp.word.size()) == bp.p);
    for (int q = 0; q < bp.p; ++q) {
      const int want = q == 0 ? 1 : q < r ? 2 : q == r ? 3 : 4;
      REQUIRE(bp.word[static_cast<std::size_t>(q)].y == want);
    }
    REQUIRE(bp.p - 2 - r <= (bp.p + 1) / 2 - 1);
  }
}

TEST_CASE("decoding block words") {
  CHECK(decode_word(parse_word("1^1 2^x 2^x 3^x 4^x 4^1")) == 11);
  CHECK(decode_word(parse_word("1^x")) == 1);
  CHECK(decode_word(parse_word("1^x 4^x")) == 2);
  CHECK(decode_word(parse_word("1^0, 3^x, 4^x, 4^0")) == 4);

  auto constraint = [](const std::string& text) {
    try {
      decode_word(parse_word(text));
    } catch (const DecodeError& e) {
      return e.constraint();
    }
    return std::string("accepted");
  };
  CHECK(constraint("") == "empty-word");
  CHECK(constraint("2^x 3^x") == "leading-letter");
  CHECK(constraint("1^x 2^x 1^x") == "single-one");
  CHECK(constraint("1^0 2^x 4^x 2^x") == "region-order");
  CHECK(constraint("1^x 1^x") == "single-one");
  CHECK(constraint("1^0") == "short-word-shape");
  CHECK(constraint("1^x 3^x") == "short-word-shape");
  CHECK(constraint("1^x 2^x 3^x 4^x") == "z1-range");
  CHECK(constraint("1^1 2^x 3^x 4^1") == "z-pattern");
  CHECK(constraint("1^1 2^0 2^x 3^x 4^x 4^1") == "z-pattern");
  CHECK(constraint("1^4 2^x 2^x 3^x 4^x 4^1") == "image-consistency");
  CHECK_THROWS_AS(parse_word("1^5"), ParseError);
  CHECK_THROWS_AS(parse_word("5^x"), ParseError);
  CHECK_THROWS_AS(parse_word("1x"), ParseError);
}

TEST_CASE("roundtrip and distinct images") {
  std::set<CodeWord> seen;
  for (std::int64_t gap = 1; gap <= 20000; ++gap) {
    const CodeWord w = encode_block(gap);
    REQUIRE(decode_word(w) == gap);
    REQUIRE(seen.insert(w).second);
  }
}

TEST_CASE("positions inside a block") {
  const CodeSegment s{SegmentKind::kBlock, encode_block(11)};
  CHECK(decode_position(s, 2) == GapPair{2, 9});
  CHECK(decode_position(s, 0) == GapPair{0, 11});
  for (std::int64_t gap = 1; gap <= 2000; ++gap) {
    const CodeSegment seg{SegmentKind::kBlock, encode_block(gap)};
    BitSequence x = block_point(gap);
    for (std::size_t q = 0; q < seg.letters.size(); ++q) {
      REQUIRE(decode_position(seg, q) == gap_pair(x));
      x = accel_step(x);
    }
  }
  CHECK_THROWS_AS(decode_position(s, 6), DecodeError);
}

TEST_CASE("positions in an open future") {
  const CodeSegment f{SegmentKind::kFuture, parse_word("1^x 2^x 2^x 2^x 2^x")};
  BitSequence x = bits_with_zero_tails("1");
  for (std::size_t l = 0; l < f.letters.size(); ++l) {
    CHECK(decode_position(f, l) == gap_pair(x));
    x = accel_step(x);
  }
  CHECK(decode_position(f, 3) == GapPair{4, kInf});
  CHECK_THROWS_AS(decode_position({SegmentKind::kFuture, parse_word("2^x 2^x")}, 1), DecodeError);
  CHECK_THROWS_AS(decode_position({SegmentKind::kFuture, parse_word("1^x 4^x")}, 1), DecodeError);
}

TEST_CASE("positions in an open past") {
  // The trailing 4-letters of a block word, read without the block start.
  for (std::int64_t gap = 3; gap <= 2000; ++gap) {
    const BlockProfile bp = return_profile(gap);
    const CodeSegment past{SegmentKind::kPast, bp.word};
    for (int q = *bp.r + 1; q < bp.p; ++q)
      REQUIRE(decode_position(past, static_cast<std::size_t>(q)) ==
              GapPair{kInf, bp.orbit[static_cast<std::size_t>(q)].plus});
  }
  const CodeSegment shallow{SegmentKind::kPast, parse_word("4^x 4^1 4^x 4^0")};
  try {
    decode_position(shallow, 0);
    FAIL("expected a decode error");
  } catch (const DecodeError& e) {
    CHECK(e.constraint() == "ambiguous-context");
  }
  CHECK(decode_position(shallow, 3) == GapPair{kInf, 1});
  CHECK(decode_position(shallow, 2) == GapPair{kInf, 2});
  CHECK_THROWS_AS(decode_position({SegmentKind::kPast, parse_word("4^x 2^x")}, 0), DecodeError);
}

TEST_CASE("sequence images") {
  const BitSequence x = BitSequence::periodic(block_bits(11));
  const CodeSequence u = encode_sequence(x);
  CHECK(u == CodeSequence::periodic(encode_block(11)));
  CHECK(u.right_period().size() == 6);
  CHECK(decode_sequence(u) == x);

  CHECK(encode_sequence(singularity()) == singular_code());
  CHECK(collides_with_singular_code(encode_sequence(BitSequence::constant(1))));
  CHECK(decode_sequence(singular_code()) == singularity());
  CHECK(decode_sequence(CodeSequence::periodic(parse_word("2^x"))) == singularity());
  CHECK(decode_sequence(CodeSequence::periodic(parse_word("4^0 4^x"))) == singularity());

  CHECK_THROWS_AS(encode_sequence(bits_with_zero_tails("101")), DomainError);
  CHECK_THROWS_AS(encode_sequence(x.shifted(3)), DomainError);
  CHECK_THROWS_AS(decode_sequence(CodeSequence::periodic(parse_word("1^x 2^x 4^x"))), DecodeError);
}

TEST_CASE("mixed sequences roundtrip and commute with the shift") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::int64_t> gap(1, 40);
  std::uniform_int_distribution<int> count(1, 3);
  for (int trial = 0; trial < 150; ++trial) {
    auto blocks = [&](int n) {
      std::vector<Bit> w;
      for (int i = 0; i < n; ++i) {
        const auto b = block_bits(gap(rng));
        w.insert(w.end(), b.begin(), b.end());
      }
      return w;
    };
    const auto lw = blocks(count(rng));
    const auto mid = blocks(count(rng) + 1);
    const auto rw = blocks(count(rng));
    // Origin at the start of the first middle block, then moved along its S-orbit.
    BitSequence x(lw, mid, 0, rw);
    std::uniform_int_distribution<int> steps(0, 12);
    for (int s = steps(rng); s > 0; --s) x = accel_step(x);
    const CodeSequence u = encode_sequence(x);
    CHECK(decode_sequence(u) == x);
    CHECK(encode_sequence(accel_step(x)) == u.shifted(1));
  }
}

TEST_CASE("open-ended coded sequences") {
  const CodeSequence future = parse_code_sequence("1^x*|[1^x]|2^x*");
  const BitSequence x = decode_sequence(future);
  CHECK(x == parse_bit_sequence("1*|[1]|0*"));
  BitSequence y = x;
  for (int q = 1; q <= 5; ++q) {
    y = accel_step(y);
    CHECK(decode_sequence(future.shifted(q)) == y);
  }
}

TEST_CASE("roof over one accelerated step") {
  const double ln2 = std::log(2.0);
  const RoofFunction h1 = RoofFunction::from_profile(GapProfile::harmonic(1.0));
  CHECK(roof_prime(singularity(), h1) == ln2);
  CHECK(roof_prime(singularity(), RoofFunction::from_profile(GapProfile::harmonic(2.0))) == 2 * ln2);
  CHECK_THROWS_AS(roof_prime(singularity(), RoofFunction::from_profile(GapProfile::power(0.5))), DomainError);
  CHECK_THROWS_AS(roof_prime(singularity(), RoofFunction::from_profile(GapProfile::log_harmonic())), DomainError);

  CHECK(roof_prime(GapPair{0, 17}, h1) == 1.0);
  CHECK(roof_prime(GapPair{0, kInf}, RoofFunction::from_profile(GapProfile::power(0.5).with_g0(2.5))) == 2.5);

  long double ref = 0.0L;
  for (int j = 1000; j <= 1999; ++j) ref += 1.0L / j;
  CHECK(roof_prime(GapPair{1000, 1000000}, h1) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
}

TEST_CASE("roof over one step equals the Birkhoff sum of the roof") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(1, 60);
  std::bernoulli_distribution coin(0.3);
  for (const char* spec : {"const:1.5", "harmonic:1", "power:0.5", "trunc:2:power:0.5", "logharmonic"}) {
    const RoofFunction f = parse_roof(spec);
    for (int i = 0; i < 200; ++i) {
      std::string w(static_cast<std::size_t>(len(rng)), '0');
      for (auto& c : w) c = coin(rng) ? '1' : '0';
      w.front() = '1';
      w.back() = '1';
      const BitSequence x = bits_with_zero_tails(w, std::uniform_int_distribution<std::int64_t>(
                                                        0, static_cast<std::int64_t>(w.size()) - 1)(rng));
      const std::int64_t L = step_length(gap_pair(x));
      long double direct = 0.0L;
      for (std::int64_t j = 0; j < L; ++j) direct += f(x.shifted(j));
      CAPTURE(spec);
      const double v = roof_prime(x, f);
      CHECK(v == doctest::Approx(static_cast<double>(direct)).epsilon(1e-13));
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("continuity probe") {
  const GapProfile h1 = GapProfile::harmonic(1.0);
  CHECK(roof_prime_continuity_probe(h1, 2000) <= 0.02);
  CHECK(roof_prime_continuity_probe(GapProfile::harmonic(2.0), 2000) <= 0.04);
  double prev = 1e300;
  for (std::int64_t K : {250, 500, 1000, 2000, 4000}) {
    const double v = roof_prime_continuity_probe(h1, K);
    CHECK(v < prev);
    prev = v;
  }
  const std::int64_t K = 500;
  std::vector<double> values;
  for (std::int64_t k = 1; k < K; ++k) values.push_back(1.0 / static_cast<double>(k));
  const GapProfile table = GapProfile::table(values, AsymptoticTag{TailKind::kHarmonic, 1.0});
  CHECK(roof_prime_continuity_probe(table, K) == doctest::Approx(roof_prime_continuity_probe(h1, K)).epsilon(1e-12));
  CHECK_THROWS_AS(roof_prime_continuity_probe(h1, 2), DomainError);
  CHECK(continuity_probe_grid(10).size() == 80);
}

TEST_CASE("fiber subshifts") {
  const auto sfts = fiber_sfts();
  CHECK(sfts[0].generators() == std::vector<GeneratedShift::Word>{{"2^0", "2^x"}, {"2^1", "2^x"}});
  CHECK(sfts[1].generators() == std::vector<GeneratedShift::Word>{{"4^0", "4^x"}, {"4^1", "4^x"}});
}

TEST_CASE("profile JSON") {
  const auto j = to_json(return_profile(11));
  CHECK(j["gap"] == 11);
  CHECK(j["p"] == 6);
  CHECK(j["r"] == 3);
  CHECK(j["epsilon_bits"]["4"] == 1);
  CHECK(j["word"] == "1^1 2^x 2^x 3^x 4^x 4^1");
  CHECK(to_json(return_profile(2))["r"].is_null());
}

TEST_CASE("verification suites at small scale") {
  CHECK(verify_regions(300).passed());
  CHECK(verify_first_return(3000).passed());
  CHECK(verify_step_lemma(600, 100, 3).passed());
  CodecSuiteOptions o;
  o.gap_max = 3000;
  o.position_gap_max = 500;
  o.equivariance_gap_max = 40;
  CHECK(verify_codec(o).passed());
  CHECK(verify_fiber(12).passed());
  CHECK(boundary_anomalies(3000, Boundary::kAdjusted).empty());
  CHECK(boundary_anomalies(3000, Boundary::kPaper) ==
        std::vector<std::int64_t>{4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048});
}
