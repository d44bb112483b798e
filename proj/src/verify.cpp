#include "sflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "sflow/block_code.hpp"
#include "sflow/error.hpp"
#include "sflow/parallel.hpp"
#include "sflow/roof_prime.hpp"
#include "sflow/sequence_codec.hpp"

namespace sflow {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

struct Tally {
  std::int64_t failures = 0;
  std::int64_t first = GapPair::kInfinity;
  std::string detail;

  void record(std::int64_t key, std::string why) {
    ++failures;
    if (key < first) {
      first = key;
      detail = std::move(why);
    }
  }

  void merge(const Tally& o) {
    failures += o.failures;
    if (o.first < first) {
      first = o.first;
      detail = o.detail;
    }
  }
};

using Recorder = std::function<void(std::size_t check, std::int64_t key, std::string why)>;

// Runs body(key, record) over [lo, hi] in parallel chunks and merges per-check tallies.
std::vector<Tally> scan_range(std::int64_t lo, std::int64_t hi, std::size_t n_checks,
                              const std::function<void(std::int64_t, const Recorder&)>& body) {
  if (hi < lo) return std::vector<Tally>(n_checks);
  const std::int64_t span = hi - lo + 1;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::int64_t>(span, 64));
  std::vector<std::vector<Tally>> parts(chunks, std::vector<Tally>(n_checks));
  parallel_for(chunks, [&](std::size_t c) {
    const std::int64_t a = lo + span * static_cast<std::int64_t>(c) / static_cast<std::int64_t>(chunks);
    const std::int64_t b = lo + span * static_cast<std::int64_t>(c + 1) / static_cast<std::int64_t>(chunks);
    auto& mine = parts[c];
    Recorder rec = [&mine](std::size_t check, std::int64_t key, std::string why) {
      mine[check].record(key, std::move(why));
    };
    for (std::int64_t k = a; k < b; ++k) body(k, rec);
  });
  std::vector<Tally> out(n_checks);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < n_checks; ++i) out[i].merge(part[i]);
  return out;
}

Check summarize(const std::string& name, const Tally& t, const std::string& scope) {
  Check c{name, t.failures == 0, ""};
  if (c.passed) {
    c.detail = scope + ": ok";
  } else {
    std::ostringstream os;
    os << scope << ": " << t.failures << " failure(s), first: " << t.detail;
    c.detail = os.str();
  }
  return c;
}

std::string range_text(const char* what, std::int64_t lo, std::int64_t hi) {
  return std::string(what) + " " + std::to_string(lo) + ".." + std::to_string(hi);
}

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

}  // namespace

SuiteReport verify_regions(std::int64_t kmax, Boundary b) {
  SuiteReport rep{"regions", {}};
  const bool paper = b == Boundary::kPaper;
  // Independent membership predicates on finite pairs.
  auto memberships = [&](std::int64_t km, std::int64_t kp) {
    std::vector<Region> hits;
    if (km == 0) hits.push_back(Region::kR1);
    if (km > 0 && kp > 0 && kp <= km) hits.push_back(Region::kR4);
    if (km > 0 && (paper ? 3 * km <= kp : 3 * km < kp)) hits.push_back(Region::kR2);
    if (km > 0 && kp > km && (paper ? 3 * km > kp : 3 * km >= kp)) hits.push_back(Region::kR3);
    return hits;
  };
  auto tallies = scan_range(0, kmax, 1, [&](std::int64_t km, const Recorder& rec) {
    for (std::int64_t kp = 1; kp <= kmax; ++kp) {
      const auto hits = memberships(km, kp);
      const Region got = region_of({km, kp}, b);
      if (hits.size() != 1 || hits[0] != got)
        rec(0, km, "(" + std::to_string(km) + ", " + std::to_string(kp) + ") -> " + to_string(got));
    }
  });
  rep.checks.push_back(summarize("finite-partition", tallies[0], "k-, k+ <= " + std::to_string(kmax)));

  Tally inf;
  const std::int64_t I = GapPair::kInfinity;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    if (region_of({k, I}, b) != Region::kR2) inf.record(k, "(" + std::to_string(k) + ", inf) not R2");
    if (region_of({I, k}, b) != Region::kR4) inf.record(k, "(inf, " + std::to_string(k) + ") not R4");
  }
  if (region_of({0, I}, b) != Region::kR1) inf.record(0, "(0, inf) not R1");
  bool rejected = false;
  try {
    region_of({I, I}, b);
  } catch (const DomainError&) {
    rejected = true;
  }
  if (!rejected) inf.record(I - 1, "(inf, inf) accepted");
  rep.checks.push_back(summarize("infinite-cases", inf, "pairs with an infinite coordinate"));
  return rep;
}

SuiteReport verify_first_return(std::int64_t gap_max, Boundary b) {
  SuiteReport rep{"fr", {}};
  enum { kPattern, kDoubling, kExpansion, kLowerBound, kReturnBound, kCount };
  auto tallies = scan_range(3, gap_max, kCount, [&](std::int64_t gap, const Recorder& rec) {
    const BlockProfile bp = return_profile(gap, b);
    const std::string g = "gap " + std::to_string(gap);
    if (!bp.r) {
      rec(kPattern, gap, g + ": no R3 visit");
      return;
    }
    const int r = *bp.r;
    const int p = bp.p;
    bool pattern = bp.regions.size() == static_cast<std::size_t>(p) && bp.regions[0] == Region::kR1;
    for (int q = 1; pattern && q < p; ++q) {
      const Region want = q < r ? Region::kR2 : (q == r ? Region::kR3 : Region::kR4);
      pattern = bp.regions[static_cast<std::size_t>(q)] == want;
    }
    if (!pattern) rec(kPattern, gap, g + ": region pattern broken");
    for (int q = 1; q <= r; ++q)
      if (bp.orbit[static_cast<std::size_t>(q)].minus != pow2(q - 1)) {
        rec(kDoubling, gap, g + ", q = " + std::to_string(q) + ": k- = " +
                                std::to_string(bp.orbit[static_cast<std::size_t>(q)].minus));
        break;
      }
    for (int q = r + 1; q < p; ++q) {
      std::int64_t want = pow2(p - 1 - q);
      for (int i = 0; i < p - q - 1; ++i) want += static_cast<std::int64_t>(bp.epsilon.at(q + i)) << i;
      if (bp.orbit[static_cast<std::size_t>(q)].plus != want) {
        rec(kExpansion, gap, g + ", q = " + std::to_string(q) + ": k+ = " +
                                 std::to_string(bp.orbit[static_cast<std::size_t>(q)].plus) + ", expansion " +
                                 std::to_string(want));
        break;
      }
    }
    if (2 * r < p - 3) rec(kLowerBound, gap, g + ": r = " + std::to_string(r) + ", p = " + std::to_string(p));
    if (p - 2 - r > (p + 1) / 2 - 1)
      rec(kReturnBound, gap, g + ": r = " + std::to_string(r) + ", p = " + std::to_string(p));
  });
  const std::string scope = range_text("gaps", 3, gap_max);
  rep.checks.push_back(summarize("region-pattern", tallies[kPattern], scope));
  rep.checks.push_back(summarize("kminus-doubling", tallies[kDoubling], scope));
  rep.checks.push_back(summarize("kplus-expansion", tallies[kExpansion], scope));
  rep.checks.push_back(summarize("r-lower-bound", tallies[kLowerBound], scope));
  rep.checks.push_back(summarize("return-bound", tallies[kReturnBound], scope));
  return rep;
}

SuiteReport verify_step_lemma(std::int64_t kplus_max, int samples, std::uint64_t seed, Boundary b) {
  SuiteReport rep{"injec", {}};
  enum { kHalfGap, kEquality, kCeilHalf, kSqrt, kCount };
  auto tallies = scan_range(2, kplus_max, kCount, [&](std::int64_t kp, const Recorder& rec) {
    for (std::int64_t km = 1; km < kp; ++km) {
      const GapPair k{km, kp};
      if (region_of(k, b) != Region::kR3) continue;
      const std::int64_t L = step_length(k, b);
      const std::string at = to_string(k);
      if (2 * L < kp - km) rec(kHalfGap, kp, at + ": L = " + std::to_string(L));
      if ((2 * L == kp - km) != (kp == 3 * km)) rec(kEquality, kp, at + ": L = " + std::to_string(L));
      if (L > (kp + 1) / 2) rec(kCeilHalf, kp, at + ": L = " + std::to_string(L));
      const auto root = static_cast<std::int64_t>(
          ceil_sqrt(static_cast<unsigned __int128>(8) * static_cast<unsigned __int128>(km) *
                    static_cast<unsigned __int128>(kp - L)));
      const std::int64_t signed_z = kp + km - root;
      if (signed_z < 0 || signed_z > 4) rec(kSqrt, kp, at + ": k+ + k- - ceil(sqrt) = " + std::to_string(signed_z));
    }
  });
  const std::string scope = "R3 pairs with k+ <= " + std::to_string(kplus_max);
  rep.checks.push_back(summarize("step-at-least-half-gap", tallies[kHalfGap], scope));
  rep.checks.push_back(summarize("equality-iff-boundary", tallies[kEquality], scope));
  rep.checks.push_back(summarize("step-at-most-ceil-half", tallies[kCeilHalf], scope));
  rep.checks.push_back(summarize("sqrt-offset-in-0..4", tallies[kSqrt], scope));

  const GapProfile g = GapProfile::harmonic(1.0);
  const double ln2 = std::log(2.0);
  auto deviation = [&](std::int64_t km, std::int64_t kp) {
    const std::int64_t L = step_length({km, kp}, b);
    const double v = window_sum(g, km, (kp + km) / 2) + window_sum(g, kp - L, (kp + km + 1) / 2);
    return v - ln2;
  };
  std::mt19937_64 rng(seed);
  double worst = std::abs(deviation(1000, 2000));
  std::string worst_at = "(1000, 2000)";
  const double at_fixed = deviation(1000, 2000) + ln2;
  int drawn = 0;
  while (drawn < samples) {
    std::uniform_int_distribution<std::int64_t> dm(1000, 100000);
    const std::int64_t km = dm(rng);
    std::uniform_int_distribution<std::int64_t> dp(km + 1, 3 * km);
    const std::int64_t kp = dp(rng);
    if (region_of({km, kp}, b) != Region::kR3) continue;
    ++drawn;
    const double d = std::abs(deviation(km, kp));
    if (d > worst) {
      worst = d;
      worst_at = to_string(GapPair{km, kp});
    }
  }
  std::ostringstream os;
  os.precision(6);
  os << "value at (1000, 2000) = " << at_fixed << "; max |sum - log 2| = " << worst << " at " << worst_at << " over "
     << samples << " samples (seed " << seed << ")";
  rep.checks.push_back({"window-sum-near-log2", worst <= 0.01, os.str()});
  return rep;
}

std::vector<std::int64_t> boundary_anomalies(std::int64_t gap_max, Boundary b) {
  std::vector<char> flag(static_cast<std::size_t>(std::max<std::int64_t>(gap_max + 1, 0)), 0);
  const std::int64_t lo = 3;
  if (gap_max >= lo)
    parallel_for(static_cast<std::size_t>(gap_max - lo + 1), [&](std::size_t i) {
      const std::int64_t gap = lo + static_cast<std::int64_t>(i);
      flag[static_cast<std::size_t>(gap)] = return_profile(gap, b).word.empty() ? 1 : 0;
    });
  std::vector<std::int64_t> out;
  for (std::int64_t gap = lo; gap <= gap_max; ++gap)
    if (flag[static_cast<std::size_t>(gap)]) out.push_back(gap);
  return out;
}

SuiteReport verify_codec(const CodecSuiteOptions& o) {
  SuiteReport rep{"codec", {}};
  const Boundary b = o.boundary;
  const auto anomalies = boundary_anomalies(o.gap_max, b);
  const std::set<std::int64_t> skip(anomalies.begin(), anomalies.end());

  {
    std::ostringstream os;
    os << "gaps without a block word:";
    for (std::size_t i = 0; i < anomalies.size() && i < 12; ++i) os << ' ' << anomalies[i];
    if (anomalies.size() > 12) os << " ... (" << anomalies.size() << " total)";
    if (anomalies.empty()) os << " none";
    const std::vector<std::int64_t> expected =
        b == Boundary::kPaper && o.gap_max >= 4 ? std::vector<std::int64_t>{4} : std::vector<std::int64_t>{};
    rep.checks.push_back({"anomaly-set", anomalies == expected, os.str()});
  }

  const std::size_t n = o.gap_max > 0 ? static_cast<std::size_t>(o.gap_max) : 0;
  std::vector<CodeWord> images(n);
  enum { kRoundtrip, kCount };
  auto tallies = scan_range(1, o.gap_max, kCount, [&](std::int64_t gap, const Recorder& rec) {
    if (skip.count(gap)) return;
    CodeWord w = encode_block(gap, b);
    try {
      const std::int64_t back = decode_word(w, b);
      if (back != gap) rec(kRoundtrip, gap, "gap " + std::to_string(gap) + " decodes to " + std::to_string(back));
    } catch (const DecodeError& e) {
      rec(kRoundtrip, gap, "gap " + std::to_string(gap) + ": " + e.what());
    }
    images[static_cast<std::size_t>(gap - 1)] = std::move(w);
  });
  const std::string scope = range_text("gaps", 1, o.gap_max) +
                            (skip.empty() ? std::string() : " minus " + std::to_string(skip.size()) + " without a word");
  rep.checks.push_back(summarize("roundtrip", tallies[kRoundtrip], scope));

  {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
      if (!images[i].empty()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return images[a] < images[c]; });
    Tally t;
    for (std::size_t i = 1; i < order.size(); ++i)
      if (images[order[i]] == images[order[i - 1]])
        t.record(static_cast<std::int64_t>(std::min(order[i], order[i - 1]) + 1),
                 "gaps " + std::to_string(order[i - 1] + 1) + " and " + std::to_string(order[i] + 1) + " share " +
                     format_word(images[order[i]]));
    rep.checks.push_back(summarize("distinct-images", t, scope));
  }
  if (o.injectivity_only) return rep;

  auto positions = scan_range(1, std::min(o.position_gap_max, o.gap_max), 1, [&](std::int64_t gap, const Recorder& rec) {
    if (skip.count(gap)) return;
    const CodeSegment seg{SegmentKind::kBlock, encode_block(gap, b)};
    BitSequence x = bits_with_zero_tails("1" + std::string(static_cast<std::size_t>(gap - 1), '0') + "1", 0);
    for (std::size_t q = 0; q < seg.letters.size(); ++q) {
      const GapPair want = gap_pair(x);
      GapPair got;
      try {
        got = decode_position(seg, q, b);
      } catch (const DecodeError& e) {
        rec(0, gap, "gap " + std::to_string(gap) + ", letter " + std::to_string(q + 1) + ": " + e.what());
        return;
      }
      if (!(got == want)) {
        rec(0, gap, "gap " + std::to_string(gap) + ", letter " + std::to_string(q + 1) + ": decoded " +
                        to_string(got) + ", simulated " + to_string(want));
        return;
      }
      x = accel_step(x, b);
    }
  });
  rep.checks.push_back(
      summarize("position-recovery", positions[0], range_text("gaps", 1, std::min(o.position_gap_max, o.gap_max))));

  enum { kEquivariant, kInverse, kEqCount };
  auto equiv = scan_range(1, std::min(o.equivariance_gap_max, o.gap_max), kEqCount,
                          [&](std::int64_t gap, const Recorder& rec) {
                            if (skip.count(gap)) return;
                            std::vector<Bit> period(static_cast<std::size_t>(gap), 0);
                            period[0] = 1;
                            BitSequence y = BitSequence::periodic(period);
                            const int p = return_profile(gap, b).p;
                            for (int q = 0; q < p; ++q) {
                              const CodeSequence u = encode_sequence(y, b);
                              const BitSequence next = accel_step(y, b);
                              if (!(encode_sequence(next, b) == u.shifted(1)))
                                rec(kEquivariant, gap, "gap " + std::to_string(gap) + ", step " + std::to_string(q));
                              // The all-ones sequence shares its image with *.
                              if (gap > 1 && !(decode_sequence(u, b) == y))
                                rec(kInverse, gap, "gap " + std::to_string(gap) + ", step " + std::to_string(q));
                              y = next;
                            }
                          });
  const std::string eq_scope = "periodic points with gap <= " + std::to_string(std::min(o.equivariance_gap_max, o.gap_max));
  rep.checks.push_back(summarize("shift-equivariance", equiv[kEquivariant], eq_scope));
  rep.checks.push_back(summarize("sequence-roundtrip", equiv[kInverse], eq_scope + " except gap 1"));

  const bool collides = collides_with_singular_code(encode_sequence(BitSequence::constant(1), b));
  rep.checks.push_back({"all-ones-shares-singular-image", collides,
                        collides ? "image of the all-ones sequence equals the image of *"
                                 : "all-ones image differs from the image of *"});
  return rep;
}

SuiteReport verify_fiber(int m_max) {
  SuiteReport rep{"fiber", {}};
  const auto sfts = fiber_sfts();
  const double half_log2 = std::log(2.0) / 2;
  for (std::size_t s = 0; s < sfts.size(); ++s) {
    Tally counts;
    double worst = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const BigCount got = sfts[s].word_count(2 * m);
      const BigCount want = BigCount(1) << m;
      if (got != want) counts.record(m, "N(" + std::to_string(2 * m) + ") = " + got.str());
      worst = std::max(worst, std::abs(sft_entropy_wordcount(sfts[s], 2 * m).value - half_log2));
    }
    const std::string tag = "sft-" + std::to_string(s + 1);
    rep.checks.push_back(summarize(tag + "-counts", counts, "N(2m) = 2^m for m <= " + std::to_string(m_max)));
    std::ostringstream os;
    os << "max |(1/2m) log N(2m) - log 2 / 2| = " << worst;
    rep.checks.push_back({tag + "-entropy", worst <= 1e-12, os.str()});
    Tally enumeration;
    for (int n = 1; n <= 10; ++n) {
      const auto words = sfts[s].enumerate(n);
      if (BigCount(words.size()) != sfts[s].word_count(n))
        enumeration.record(n, "n = " + std::to_string(n) + ": " + std::to_string(words.size()) + " enumerated");
    }
    rep.checks.push_back(summarize(tag + "-enumeration", enumeration, "1 <= n <= 10"));
  }
  return rep;
}

SuiteReport verify_roof_prime(Boundary b) {
  SuiteReport rep{"roof-prime", {}};
  const double ln2 = std::log(2.0);
  {
    bool ok = true;
    std::ostringstream os;
    for (double l : {1.0, 2.0, 0.5}) {
      const RoofFunction f = RoofFunction::from_profile(GapProfile::harmonic(l));
      const double v = roof_prime(singularity(), f, b);
      ok = ok && v == l * ln2;
      os << "l = " << l << ": " << v << "; ";
    }
    rep.checks.push_back({"value-at-singularity", ok, os.str()});
  }
  {
    Tally t;
    const GapProfile profiles[] = {GapProfile::harmonic(1.0), GapProfile::power(0.5),
                                   GapProfile::power(0.5).truncated(2.0), GapProfile::log_harmonic()};
    const std::int64_t I = GapPair::kInfinity;
    for (const auto& g : profiles) {
      const RoofFunction f = RoofFunction::from_profile(g);
      auto probe = [&](const GapPair& k) {
        const double v = roof_prime(k, f, b);
        if (!(v > 0.0)) t.record(0, g.describe() + " at " + to_string(k));
      };
      for (std::int64_t km = 0; km <= 120; ++km) {
        for (std::int64_t kp = 1; kp <= 120; ++kp) probe({km, kp});
        if (km > 0) probe({km, I});
        probe({I, km + 1});
      }
      probe({0, I});
    }
    rep.checks.push_back(summarize("positivity", t, "pairs up to 120 and infinite cases"));
  }
  {
    const GapProfile g = GapProfile::harmonic(1.0);
    std::ostringstream os;
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (std::int64_t K : {250, 500, 1000, 2000, 4000}) {
      const double v = roof_prime_continuity_probe(g, K, b);
      os << "K=" << K << ": " << v << "; ";
      decreasing = decreasing && v < prev;
      prev = v;
    }
    rep.checks.push_back({"probe-decreasing", decreasing, os.str()});
    const double at2000 = roof_prime_continuity_probe(g, 2000, b);
    rep.checks.push_back({"probe-harmonic-1", at2000 <= 0.02, "K = 2000: " + std::to_string(at2000)});
    const double two = roof_prime_continuity_probe(GapProfile::harmonic(2.0), 2000, b);
    rep.checks.push_back({"probe-harmonic-2", two <= 0.04, "K = 2000: " + std::to_string(two)});
  }
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"regions", "fr", "injec", "codec", "fiber", "roof-prime"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "regions") return verify_regions(2000, o.boundary);
  if (name == "fr") return verify_first_return(o.gap_max, o.boundary);
  if (name == "injec") return verify_step_lemma(5000, 1000, o.seed, o.boundary);
  if (name == "codec") {
    CodecSuiteOptions c;
    c.gap_max = o.gap_max;
    c.position_gap_max = std::min<std::int64_t>(10000, o.gap_max);
    c.boundary = o.boundary;
    return verify_codec(c);
  }
  if (name == "fiber") return verify_fiber(20);
  if (name == "roof-prime") return verify_roof_prime(o.boundary);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace sflow
