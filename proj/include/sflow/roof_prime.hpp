#pragma once

#include <cstdint>
#include <vector>

#include "sflow/accel.hpp"
#include "sflow/roof.hpp"

namespace sflow {

/// Birkhoff sum of f over one S-step, for a point with gap coordinates k: sum_{j < L(k)} f(sigma^j x).
/// At * the value is l log 2 with l = lim k g(k).
double roof_prime(const GapPair& k, const RoofFunction& f, Boundary b = Boundary::kAdjusted);
double roof_prime(const BitSequence& x, const RoofFunction& f, Boundary b = Boundary::kAdjusted);

/// The pairs probed at level K: (aK, bK) for multipliers a, b in a fixed grid (including inf).
std::vector<GapPair> continuity_probe_grid(std::int64_t K);

/// max |f'(x) - l log 2| over continuity_probe_grid(K).
double roof_prime_continuity_probe(const GapProfile& g, std::int64_t K, Boundary b = Boundary::kAdjusted);

/// sum_{k = lo}^{hi} g(k): the window sum used in the injectivity lemma.
double window_sum(const GapProfile& g, std::int64_t lo, std::int64_t hi);

}  // namespace sflow
