#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sflow/bit_sequence.hpp"

namespace sflow {

enum class Region { kR1 = 1, kR2 = 2, kR3 = 3, kR4 = 4 };

/// Placement of the pairs with k_plus = 3 k_minus: in R3 (adjusted, default) or in R2 (paper).
enum class Boundary { kAdjusted, kPaper };

std::string to_string(Region r);
std::string to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

/// R1: k- = 0. R4: 0 < k+ <= k-. R2: 0 < 3k- < k+ (adjusted) or 3k- <= k+ (paper). R3: the rest.
Region region_of(const GapPair& k, Boundary b = Boundary::kAdjusted);

/// 1 on R1, k- on R2, k+ - floor((k- + k+)^2 / (8 k-)) on R3, ceil(k+/2) on R4.
std::int64_t step_length(const GapPair& k, Boundary b = Boundary::kAdjusted);

/// Sx = sigma^{L(k_x)} x, S* = *.
BitSequence accel_step(const BitSequence& x, Boundary b = Boundary::kAdjusted);

/// Gap coordinates after one step, valid while the step stays inside the current zero run.
GapPair advance_pair(const GapPair& k, Boundary b = Boundary::kAdjusted);

/// Smallest integer s with s^2 >= n.
unsigned __int128 ceil_sqrt(unsigned __int128 n);

}  // namespace sflow
