#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "sflow/eventually_periodic.hpp"

namespace sflow {

using Bit = std::uint8_t;
using BitSequence = EventuallyPeriodic<Bit>;

inline constexpr std::int64_t kDefaultMaxGap = std::int64_t{1} << 62;

/// Distances from the origin to the nearest 1: k_minus looks at n <= 0, k_plus at n >= 1.
struct GapPair {
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

  std::int64_t minus = kInfinity;
  std::int64_t plus = kInfinity;

  bool minus_infinite() const { return minus == kInfinity; }
  bool plus_infinite() const { return plus == kInfinity; }
  bool singular() const { return minus_infinite() && plus_infinite(); }

  friend bool operator==(const GapPair&, const GapPair&) = default;
};

std::string to_string(const GapPair& k);

/// The all-zero sequence *.
BitSequence singularity();
bool is_singularity(const BitSequence& x);

/// Word of '0'/'1' characters with zero tails; `origin_index` is the word index of coordinate 0.
BitSequence bits_with_zero_tails(std::string_view word, std::int64_t origin_index = 0);

GapPair gap_pair(const BitSequence& x, std::int64_t max_gap = kDefaultMaxGap);

/// min{|n| : x_n = 1}; empty for *.
std::optional<std::int64_t> singularity_depth(const BitSequence& x);

/// min{|n| : x_n != y_n}; empty when x = y.
std::optional<std::int64_t> first_difference(const BitSequence& x, const BitSequence& y);

/// 2^{-m} with m = first_difference(x, y), or 0 when x = y.
double seq_distance(const BitSequence& x, const BitSequence& y);

/// Literal grammar:
///   literal := '*' | tail '|' body '|' tail [ '@' integer ]
///   tail    := symbol '*' | '(' symbols ')' '*'
///   body    := symbols, optionally with exactly one symbol wrapped as '[s]'
/// The bracketed symbol (or the body index given after '@', default 0) sits at coordinate 0.
BitSequence parse_bit_sequence(std::string_view text);
std::string to_literal(const BitSequence& x);

}  // namespace sflow
