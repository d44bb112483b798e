#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sflow/accel.hpp"
#include "sflow/code_letter.hpp"
#include "sflow/word_count.hpp"

namespace sflow {

/// The S-orbit of a point sitting on the first 1 of a block 1 0^{gap-1} 1.
struct BlockProfile {
  std::int64_t gap = 0;
  int p = 0;                       // S-steps until the next 1
  std::optional<int> r;            // index of the R3 visit (absent for gaps 1, 2 and boundary anomalies)
  std::map<int, int> epsilon;      // q -> bit for r < q <= p - 2
  CodeWord word;                   // empty when r is absent for gap >= 3
  std::vector<GapPair> orbit;      // gap pairs of S^q x, 0 <= q < p
  std::vector<Region> regions;     // regions of S^q x
  std::vector<std::int64_t> offsets;  // coordinate of S^q x inside the block, 0 <= q <= p
};

BlockProfile return_profile(std::int64_t gap, Boundary b = Boundary::kAdjusted);

/// The block word Psi(1 0^{gap-1}). Throws DomainError when the orbit has no R3 visit.
CodeWord encode_block(std::int64_t gap, Boundary b = Boundary::kAdjusted);

/// Inverse of encode_block; malformed words raise DecodeError naming the violated constraint.
std::int64_t decode_word(std::span<const CodeLetter> word, Boundary b = Boundary::kAdjusted);

enum class SegmentKind {
  kBlock,   // a complete block word
  kFuture,  // a 1-letter followed by the letters after it, with no later 1-letter
  kPast     // letters (all y = 4) immediately preceding a 1-letter, which is not included
};

struct CodeSegment {
  SegmentKind kind;
  CodeWord letters;
};

/// Gap coordinates of the point whose coded image has letters[offset] at coordinate 0.
GapPair decode_position(const CodeSegment& segment, std::size_t offset, Boundary b = Boundary::kAdjusted);

/// The two SFTs over the singular point, generated by {2^0 2^x, 2^1 2^x} and {4^0 4^x, 4^1 4^x}.
std::array<GeneratedShift, 2> fiber_sfts();

}  // namespace sflow
