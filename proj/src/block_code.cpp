#include "sflow/block_code.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "sflow/error.hpp"

namespace sflow {

namespace {

// k+ of the point d >= 1 steps before the 1-letter at index e; the low bits sit at indices e + 3 - 2d'.
std::int64_t kplus_before_one(std::span<const CodeLetter> letters, std::int64_t e, std::int64_t d) {
  if (d < 1) throw DecodeError("position", "point must lie before the next 1-letter");
  if (d - 1 >= 62) throw ResourceError("gap coordinate exceeds 2^62");
  std::int64_t k = std::int64_t{1} << (d - 1);
  for (std::int64_t dp = 2; dp <= d; ++dp) {
    const std::int64_t idx = e + 3 - 2 * dp;
    if (idx < 0)
      throw DecodeError("ambiguous-context", "bit for the point " + std::to_string(dp) +
                                                 " steps before the 1-letter lies outside the given letters");
    const CodeLetter c = letters[static_cast<std::size_t>(idx)];
    if (c.crossed() || c.z > 1)
      throw DecodeError("z-pattern", "letter " + std::to_string(idx + 1) + " must carry a bit 0 or 1");
    k += static_cast<std::int64_t>(c.z) << (d - dp);
  }
  return k;
}

}  // namespace

BlockProfile return_profile(std::int64_t gap, Boundary b) {
  if (gap < 1) throw DomainError("gap must be a positive integer");
  BlockProfile bp;
  bp.gap = gap;
  GapPair k{0, gap};
  std::int64_t pos = 0;
  bp.offsets.push_back(0);
  for (;;) {
    const std::int64_t L = step_length(k, b);
    bp.orbit.push_back(k);
    bp.regions.push_back(region_of(k, b));
    pos += L;
    bp.offsets.push_back(pos);
    if (L >= k.plus) break;
    k = GapPair{k.minus + L, k.plus - L};
  }
  bp.p = static_cast<int>(bp.orbit.size());

  if (gap == 1) {
    bp.word = {crossed_letter(1)};
    return bp;
  }
  if (gap == 2) {
    bp.word = {crossed_letter(1), crossed_letter(4)};
    return bp;
  }
  const auto it = std::find(bp.regions.begin(), bp.regions.end(), Region::kR3);
  if (it == bp.regions.end()) return bp;
  const int r = static_cast<int>(it - bp.regions.begin());
  bp.r = r;
  if (r + 1 < bp.p) {
    const std::int64_t kp = bp.orbit[static_cast<std::size_t>(r + 1)].plus;
    for (int q = r + 1; q <= bp.p - 2; ++q) bp.epsilon[q] = static_cast<int>((kp >> (q - r - 1)) & 1);
  }

  CodeWord w;
  for (Region reg : bp.regions) w.push_back(crossed_letter(static_cast<int>(reg)));
  const GapPair kr = bp.orbit[static_cast<std::size_t>(r)];
  const std::int64_t L = step_length(kr, b);
  const auto root = ceil_sqrt(static_cast<unsigned __int128>(8) * static_cast<unsigned __int128>(kr.minus) *
                              static_cast<unsigned __int128>(kr.plus - L));
  const __int128 signed_z = static_cast<__int128>(kr.plus) + kr.minus - static_cast<__int128>(root);
  const __int128 z1 = signed_z < 0 ? -signed_z : signed_z;
  if (z1 > 4) throw DomainError("z_1 = " + std::to_string(static_cast<long long>(z1)) + " exceeds 4 for gap " +
                                std::to_string(gap));
  w[0].z = static_cast<std::uint8_t>(z1);
  for (int i = 0; i <= bp.p - 3 - r; ++i) w[static_cast<std::size_t>(bp.p - 2 * i - 1)].z =
      static_cast<std::uint8_t>(bp.epsilon.at(bp.p - 2 - i));
  bp.word = std::move(w);
  return bp;
}

CodeWord encode_block(std::int64_t gap, Boundary b) {
  BlockProfile bp = return_profile(gap, b);
  if (bp.word.empty())
    throw DomainError("gap " + std::to_string(gap) + " has no R3 visit under the " + to_string(b) +
                      " boundary; the block word is undefined");
  return std::move(bp.word);
}

std::int64_t decode_word(std::span<const CodeLetter> word, Boundary b) {
  const auto p = static_cast<std::int64_t>(word.size());
  if (p == 0) throw DecodeError("empty-word", "a block word has at least one letter");
  if (word[0].y != 1) throw DecodeError("leading-letter", "a block word starts with y = 1");
  for (std::int64_t q = 1; q < p; ++q)
    if (word[static_cast<std::size_t>(q)].y == 1)
      throw DecodeError("single-one", "y = 1 may only occur at the first letter (found at letter " +
                                          std::to_string(q + 1) + ")");
  if (p == 1) {
    if (!word[0].crossed()) throw DecodeError("short-word-shape", "a one-letter block word is 1^x");
    return 1;
  }
  if (p == 2) {
    if (!word[0].crossed() || word[1] != crossed_letter(4))
      throw DecodeError("short-word-shape", "a two-letter block word is 1^x 4^x");
    return 2;
  }
  // y-pattern 1 2^{r-1} 3 4^{p-1-r}
  std::int64_t q = 1;
  while (q < p && word[static_cast<std::size_t>(q)].y == 2) ++q;
  if (q >= p || word[static_cast<std::size_t>(q)].y != 3)
    throw DecodeError("region-order", "expected 1, 2..., one 3, then 4...; letter " + std::to_string(q + 1) +
                                          (q < p ? " has y = " + std::to_string(word[static_cast<std::size_t>(q)].y)
                                                 : std::string(" is missing")));
  const std::int64_t r = q;
  if (r + 1 >= p) throw DecodeError("region-order", "at least one y = 4 letter must follow the 3");
  for (std::int64_t i = r + 1; i < p; ++i)
    if (word[static_cast<std::size_t>(i)].y != 4)
      throw DecodeError("region-order", "letter " + std::to_string(i + 1) + " after the 3 must have y = 4");
  if (word[0].crossed() || word[0].z > 4) throw DecodeError("z1-range", "z_1 must lie in 0..4");
  std::set<std::int64_t> bit_positions;  // 1-based
  for (std::int64_t i = 0; i <= p - 3 - r; ++i) bit_positions.insert(p - 2 * i);
  for (std::int64_t pos = 2; pos <= p; ++pos) {
    const CodeLetter c = word[static_cast<std::size_t>(pos - 1)];
    if (bit_positions.count(pos)) {
      if (c.crossed() || c.z > 1)
        throw DecodeError("z-pattern", "letter " + std::to_string(pos) + " must carry a bit 0 or 1");
    } else if (!c.crossed()) {
      throw DecodeError("z-pattern", "letter " + std::to_string(pos) + " must have z = x");
    }
  }
  if (r - 1 >= 62) throw ResourceError("gap coordinate exceeds 2^62");
  const std::int64_t kminus = std::int64_t{1} << (r - 1);
  const std::int64_t kplus = kplus_before_one(word, p, p - r - 1);
  const auto root = ceil_sqrt(static_cast<unsigned __int128>(8) * static_cast<unsigned __int128>(kminus) *
                              static_cast<unsigned __int128>(kplus));
  const unsigned __int128 gap = root + word[0].z;
  if (gap > static_cast<unsigned __int128>(kDefaultMaxGap)) throw ResourceError("decoded gap exceeds 2^62");
  const auto g = static_cast<std::int64_t>(gap);

  CodeWord image;
  try {
    image = encode_block(g, b);
  } catch (const DomainError& e) {
    throw DecodeError("image-consistency", std::string("decoded gap has no block word: ") + e.what());
  }
  if (!std::equal(image.begin(), image.end(), word.begin(), word.end()))
    throw DecodeError("image-consistency", "word is not the block word of the decoded gap " + std::to_string(g));
  return g;
}

GapPair decode_position(const CodeSegment& segment, std::size_t offset, Boundary b) {
  const CodeWord& w = segment.letters;
  if (offset >= w.size()) throw DecodeError("ambiguous-context", "offset lies outside the given letters");
  const CodeLetter c = w[offset];
  switch (segment.kind) {
    case SegmentKind::kBlock: {
      const std::int64_t gap = decode_word(w, b);
      const auto q = static_cast<std::int64_t>(offset) + 1;
      if (c.y == 1) return {0, gap};
      if (c.y == 2 || c.y == 3) {
        const std::int64_t km = std::int64_t{1} << (q - 2);
        return {km, gap - km};
      }
      const std::int64_t kp =
          kplus_before_one(w, static_cast<std::int64_t>(w.size()), static_cast<std::int64_t>(w.size() - offset));
      return {gap - kp, kp};
    }
    case SegmentKind::kFuture: {
      if (w[0].y != 1) throw DecodeError("future-shape", "a future segment starts with a 1-letter");
      for (std::size_t i = 1; i <= offset; ++i)
        if (w[i].y != 2)
          throw DecodeError("future-shape", "letters after the last 1-letter must have y = 2");
      if (offset == 0) return {0, GapPair::kInfinity};
      if (offset - 1 >= 62) throw ResourceError("gap coordinate exceeds 2^62");
      return {std::int64_t{1} << (offset - 1), GapPair::kInfinity};
    }
    case SegmentKind::kPast: {
      for (std::size_t i = offset; i < w.size(); ++i)
        if (w[i].y != 4) throw DecodeError("past-shape", "letters before the first 1-letter must have y = 4");
      const auto e = static_cast<std::int64_t>(w.size());
      return {GapPair::kInfinity, kplus_before_one(w, e, e - static_cast<std::int64_t>(offset))};
    }
  }
  throw DomainError("unknown segment kind");
}

std::array<GeneratedShift, 2> fiber_sfts() {
  return {GeneratedShift({{"2^0", "2^x"}, {"2^1", "2^x"}}), GeneratedShift({{"4^0", "4^x"}, {"4^1", "4^x"}})};
}

}  // namespace sflow
