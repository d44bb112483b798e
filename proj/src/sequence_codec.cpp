#include "sflow/sequence_codec.hpp"

#include <map>
#include <numeric>

#include "sflow/error.hpp"

namespace sflow {

namespace {

// Block decomposition of an eventually periodic sequence by marker positions.
struct MarkerLayout {
  bool any = false;
  bool left_periodic = false;   // the left tail contains markers
  bool right_periodic = false;  // the right tail contains markers
  std::vector<std::int64_t> left_cycle;   // one period of block lengths, ending at anchor
  std::vector<std::int64_t> middle;       // block lengths from anchor to end
  std::vector<std::int64_t> right_cycle;  // one period of block lengths, starting at end
  std::int64_t anchor = 0;                // first marker after the left cycle
  std::int64_t end = 0;                   // start of the right cycle, or the last marker
};

template <typename Symbol, typename Pred>
MarkerLayout layout_markers(const EventuallyPeriodic<Symbol>& seq, Pred is_marker) {
  MarkerLayout L;
  if (!seq.any_of(is_marker)) return L;
  L.any = true;
  const auto& lp = seq.left_period();
  const auto& rp = seq.right_period();
  L.left_periodic = std::any_of(lp.begin(), lp.end(), is_marker);
  L.right_periodic = std::any_of(rp.begin(), rp.end(), is_marker);
  const std::int64_t wb = seq.window_begin();
  const std::int64_t we = seq.window_end();

  if (L.right_periodic) {
    L.end = *seq.find_forward_if(we, is_marker);
    const auto period = static_cast<std::int64_t>(rp.size());
    for (std::int64_t c = L.end; c < L.end + period;) {
      const std::int64_t n = *seq.find_forward_if(c + 1, is_marker);
      L.right_cycle.push_back(n - c);
      c = n;
    }
  } else {
    L.end = *seq.find_backward_if(we - 1, is_marker);
  }
  if (L.left_periodic) {
    L.anchor = *seq.find_backward_if(wb - 1, is_marker);
    const auto period = static_cast<std::int64_t>(lp.size());
    for (std::int64_t c = L.anchor; c > L.anchor - period;) {
      const std::int64_t n = *seq.find_backward_if(c - 1, is_marker);
      L.left_cycle.insert(L.left_cycle.begin(), c - n);
      c = n;
    }
  } else {
    L.anchor = *seq.find_forward_if(wb, is_marker);
  }
  for (std::int64_t c = L.anchor; c < L.end;) {
    const std::int64_t n = *seq.find_forward_if(c + 1, is_marker);
    L.middle.push_back(n - c);
    c = n;
  }
  return L;
}

std::int64_t sum(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto x : v) s = checked_add(s, x);
  return s;
}

class BlockWords {
 public:
  explicit BlockWords(Boundary b) : b_(b) {}
  const CodeWord& operator()(std::int64_t gap) {
    auto it = cache_.find(gap);
    if (it == cache_.end()) it = cache_.emplace(gap, encode_block(gap, b_)).first;
    return it->second;
  }
  std::int64_t code_length(const std::vector<std::int64_t>& gaps) {
    std::int64_t s = 0;
    for (auto g : gaps) s += static_cast<std::int64_t>((*this)(g).size());
    return s;
  }
  CodeWord concat(const std::vector<std::int64_t>& gaps) {
    CodeWord w;
    for (auto g : gaps) {
      const auto& bw = (*this)(g);
      w.insert(w.end(), bw.begin(), bw.end());
    }
    return w;
  }

 private:
  Boundary b_;
  std::map<std::int64_t, CodeWord> cache_;
};

std::vector<Bit> block_bits(const std::vector<std::int64_t>& gaps) {
  std::vector<Bit> out;
  for (auto g : gaps) {
    out.push_back(1);
    out.insert(out.end(), static_cast<std::size_t>(g - 1), Bit{0});
  }
  return out;
}

bool is_one_letter(const CodeLetter& c) { return c.y == 1; }

}  // namespace

CodeSequence singular_code() { return CodeSequence::constant(crossed_letter(1)); }

bool collides_with_singular_code(const CodeSequence& u) { return u == singular_code(); }

CodeSequence encode_sequence(const BitSequence& x, Boundary b) {
  if (is_singularity(x)) return singular_code();
  const MarkerLayout L = layout_markers(x, [](Bit v) { return v == 1; });
  if (!L.left_periodic || !L.right_periodic)
    throw DomainError("x must have 1s in both tails (the domain Y intersect Z); zero tails are not coded");

  BlockWords words(b);
  const GapPair k = gap_pair(x);
  const std::int64_t block_start = -k.minus;
  const BlockProfile profile = return_profile(k.minus + k.plus, b);
  std::int64_t q = -1;
  for (int i = 0; i < profile.p; ++i)
    if (profile.offsets[static_cast<std::size_t>(i)] == k.minus) q = i;
  if (q < 0)
    throw DomainError("x is outside Y: its origin is not on the S-orbit of the start of its block");

  const std::int64_t middle_codes = words.code_length(L.middle);
  std::int64_t code_index = 0;
  auto walk_forward = [&](const std::vector<std::int64_t>& gaps, std::int64_t rem) {
    std::int64_t bits = 0, codes = 0;
    for (auto g : gaps) {
      if (bits == rem) return codes;
      bits += g;
      codes += static_cast<std::int64_t>(words(g).size());
    }
    throw DomainError("block decomposition mismatch");
  };
  if (block_start >= L.end) {
    const std::int64_t rel = block_start - L.end;
    const std::int64_t period = sum(L.right_cycle);
    const std::int64_t cycles = rel / period;
    code_index = middle_codes + checked_mul(cycles, words.code_length(L.right_cycle)) +
                 walk_forward(L.right_cycle, rel % period);
  } else if (block_start >= L.anchor) {
    code_index = walk_forward(L.middle, block_start - L.anchor);
  } else {
    const std::int64_t rel = L.anchor - block_start;
    const std::int64_t period = sum(L.left_cycle);
    const std::int64_t cycles = (rel - 1) / period;
    const std::int64_t rem = rel - cycles * period;
    std::int64_t bits = 0, codes = 0;
    for (auto it = L.left_cycle.rbegin(); it != L.left_cycle.rend() && bits < rem; ++it) {
      bits += *it;
      codes += static_cast<std::int64_t>(words(*it).size());
    }
    if (bits != rem) throw DomainError("block decomposition mismatch");
    code_index = -(checked_mul(cycles, words.code_length(L.left_cycle)) + codes);
  }
  return CodeSequence(words.concat(L.left_cycle), words.concat(L.middle), checked_add(code_index, q),
                      words.concat(L.right_cycle));
}

BitSequence decode_sequence(const CodeSequence& u, Boundary b) {
  if (collides_with_singular_code(u)) return singularity();
  const MarkerLayout L = layout_markers(u, is_one_letter);
  if (!L.any) return singularity();

  // Decode every block of the decomposition.
  auto decode_blocks = [&](std::int64_t start, const std::vector<std::int64_t>& lens) {
    std::vector<std::int64_t> gaps;
    for (auto len : lens) {
      gaps.push_back(decode_word(u.slice(start, len), b));
      start += len;
    }
    return gaps;
  };
  const std::vector<std::int64_t> left_gaps = decode_blocks(L.anchor - sum(L.left_cycle), L.left_cycle);
  const std::vector<std::int64_t> mid_gaps = decode_blocks(L.anchor, L.middle);
  const std::vector<std::int64_t> right_gaps = decode_blocks(L.end, L.right_cycle);

  // Open ends: a past run of y = 4 letters with bits at odd distances, a future run of y = 2 letters.
  if (!L.left_periodic) {
    const auto period = static_cast<std::int64_t>(u.left_period().size());
    const std::int64_t lowest = std::min(u.window_begin(), L.anchor) - 2 * period - 2;
    for (std::int64_t c = L.anchor - 1; c >= lowest; --c) {
      const CodeLetter v = u.at(c);
      if (v.y != 4) throw DecodeError("past-shape", "letters before the first 1-letter must have y = 4");
      const bool bit_slot = (L.anchor - c) % 2 == 1;
      if (bit_slot ? (v.crossed() || v.z > 1) : !v.crossed())
        throw DecodeError("z-pattern", "past letters alternate a bit 0/1 and x, starting next to the 1-letter");
    }
  }
  if (!L.right_periodic) {
    const auto period = static_cast<std::int64_t>(u.right_period().size());
    const std::int64_t highest = std::max(u.window_end(), L.end) + period + 1;
    for (std::int64_t c = L.end + 1; c <= highest; ++c)
      if (u.at(c) != crossed_letter(2))
        throw DecodeError("future-shape", "letters after the last 1-letter must be 2^x");
  }

  // Locate the origin relative to the anchor, in code letters and then in bits.
  std::int64_t bit_rel = 0;
  const std::int64_t r0 = -L.anchor;
  const std::int64_t mid_codes = L.end - L.anchor;
  const std::int64_t mid_bits = sum(mid_gaps);
  auto walk_blocks = [&](std::int64_t start_code, const std::vector<std::int64_t>& lens,
                         const std::vector<std::int64_t>& gaps, std::int64_t rem) {
    std::int64_t codes = 0, bits = 0;
    for (std::size_t i = 0; i < lens.size(); ++i) {
      if (rem < codes + lens[i]) {
        const GapPair k = decode_position({SegmentKind::kBlock, u.slice(start_code + codes, lens[i])},
                                          static_cast<std::size_t>(rem - codes), b);
        return bits + k.minus;
      }
      codes += lens[i];
      bits += gaps[i];
    }
    throw DomainError("block decomposition mismatch");
  };
  if (r0 >= mid_codes) {
    const std::int64_t rel = r0 - mid_codes;
    if (L.right_periodic) {
      const std::int64_t period = sum(L.right_cycle);
      const std::int64_t cycles = rel / period;
      bit_rel = mid_bits + checked_mul(cycles, sum(right_gaps)) +
                walk_blocks(L.end + cycles * period, L.right_cycle, right_gaps, rel % period);
    } else {
      const GapPair k =
          decode_position({SegmentKind::kFuture, u.slice(L.end, rel + 1)}, static_cast<std::size_t>(rel), b);
      bit_rel = mid_bits + k.minus;
    }
  } else if (r0 >= 0) {
    bit_rel = walk_blocks(L.anchor, L.middle, mid_gaps, r0);
  } else {
    const std::int64_t rel = -r0;
    if (L.left_periodic) {
      const std::int64_t period = sum(L.left_cycle);
      const std::int64_t cycles = (rel - 1) / period;
      const std::int64_t rem = rel - cycles * period;
      const std::int64_t cycle_start = L.anchor - (cycles + 1) * period;
      bit_rel = -checked_mul(cycles + 1, sum(left_gaps)) +
                walk_blocks(cycle_start, L.left_cycle, left_gaps, period - rem);
    } else {
      const GapPair k = decode_position({SegmentKind::kPast, u.slice(L.anchor - 2 * rel, 2 * rel)},
                                        static_cast<std::size_t>(rel), b);
      bit_rel = -k.plus;
    }
  }

  std::vector<Bit> window = block_bits(mid_gaps);
  if (!L.right_periodic) window.push_back(1);
  std::vector<Bit> lw = L.left_periodic ? block_bits(left_gaps) : std::vector<Bit>{0};
  std::vector<Bit> rw = L.right_periodic ? block_bits(right_gaps) : std::vector<Bit>{0};
  return BitSequence(std::move(lw), std::move(window), bit_rel, std::move(rw));
}

}  // namespace sflow
