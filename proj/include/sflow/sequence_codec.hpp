#pragma once

#include "sflow/bit_sequence.hpp"
#include "sflow/block_code.hpp"

namespace sflow {

/// The constant sequence 1^x, used as the image of *.
CodeSequence singular_code();

/// True when u is the image of * (which is also the image of the all-ones sequence).
bool collides_with_singular_code(const CodeSequence& u);

/// Blockwise image of x: every block 1 0^{g-1} is replaced by its block word, and coordinate 0 of the
/// image is the letter of the S-orbit point sitting at coordinate 0 of x. x needs 1s in both tails and
/// its origin must lie on the S-orbit of the start of its block.
CodeSequence encode_sequence(const BitSequence& x, Boundary b = Boundary::kAdjusted);

/// Left inverse of encode_sequence. Sequences without a 1-letter (and the image of *) decode to *;
/// a leading run of y = 4 letters or a trailing run of y = 2 letters decodes to a zero tail.
BitSequence decode_sequence(const CodeSequence& u, Boundary b = Boundary::kAdjusted);

}  // namespace sflow
