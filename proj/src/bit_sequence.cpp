#include "sflow/bit_sequence.hpp"

#include <cmath>

#include "sflow/literal.hpp"

namespace sflow {

namespace {

std::vector<Bit> lex_bits(std::string_view s) {
  std::vector<Bit> out;
  for (char c : s) {
    if (c == '0' || c == '1')
      out.push_back(static_cast<Bit>(c - '0'));
    else if (c != ' ' && c != '\t')
      throw ParseError(std::string("unexpected character '") + c + "' in bit literal");
  }
  return out;
}

std::string format_bit(Bit b) { return b ? "1" : "0"; }

}  // namespace

std::string to_string(const GapPair& k) {
  auto one = [](std::int64_t v) { return v == GapPair::kInfinity ? std::string("inf") : std::to_string(v); };
  return "(" + one(k.minus) + ", " + one(k.plus) + ")";
}

BitSequence singularity() { return BitSequence::constant(0); }

bool is_singularity(const BitSequence& x) {
  return x.window().empty() && x.left_period().size() == 1 && x.left_period()[0] == 0 &&
         x.right_period().size() == 1 && x.right_period()[0] == 0;
}

BitSequence bits_with_zero_tails(std::string_view word, std::int64_t origin_index) {
  return BitSequence({0}, lex_bits(word), origin_index, {0});
}

GapPair gap_pair(const BitSequence& x, std::int64_t max_gap) {
  GapPair k;
  if (auto n = x.find_backward(0, 1); n && -*n <= max_gap) k.minus = -*n;
  if (auto n = x.find_forward(1, 1); n && *n <= max_gap) k.plus = *n;
  return k;
}

std::optional<std::int64_t> singularity_depth(const BitSequence& x) {
  const GapPair k = gap_pair(x, GapPair::kInfinity - 1);
  if (k.singular()) return std::nullopt;
  return std::min(k.minus, k.plus);
}

std::optional<std::int64_t> first_difference(const BitSequence& x, const BitSequence& y) {
  const auto fwd = first_mismatch_forward(x, y, 0);
  const auto bwd = first_mismatch_forward(x.mirrored(), y.mirrored(), 0);
  if (!fwd && !bwd) return std::nullopt;
  if (!fwd) return *bwd;
  if (!bwd) return *fwd;
  return std::min(*fwd, *bwd);
}

double seq_distance(const BitSequence& x, const BitSequence& y) {
  const auto m = first_difference(x, y);
  if (!m) return 0.0;
  if (*m > 2000) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(*m));
}

BitSequence parse_bit_sequence(std::string_view text) {
  if (literal::trim(text) == "*") return singularity();
  return literal::parse<Bit>(text, lex_bits);
}

std::string to_literal(const BitSequence& x) { return literal::format(x, format_bit, ""); }

}  // namespace sflow
