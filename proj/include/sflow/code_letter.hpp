#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sflow/eventually_periodic.hpp"

namespace sflow {

/// A letter y^z with y in {1,2,3,4} and z in {0,1,2,3,4,x}; 24 letters in all.
struct CodeLetter {
  static constexpr std::uint8_t kCross = 5;

  std::uint8_t y = 1;
  std::uint8_t z = kCross;

  bool crossed() const { return z == kCross; }
  int index() const { return (y - 1) * 6 + z; }

  friend bool operator==(const CodeLetter&, const CodeLetter&) = default;
  friend auto operator<=>(const CodeLetter&, const CodeLetter&) = default;
};

inline constexpr int kAlphabetSize = 24;

CodeLetter make_letter(int y, int z);
CodeLetter crossed_letter(int y);

std::string to_string(CodeLetter c);
CodeLetter parse_letter(std::string_view text);

using CodeWord = std::vector<CodeLetter>;
std::string format_word(std::span<const CodeLetter> w);
/// Whitespace-separated letters.
CodeWord parse_word(std::string_view text);

using CodeSequence = EventuallyPeriodic<CodeLetter>;
/// Same literal grammar as bit sequences, with whitespace-separated letters.
CodeSequence parse_code_sequence(std::string_view text);
std::string to_literal(const CodeSequence& u);

}  // namespace sflow
