#include "sflow/code_letter.hpp"

#include "sflow/error.hpp"
#include "sflow/literal.hpp"

namespace sflow {

CodeLetter make_letter(int y, int z) {
  if (y < 1 || y > 4) throw DomainError("letter y must lie in 1..4");
  if (z < 0 || z > 4) throw DomainError("letter z must lie in 0..4");
  return CodeLetter{static_cast<std::uint8_t>(y), static_cast<std::uint8_t>(z)};
}

CodeLetter crossed_letter(int y) {
  if (y < 1 || y > 4) throw DomainError("letter y must lie in 1..4");
  return CodeLetter{static_cast<std::uint8_t>(y), CodeLetter::kCross};
}

std::string to_string(CodeLetter c) {
  std::string s(1, static_cast<char>('0' + c.y));
  s += '^';
  s += c.crossed() ? 'x' : static_cast<char>('0' + c.z);
  return s;
}

CodeLetter parse_letter(std::string_view text) {
  text = literal::trim(text);
  if (text.size() < 3 || text[1] != '^' || text[0] < '1' || text[0] > '4')
    throw ParseError("malformed letter '" + std::string(text) + "' (expected y^z)");
  const int y = text[0] - '0';
  const std::string_view z = text.substr(2);
  if (z == "x" || z == "X" || z == "×") return crossed_letter(y);
  if (z.size() == 1 && z[0] >= '0' && z[0] <= '4') return make_letter(y, z[0] - '0');
  throw ParseError("malformed letter '" + std::string(text) + "' (z must be 0-4 or x)");
}

std::string format_word(std::span<const CodeLetter> w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += to_string(w[i]);
  }
  return s;
}

CodeWord parse_word(std::string_view text) {
  CodeWord out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == ','))
      ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != ',') ++j;
    if (j > i) out.push_back(parse_letter(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

CodeSequence parse_code_sequence(std::string_view text) { return literal::parse<CodeLetter>(text, parse_word); }

std::string to_literal(const CodeSequence& u) {
  return literal::format(u, [](CodeLetter c) { return to_string(c); }, " ");
}

}  // namespace sflow
