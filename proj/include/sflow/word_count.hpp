#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sflow/entropy.hpp"

namespace sflow {

using BigCount = boost::multiprecision::cpp_int;

/// The shift generated by free concatenation of a finite prefix code of words.
/// Letters are arbitrary tokens. N(n) counts the length-n prefixes of such concatenations.
class GeneratedShift {
 public:
  using Word = std::vector<std::string>;

  explicit GeneratedShift(std::vector<Word> generators);

  const std::vector<Word>& generators() const { return generators_; }
  std::size_t state_count() const { return states_; }

  /// Exact N(n) from the n-th power of the transfer matrix of the generator trie.
  BigCount word_count(std::int64_t n) const;
  /// All admissible words of length n, by direct expansion (small n only).
  std::vector<Word> enumerate(std::int64_t n) const;

 private:
  std::vector<Word> generators_;
  std::size_t states_ = 1;
  std::vector<std::vector<std::uint32_t>> transitions_;  // transitions_[state][target] = letter count
};

/// (1/n) log N(n).
EntropyReport sft_entropy_wordcount(const GeneratedShift& shift, std::int64_t n);

/// Natural log of a nonnegative big integer (-inf for 0).
double log_big(const BigCount& v);

}  // namespace sflow
