#include "sflow/word_count.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "sflow/error.hpp"

namespace sflow {

namespace {

using Matrix = std::vector<std::vector<BigCount>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<BigCount>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

GeneratedShift::GeneratedShift(std::vector<Word> generators) : generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.empty()) throw DomainError("generator words must be nonempty");
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (i == j) continue;
      const auto& a = generators_[i];
      const auto& b = generators_[j];
      if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin()))
        throw DomainError("generator words must form a prefix code");
    }
  // Trie over generator prefixes; completing a generator returns to the root state 0.
  std::vector<std::map<std::string, std::size_t>> child(1);
  std::vector<std::map<std::string, std::size_t>> edges(1);
  for (const auto& g : generators_) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const bool last = i + 1 == g.size();
      if (last) {
        edges[s][g[i]] = 0;
      } else {
        auto it = child[s].find(g[i]);
        if (it == child[s].end()) {
          child.emplace_back();
          edges.emplace_back();
          it = child[s].emplace(g[i], child.size() - 1).first;
          edges[s][g[i]] = it->second;
        }
        s = it->second;
      }
    }
  }
  states_ = child.size();
  transitions_.assign(states_, std::vector<std::uint32_t>(states_, 0));
  for (std::size_t s = 0; s < states_; ++s)
    for (const auto& [letter, t] : edges[s]) ++transitions_[s][t];
}

BigCount GeneratedShift::word_count(std::int64_t n) const {
  if (n < 1) throw DomainError("word length must be at least 1");
  if (generators_.empty()) return 0;
  Matrix base(states_, std::vector<BigCount>(states_, 0));
  for (std::size_t i = 0; i < states_; ++i)
    for (std::size_t j = 0; j < states_; ++j) base[i][j] = transitions_[i][j];
  Matrix result(states_, std::vector<BigCount>(states_, 0));
  for (std::size_t i = 0; i < states_; ++i) result[i][i] = 1;
  for (std::int64_t e = n; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, base);
    if (e > 1) base = multiply(base, base);
  }
  BigCount total = 0;
  for (const auto& v : result[0]) total += v;
  return total;
}

std::vector<GeneratedShift::Word> GeneratedShift::enumerate(std::int64_t n) const {
  if (n < 1) throw DomainError("word length must be at least 1");
  std::set<Word> out;
  Word cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<std::int64_t>(cur.size()) >= n) {
      out.insert(Word(cur.begin(), cur.begin() + n));
      return;
    }
    for (const auto& g : generators_) {
      const std::size_t before = cur.size();
      cur.insert(cur.end(), g.begin(), g.end());
      self(self);
      cur.resize(before);
    }
  };
  rec(rec);
  return {out.begin(), out.end()};
}

double log_big(const BigCount& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits < 1000) return std::log(v.convert_to<double>());
  const std::size_t drop = bits - 60;
  const BigCount top = v >> drop;
  return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::numbers::ln2;
}

EntropyReport sft_entropy_wordcount(const GeneratedShift& shift, std::int64_t n) {
  const BigCount count = shift.word_count(n);
  EntropyReport r;
  r.method = EntropyMethod::kWordCount;
  if (count == 0) {
    r.value = 0.0;
    r.flag = "empty language";
    return r;
  }
  r.value = log_big(count) / static_cast<double>(n);
  r.flag = "N(" + std::to_string(n) + ")=" + count.str();
  return r;
}

}  // namespace sflow
