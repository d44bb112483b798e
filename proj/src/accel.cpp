#include "sflow/accel.hpp"

#include <cmath>

#include "sflow/error.hpp"
#include "sflow/literal.hpp"

namespace sflow {

std::string to_string(Region r) { return "R" + std::to_string(static_cast<int>(r)); }

std::string to_string(Boundary b) { return b == Boundary::kAdjusted ? "adjusted" : "paper"; }

Boundary parse_boundary(std::string_view text) {
  text = literal::trim(text);
  if (text == "adjusted") return Boundary::kAdjusted;
  if (text == "paper") return Boundary::kPaper;
  throw ParseError("boundary must be 'adjusted' or 'paper', got '" + std::string(text) + "'");
}

Region region_of(const GapPair& k, Boundary b) {
  if (k.singular()) throw DomainError("S is undefined at * (gap pair (inf, inf))");
  if (k.minus < 0 || k.plus < 1) throw DomainError("invalid gap pair " + to_string(k));
  if (k.minus == 0) return Region::kR1;
  if (k.minus_infinite()) return Region::kR4;
  if (k.plus_infinite()) return Region::kR2;
  if (k.plus <= k.minus) return Region::kR4;
  const __int128 three_minus = static_cast<__int128>(3) * k.minus;
  const bool r2 = b == Boundary::kAdjusted ? three_minus < k.plus : three_minus <= k.plus;
  return r2 ? Region::kR2 : Region::kR3;
}

std::int64_t step_length(const GapPair& k, Boundary b) {
  switch (region_of(k, b)) {
    case Region::kR1:
      return 1;
    case Region::kR2:
      return k.minus;
    case Region::kR3: {
      const __int128 s = static_cast<__int128>(k.minus) + k.plus;
      const __int128 q = (s * s) / (static_cast<__int128>(8) * k.minus);
      return static_cast<std::int64_t>(k.plus - q);
    }
    case Region::kR4:
      return k.plus / 2 + (k.plus & 1);
  }
  return 1;
}

BitSequence accel_step(const BitSequence& x, Boundary b) {
  const GapPair k = gap_pair(x);
  if (k.singular()) return x;
  return x.shifted(step_length(k, b));
}

GapPair advance_pair(const GapPair& k, Boundary b) {
  const std::int64_t L = step_length(k, b);
  if (!k.plus_infinite() && L >= k.plus) throw DomainError("step reaches the next 1; the new gap is not determined");
  GapPair n;
  n.minus = k.minus_infinite() ? GapPair::kInfinity : checked_add(k.minus, L);
  n.plus = k.plus_infinite() ? GapPair::kInfinity : k.plus - L;
  return n;
}

unsigned __int128 ceil_sqrt(unsigned __int128 n) {
  if (n == 0) return 0;
  auto s = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (s > 0 && s * s >= n) --s;
  while (s * s < n) ++s;
  return s;
}

}  // namespace sflow
