#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sflow/bit_sequence.hpp"

namespace sflow {

enum class TailKind { kZero, kConstant, kGeometric, kHarmonic, kPower, kLogHarmonic };

/// Declared behaviour of a table profile past its last entry.
/// param: c for constant, ratio for geometric, l for harmonic, alpha for power.
struct AsymptoticTag {
  TailKind kind;
  double param = 0.0;
};

enum class Admissibility { kAdmissible, kInadmissible };
std::string to_string(Admissibility a);

/// A gap profile k -> g(k) for k >= 1, together with the value g0 used at k = 0.
class GapProfile {
 public:
  enum class Family { kHarmonic, kPower, kLogHarmonic, kTable };

  static GapProfile harmonic(double l);
  static GapProfile power(double alpha);
  static GapProfile log_harmonic();
  /// values[k-1] = g(k) for 1 <= k <= values.size(); the tag describes the rest.
  static GapProfile table(std::vector<double> values, std::optional<AsymptoticTag> tag);

  /// Pointwise min(g(k), a/k).
  GapProfile truncated(double a) const;
  GapProfile with_g0(double g0) const;

  Family family() const { return family_; }
  double parameter() const { return param_; }
  const std::vector<double>& table_values() const { return values_; }
  const std::optional<AsymptoticTag>& tag() const { return tag_; }
  std::optional<double> truncation() const { return cap_; }
  double g0() const { return g0_; }

  double operator()(std::int64_t k) const;
  /// Smooth continuation of g for real t >= smooth_from(); agrees with g at integers.
  double smooth(double t) const;
  std::int64_t smooth_from() const;
  /// Points in [lo, hi] where the truncation switches between g and a/t (empty when untruncated).
  std::vector<double> kinks(double lo, double hi) const;
  /// sup_{k > K} g(k) (may be +inf).
  double sup_beyond(std::int64_t K) const;
  /// True when g(k) relies on the convention g(1) = 1/log 2 of the log-harmonic family.
  bool uses_extension(std::int64_t k) const;
  /// l = lim k g(k), possibly +inf.
  double kg_limit() const;
  /// Text in the roof mini-language (tables use a descriptive, non-parsable form).
  std::string describe() const;

 private:
  double base_value(std::int64_t k) const;
  double base_smooth(double t) const;
  double base_sup_beyond(std::int64_t K) const;
  double tail_value(double k) const;
  void require_tag() const;

  Family family_ = Family::kHarmonic;
  double param_ = 1.0;
  std::vector<double> values_;
  std::optional<AsymptoticTag> tag_;
  std::optional<double> cap_;
  double g0_ = 1.0;
};

/// Symbolic divergence test for sum_k g(k).
Admissibility admissibility_check(const GapProfile& g);

struct RoofSample {
  double value;
  bool extended;
};

/// f(x) = c, or f(x) = g(k_x) with k_x the distance from the origin to the nearest 1 (f(*) = 0).
class RoofFunction {
 public:
  static RoofFunction constant(double c);
  static RoofFunction from_profile(GapProfile g);

  bool is_constant() const { return !profile_; }
  double constant_value() const { return c_; }
  const GapProfile& profile() const;

  /// k = empty denotes *.
  RoofSample at_depth(std::optional<std::int64_t> k) const;
  double operator()(const BitSequence& x) const { return at_depth(singularity_depth(x)).value; }
  std::string spec() const;

 private:
  double c_ = 1.0;
  std::optional<GapProfile> profile_;
};

RoofSample roof_eval(const RoofFunction& f, const BitSequence& x);

/// Mini-language: const:c | harmonic:l | power:alpha | logharmonic | trunc:a:<profile>
RoofFunction parse_roof(std::string_view text);
GapProfile parse_profile(std::string_view text);

std::string format_double(double v);

}  // namespace sflow
