#include "sflow/roof.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "sflow/error.hpp"
#include "sflow/literal.hpp"

namespace sflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double log_harmonic_value(double k) {
  if (k <= 1.0) return 1.0 / std::numbers::ln2;
  return 1.0 / (k * std::log(k));
}

double power_kg_limit(double alpha) {
  if (alpha < 1.0) return kInf;
  if (alpha == 1.0) return 1.0;
  return 0.0;
}

double parse_double(std::string_view s, const char* what) {
  s = literal::trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(std::string("invalid number for ") + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string to_string(Admissibility a) { return a == Admissibility::kAdmissible ? "admissible" : "inadmissible"; }

GapProfile GapProfile::harmonic(double l) {
  if (!finite_positive(l)) throw DomainError("harmonic profile needs l > 0");
  GapProfile g;
  g.family_ = Family::kHarmonic;
  g.param_ = l;
  return g;
}

GapProfile GapProfile::power(double alpha) {
  if (!finite_positive(alpha)) throw DomainError("power profile needs alpha > 0 so that g(k) -> 0");
  GapProfile g;
  g.family_ = Family::kPower;
  g.param_ = alpha;
  return g;
}

GapProfile GapProfile::log_harmonic() {
  GapProfile g;
  g.family_ = Family::kLogHarmonic;
  g.param_ = 0.0;
  return g;
}

GapProfile GapProfile::table(std::vector<double> values, std::optional<AsymptoticTag> tag) {
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0) throw DomainError("table profile values must be finite and nonnegative");
  if (tag) {
    const double p = tag->param;
    switch (tag->kind) {
      case TailKind::kZero:
      case TailKind::kLogHarmonic:
        break;
      case TailKind::kConstant:
        if (!std::isfinite(p) || p < 0.0) throw DomainError("constant tag needs c >= 0");
        break;
      case TailKind::kGeometric:
      case TailKind::kHarmonic:
      case TailKind::kPower:
        if (!finite_positive(p)) throw DomainError("tag parameter must be positive");
        break;
    }
  }
  GapProfile g;
  g.family_ = Family::kTable;
  g.values_ = std::move(values);
  g.tag_ = tag;
  return g;
}

GapProfile GapProfile::truncated(double a) const {
  if (!finite_positive(a)) throw DomainError("truncation level a must be positive");
  GapProfile g = *this;
  g.cap_ = cap_ ? std::min(*cap_, a) : a;
  return g;
}

GapProfile GapProfile::with_g0(double g0) const {
  if (!std::isfinite(g0) || g0 < 0.0) throw DomainError("g0 must be finite and nonnegative");
  GapProfile g = *this;
  g.g0_ = g0;
  return g;
}

void GapProfile::require_tag() const {
  if (family_ == Family::kTable && !tag_)
    throw DomainError("table profile has no asymptotic tag; behaviour beyond the table is undefined");
}

double GapProfile::tail_value(double k) const {
  const double n = static_cast<double>(values_.size());
  switch (tag_->kind) {
    case TailKind::kZero:
      return 0.0;
    case TailKind::kConstant:
      return tag_->param;
    case TailKind::kGeometric: {
      const double base = values_.empty() ? 1.0 : values_.back();
      return base * std::pow(tag_->param, k - n);
    }
    case TailKind::kHarmonic:
      return tag_->param / k;
    case TailKind::kPower:
      return std::pow(k, -tag_->param);
    case TailKind::kLogHarmonic:
      return log_harmonic_value(k);
  }
  return 0.0;
}

double GapProfile::base_value(std::int64_t k) const {
  const auto kd = static_cast<double>(k);
  switch (family_) {
    case Family::kHarmonic:
      return param_ / kd;
    case Family::kPower:
      return std::pow(kd, -param_);
    case Family::kLogHarmonic:
      return log_harmonic_value(kd);
    case Family::kTable:
      if (k <= static_cast<std::int64_t>(values_.size())) return values_[static_cast<std::size_t>(k - 1)];
      require_tag();
      return tail_value(kd);
  }
  return 0.0;
}

double GapProfile::operator()(std::int64_t k) const {
  if (k < 0) throw DomainError("gap profile evaluated at a negative index");
  if (k == 0) return g0_;
  const double v = base_value(k);
  return cap_ ? std::min(v, *cap_ / static_cast<double>(k)) : v;
}

std::int64_t GapProfile::smooth_from() const {
  const auto n = static_cast<std::int64_t>(values_.size());
  return std::max<std::int64_t>(n + 1, 2);
}

double GapProfile::base_smooth(double t) const {
  switch (family_) {
    case Family::kHarmonic:
      return param_ / t;
    case Family::kPower:
      return std::pow(t, -param_);
    case Family::kLogHarmonic:
      return log_harmonic_value(t);
    case Family::kTable:
      require_tag();
      return tail_value(t);
  }
  return 0.0;
}

double GapProfile::smooth(double t) const {
  const double v = base_smooth(t);
  return cap_ ? std::min(v, *cap_ / t) : v;
}

std::vector<double> GapProfile::kinks(double lo, double hi) const {
  std::vector<double> out;
  if (!cap_ || !(hi > lo)) return out;
  auto h = [&](double t) { return base_smooth(t) * t - *cap_; };
  constexpr int kSamples = 256;
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  double prev_t = lo;
  double prev_h = h(lo);
  for (int i = 1; i <= kSamples; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / kSamples);
    const double ht = h(t);
    if ((prev_h < 0.0) != (ht < 0.0)) {
      double a = prev_t, b = t, ha = prev_h;
      for (int it = 0; it < 200 && b - a > 1e-12 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double hm = h(m);
        if ((hm < 0.0) == (ha < 0.0)) {
          a = m;
          ha = hm;
        } else {
          b = m;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_h = ht;
  }
  return out;
}

double GapProfile::base_sup_beyond(std::int64_t K) const {
  const double k1 = static_cast<double>(K) + 1.0;
  switch (family_) {
    case Family::kHarmonic:
      return param_ / k1;
    case Family::kPower:
      return std::pow(k1, -param_);
    case Family::kLogHarmonic:
      return log_harmonic_value(k1);
    case Family::kTable: {
      const auto n = static_cast<std::int64_t>(values_.size());
      double m = 0.0;
      for (std::int64_t k = K + 1; k <= n; ++k) m = std::max(m, values_[static_cast<std::size_t>(k - 1)]);
      require_tag();
      const double from = static_cast<double>(std::max(K, n)) + 1.0;
      double tail = 0.0;
      switch (tag_->kind) {
        case TailKind::kZero:
          tail = 0.0;
          break;
        case TailKind::kConstant:
          tail = tag_->param;
          break;
        case TailKind::kGeometric:
          tail = tag_->param <= 1.0 ? tail_value(from) : kInf;
          break;
        case TailKind::kHarmonic:
        case TailKind::kPower:
        case TailKind::kLogHarmonic:
          tail = tail_value(from);
          break;
      }
      return std::max(m, tail);
    }
  }
  return kInf;
}

double GapProfile::sup_beyond(std::int64_t K) const {
  const double v = base_sup_beyond(K);
  return cap_ ? std::min(v, *cap_ / (static_cast<double>(K) + 1.0)) : v;
}

bool GapProfile::uses_extension(std::int64_t k) const {
  if (k != 1) return false;
  if (family_ == Family::kLogHarmonic) return true;
  return family_ == Family::kTable && values_.empty() && tag_ && tag_->kind == TailKind::kLogHarmonic;
}

double GapProfile::kg_limit() const {
  double l = 0.0;
  switch (family_) {
    case Family::kHarmonic:
      l = param_;
      break;
    case Family::kPower:
      l = power_kg_limit(param_);
      break;
    case Family::kLogHarmonic:
      l = 0.0;
      break;
    case Family::kTable:
      require_tag();
      switch (tag_->kind) {
        case TailKind::kZero:
        case TailKind::kLogHarmonic:
          l = 0.0;
          break;
        case TailKind::kConstant:
          l = tag_->param > 0.0 ? kInf : 0.0;
          break;
        case TailKind::kGeometric: {
          const double base = values_.empty() ? 1.0 : values_.back();
          l = (tag_->param < 1.0 || base == 0.0) ? 0.0 : kInf;
          break;
        }
        case TailKind::kHarmonic:
          l = tag_->param;
          break;
        case TailKind::kPower:
          l = power_kg_limit(tag_->param);
          break;
      }
      break;
  }
  return cap_ ? std::min(l, *cap_) : l;
}

std::string GapProfile::describe() const {
  std::string s;
  switch (family_) {
    case Family::kHarmonic:
      s = "harmonic:" + format_double(param_);
      break;
    case Family::kPower:
      s = "power:" + format_double(param_);
      break;
    case Family::kLogHarmonic:
      s = "logharmonic";
      break;
    case Family::kTable: {
      s = "table(" + std::to_string(values_.size()) + " values";
      if (tag_) {
        static const char* names[] = {"zero", "constant", "geometric", "harmonic", "power", "logharmonic"};
        s += ", tail ";
        s += names[static_cast<int>(tag_->kind)];
        if (tag_->kind != TailKind::kZero && tag_->kind != TailKind::kLogHarmonic) s += ":" + format_double(tag_->param);
      } else {
        s += ", untagged";
      }
      s += ")";
      break;
    }
  }
  if (cap_) s = "trunc:" + format_double(*cap_) + ":" + s;
  return s;
}

Admissibility admissibility_check(const GapProfile& g) {
  // Truncation keeps the verdict: every family here is eventually comparable with a/k.
  switch (g.family()) {
    case GapProfile::Family::kHarmonic:
    case GapProfile::Family::kLogHarmonic:
      return Admissibility::kAdmissible;
    case GapProfile::Family::kPower:
      return g.parameter() <= 1.0 ? Admissibility::kAdmissible : Admissibility::kInadmissible;
    case GapProfile::Family::kTable:
      break;
  }
  const auto& tag = g.tag();
  if (!tag) throw DomainError("table profile has no asymptotic tag; admissibility cannot be decided");
  switch (tag->kind) {
    case TailKind::kZero:
      return Admissibility::kInadmissible;
    case TailKind::kConstant:
      return tag->param > 0.0 ? Admissibility::kAdmissible : Admissibility::kInadmissible;
    case TailKind::kGeometric: {
      const double base = g.table_values().empty() ? 1.0 : g.table_values().back();
      return (tag->param >= 1.0 && base > 0.0) ? Admissibility::kAdmissible : Admissibility::kInadmissible;
    }
    case TailKind::kHarmonic:
    case TailKind::kLogHarmonic:
      return Admissibility::kAdmissible;
    case TailKind::kPower:
      return tag->param <= 1.0 ? Admissibility::kAdmissible : Admissibility::kInadmissible;
  }
  return Admissibility::kInadmissible;
}

RoofFunction RoofFunction::constant(double c) {
  if (!finite_positive(c)) throw DomainError("constant roof must be positive");
  RoofFunction f;
  f.c_ = c;
  return f;
}

RoofFunction RoofFunction::from_profile(GapProfile g) {
  if (!finite_positive(g.g0())) throw DomainError("roof profile needs g0 > 0");
  for (double v : g.table_values())
    if (!(v > 0.0)) throw DomainError("roof profile values must be strictly positive");
  if (g.family() == GapProfile::Family::kTable) {
    const auto& tag = g.tag();
    if (!tag) throw DomainError("table roof profile needs an asymptotic tag");
    if (tag->kind == TailKind::kZero) throw DomainError("roof profile must be strictly positive");
    if (tag->kind == TailKind::kConstant && !g.truncation())
      throw DomainError("roof profile must tend to 0 (constant tail)");
    if (tag->kind == TailKind::kGeometric && tag->param >= 1.0 && !g.truncation())
      throw DomainError("roof profile must tend to 0 (geometric ratio >= 1)");
  }
  RoofFunction f;
  f.profile_ = std::move(g);
  return f;
}

const GapProfile& RoofFunction::profile() const {
  if (!profile_) throw DomainError("constant roof has no gap profile");
  return *profile_;
}

RoofSample RoofFunction::at_depth(std::optional<std::int64_t> k) const {
  if (!profile_) return {c_, false};
  if (!k) return {0.0, false};
  return {(*profile_)(*k), profile_->uses_extension(*k)};
}

std::string RoofFunction::spec() const {
  if (!profile_) return "const:" + format_double(c_);
  return profile_->describe();
}

RoofSample roof_eval(const RoofFunction& f, const BitSequence& x) { return f.at_depth(singularity_depth(x)); }

GapProfile parse_profile(std::string_view text) {
  text = literal::trim(text);
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "logharmonic") {
    if (colon != std::string_view::npos) throw ParseError("logharmonic takes no parameter");
    return GapProfile::log_harmonic();
  }
  if (colon == std::string_view::npos) throw ParseError("unknown profile '" + std::string(text) + "'");
  try {
    if (head == "harmonic") return GapProfile::harmonic(parse_double(rest, "harmonic:l"));
    if (head == "power") return GapProfile::power(parse_double(rest, "power:alpha"));
    if (head == "trunc") {
      const auto c2 = rest.find(':');
      if (c2 == std::string_view::npos) throw ParseError("trunc needs 'trunc:a:<profile>'");
      const double a = parse_double(rest.substr(0, c2), "trunc:a");
      return parse_profile(rest.substr(c2 + 1)).truncated(a);
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid profile '") + std::string(text) + "': " + e.what());
  }
  throw ParseError("unknown profile '" + std::string(head) + "'");
}

RoofFunction parse_roof(std::string_view text) {
  text = literal::trim(text);
  if (text.substr(0, 6) == "const:") {
    const double c = parse_double(text.substr(6), "const:c");
    if (!finite_positive(c)) throw ParseError("constant roof must be positive");
    return RoofFunction::constant(c);
  }
  return RoofFunction::from_profile(parse_profile(text));
}

}  // namespace sflow
