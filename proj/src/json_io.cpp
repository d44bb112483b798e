#include "sflow/json_io.hpp"

#include <cmath>

namespace sflow {

nlohmann::json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

nlohmann::json to_json(const GapPair& k) {
  auto one = [](std::int64_t v) -> nlohmann::json {
    if (v == GapPair::kInfinity) return "inf";
    return v;
  };
  return nlohmann::json::array({one(k.minus), one(k.plus)});
}

nlohmann::json to_json(const BlockProfile& bp) {
  nlohmann::json j;
  j["gap"] = bp.gap;
  j["p"] = bp.p;
  j["r"] = bp.r ? nlohmann::json(*bp.r) : nlohmann::json(nullptr);
  nlohmann::json eps = nlohmann::json::object();
  for (const auto& [q, bit] : bp.epsilon) eps[std::to_string(q)] = bit;
  j["epsilon_bits"] = eps;
  j["word"] = bp.word.empty() ? nlohmann::json(nullptr) : nlohmann::json(format_word(bp.word));
  nlohmann::json regions = nlohmann::json::array();
  for (Region r : bp.regions) regions.push_back(to_string(r));
  j["regions"] = regions;
  nlohmann::json orbit = nlohmann::json::array();
  for (const auto& k : bp.orbit) orbit.push_back(to_json(k));
  j["orbit"] = orbit;
  j["offsets"] = bp.offsets;
  return j;
}

nlohmann::json to_json(const ScanResult& scan) {
  nlohmann::json j;
  static const char* kinds[] = {"finite", "zero", "divergent"};
  j["limit_kind"] = kinds[static_cast<int>(scan.limit_kind)];
  j["target"] = json_real(scan.target);
  j["strictly_decreasing"] = scan.strictly_decreasing;
  j["strictly_increasing"] = scan.strictly_increasing;
  j["errors_shrinking"] = scan.errors_shrinking;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : scan.rows)
    rows.push_back({{"lambda", r.lambda},
                    {"integral", r.integral},
                    {"entropy", r.entropy},
                    {"target", json_real(r.target)},
                    {"abs_error", json_real(r.abs_error)},
                    {"error_bound", r.error_bound}});
  j["rows"] = rows;
  return j;
}

nlohmann::json to_json(const EntropyReport& r) {
  nlohmann::json j;
  j["value"] = r.infinite ? nlohmann::json("inf") : nlohmann::json(r.value);
  j["method"] = to_string(r.method);
  j["error_bound"] = r.error_bound ? json_real(*r.error_bound) : nlohmann::json(nullptr);
  if (!r.flag.empty()) j["flag"] = r.flag;
  return j;
}

}  // namespace sflow
