#pragma once

#include <json.hpp>

#include "sflow/block_code.hpp"
#include "sflow/entropy.hpp"

namespace sflow {

nlohmann::json to_json(const GapPair& k);
nlohmann::json to_json(const BlockProfile& profile);
nlohmann::json to_json(const ScanResult& scan);
nlohmann::json to_json(const EntropyReport& report);

/// Real numbers as JSON: finite values as numbers, infinities as the strings "inf" / "-inf".
nlohmann::json json_real(double v);

}  // namespace sflow
