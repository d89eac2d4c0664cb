#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "srm/measure_solution.hpp"
#include "srm/stats.hpp"

namespace srm {

inline constexpr const char* artifact_version = "0.1.0";

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t master_seed = 0;
  std::string artifact_version = srm::artifact_version;
  std::string rng = "xoshiro256**";
  std::string started_at;
  std::string finished_at;
};

/// UTC, ISO 8601 with seconds.
[[nodiscard]] std::string utc_timestamp();

void to_json(nlohmann::json& j, const StatReport& r);
void from_json(const nlohmann::json& j, StatReport& r);
void to_json(nlohmann::json& j, const CharSpec& s);
void to_json(nlohmann::json& j, const ResidualReport& r);
void to_json(nlohmann::json& j, const RunManifest& m);

/// {"manifest": ..., "reports": [...]}; the reports array is the payload that
/// must reproduce byte-for-byte.
[[nodiscard]] nlohmann::json report_document(const RunManifest& manifest,
                                             nlohmann::json reports);

}  // namespace srm
