#include "srm/report.hpp"

#include <chrono>
#include <ctime>

namespace srm {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void to_json(nlohmann::json& j, const StatReport& r) {
  j = nlohmann::json{{"test_name", r.test_name},     {"statistic", r.statistic},
                     {"threshold", r.threshold},     {"passed", r.passed},
                     {"sample_size", r.sample_size}, {"seed", r.seed}};
}

void from_json(const nlohmann::json& j, StatReport& r) {
  j.at("test_name").get_to(r.test_name);
  j.at("statistic").get_to(r.statistic);
  j.at("threshold").get_to(r.threshold);
  j.at("passed").get_to(r.passed);
  j.at("sample_size").get_to(r.sample_size);
  j.at("seed").get_to(r.seed);
}

void to_json(nlohmann::json& j, const CharSpec& s) {
  j = nlohmann::json{{"n", s.n}, {"m", s.m}, {"lambdas", s.lambdas}, {"rho", s.rho}};
}

void to_json(nlohmann::json& j, const ResidualReport& r) {
  j = nlohmann::json{{"spec", r.spec},           {"lhs_re", r.lhs.real()},
                     {"lhs_im", r.lhs.imag()},   {"rhs_re", r.rhs.real()},
                     {"rhs_im", r.rhs.imag()},   {"residual", r.residual}};
}

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command},
                     {"parameters", m.parameters},
                     {"master_seed", m.master_seed},
                     {"artifact_version", m.artifact_version},
                     {"rng", m.rng},
                     {"started_at", m.started_at},
                     {"finished_at", m.finished_at}};
}

nlohmann::json report_document(const RunManifest& manifest, nlohmann::json reports) {
  return nlohmann::json{{"manifest", manifest}, {"reports", std::move(reports)}};
}

}  // namespace srm
