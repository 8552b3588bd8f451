#pragma once
// verification reports: schema v1 JSON, deterministic for fixed inputs
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigiditykit/geometry.hpp"

namespace rk {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string id;      // <module>.<identity>.<kind>.<n>
  std::string anchor;  // what the check states, in words
  bool pass = false;
  Json detail = Json::object();
  Json witness = nullptr;  // failing input, or per-sample certificates
};

std::string check_id(const std::string& module, const std::string& identity, Kind kind, int n);

struct SuiteReport {
  std::string suite;
  Kind kind = Kind::Real;
  int n = 0;
  uint64_t seed = 0;
  int jet_order = 0;
  int samples = 0;
  std::vector<Check> checks;
  std::optional<double> wall_seconds;  // only written when timing was asked for

  // sorts checks by id; ids must be unique
  void finalize();
  bool all_pass() const;
  int failures() const;
  Json to_json() const;
};

Json scalar_json(const Scalar& s);

}  // namespace rk
