#include "rigiditykit/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace rk {

std::string check_id(const std::string& module, const std::string& identity, Kind kind, int n) {
  return module + "." + identity + "." + kind_name(kind) + "." + std::to_string(n);
}

void SuiteReport::finalize() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  for (size_t i = 1; i < checks.size(); ++i)
    if (checks[i].id == checks[i - 1].id) throw std::logic_error("duplicate check id " + checks[i].id);
}

bool SuiteReport::all_pass() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

Json SuiteReport::to_json() const {
  Json j;
  j["schema"] = "rigiditykit.report";
  j["version"] = kReportSchemaVersion;
  j["suite"] = suite;
  j["geometry"] = kind_name(kind);
  j["n"] = n;
  j["seed"] = seed;
  j["jet_order"] = jet_order;
  j["samples"] = samples;
  Json cs = Json::array();
  for (const Check& c : checks) {
    Json e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["verdict"] = c.pass ? "pass" : "fail";
    e["detail"] = c.detail;
    e["witness"] = c.witness;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  int f = failures();
  j["summary"] = {{"checks", checks.size()}, {"passed", static_cast<int>(checks.size()) - f}, {"failed", f}};
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  return j;
}

Json scalar_json(const Scalar& s) { return s.str(); }

}  // namespace rk
