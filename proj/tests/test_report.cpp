#include <doctest.h>

#include <cstdlib>

#include "rigiditykit/suites.hpp"

using namespace rk;

TEST_CASE("check ids and ordering") {
  CHECK(check_id("tensor_core", "reassemble", Kind::Quaternion, 8) == "tensor_core.reassemble.quaternion.8");
  SuiteReport r;
  r.checks.push_back({"b.x.real.3", "", true});
  r.checks.push_back({"a.x.real.3", "", false});
  r.finalize();
  CHECK(r.checks[0].id == "a.x.real.3");
  CHECK(r.failures() == 1);
  CHECK_FALSE(r.all_pass());
  r.checks.push_back({"a.x.real.3", "", true});
  CHECK_THROWS_AS(r.finalize(), std::logic_error);
}

TEST_CASE("usage errors") {
  SuiteOptions o;
  o.suite = "nonesuch";
  CHECK_THROWS_AS(check_admissible(o), UsageError);
  o.suite = "tensor";
  o.geometry = {Kind::Complex, 5};
  CHECK_THROWS_AS(check_admissible(o), UsageError);
  o.geometry = {Kind::Real, 4};
  o.suite = "commutators";
  CHECK_THROWS_AS(check_admissible(o), UsageError);
  o.suite = "hessian";
  o.jet_order = 1;
  CHECK_THROWS_AS(run_suite(o), UsageError);
  for (const std::string& s : suite_names()) CHECK_FALSE(s.empty());
}

TEST_CASE("reports are reproducible") {
  SuiteOptions o;
  o.suite = "spectrum";
  o.geometry = {Kind::Complex, 4};
  o.seed = 9;
  o.samples = 8;
  std::string a = run_suite(o).to_json().dump(2), b = run_suite(o).to_json().dump(2);
  CHECK(a == b);
  o.seed = 10;
  CHECK(run_suite(o).to_json().dump(2) != a);
  Json j = Json::parse(a);
  CHECK(j["schema"] == "rigiditykit.report");
  CHECK(j["version"] == 1);
  CHECK_FALSE(j.contains("wall_seconds"));
  o.timing = true;
  CHECK(run_suite(o).to_json().contains("wall_seconds"));
}

TEST_CASE("sample generators are independent of scheduling") {
  Rng a = sample_rng(1, "x", 3), b = sample_rng(1, "x", 3), c = sample_rng(1, "y", 3);
  int64_t va = a.uniform(0, 1 << 30), vb = b.uniform(0, 1 << 30), vc = c.uniform(0, 1 << 30);
  CHECK(va == vb);
  CHECK(va != vc);
  setenv("RIGIDITYKIT_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  std::vector<int> out = parallel_map<int>(50, [](int i) { return i * i; });
  for (int i = 0; i < 50; ++i) CHECK(out[i] == i * i);
  CHECK_THROWS_AS(parallel_map<int>(10,
                                    [](int i) -> int {
                                      if (i == 7) throw std::runtime_error("seven");
                                      return i;
                                    }),
                  std::runtime_error);
  unsetenv("RIGIDITYKIT_THREADS");
}
