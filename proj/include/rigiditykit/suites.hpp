#pragma once
// registered verification suites and the pieces the command line reuses
#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include "rigiditykit/coercivity.hpp"
#include "rigiditykit/report.hpp"
#include "rigiditykit/symbol.hpp"
#include "rigiditykit/weitzenbock.hpp"

namespace rk {

// bad suite name, inadmissible (kind, n) or an order budget the suite cannot work with
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SuiteOptions {
  std::string suite;
  GeometryKind geometry{Kind::Complex, 4};
  uint64_t seed = 1;
  int jet_order = 2;
  int samples = 0;  // 0: the suite's default
  bool timing = false;
};

const std::vector<std::string>& suite_names();
// throws UsageError
void check_admissible(const SuiteOptions& o);
SuiteReport run_suite(const SuiteOptions& o);

// an independent generator per (seed, stream, sample): results do not depend on scheduling
Rng sample_rng(uint64_t seed, const std::string& stream, int i);

// RIGIDITYKIT_THREADS if set (>= 1), else the hardware concurrency
int thread_count();

// f(i) for i in [0, count), results in index order; the first exception by index is rethrown
template <class R>
std::vector<R> parallel_map(int count, const std::function<R(int)>& f) {
  std::vector<R> out(static_cast<size_t>(count));
  std::vector<std::exception_ptr> err(static_cast<size_t>(count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  int t = std::min(thread_count(), std::max(count, 1));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

Json vec_json(const Vec& v);
Json ledger_json(const ConstantLedger& l);
Json curvature_row_json(const CurvatureRow& r);
// one symbol sample: the three symbol routes agree, injectivity rank, ι_ξ L residual
Json symbol_sample_json(const Geometry& g, const Vec& xi, Rng& rng);
// nonzero integer covectors with entries in [-range, range]
std::vector<Vec> xi_samples(int n, int count, Rng& rng, int range = 3);
// all ξ with entries in {-1,0,1} and at most `nonzero` nonzero entries
std::vector<Vec> sign_grid(int n, int nonzero);
// identity report for one jet (q-apply): kind-specific checks on Q(S)
Json q_identity_report(const TensorJet& s);

}  // namespace rk
