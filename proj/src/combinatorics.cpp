#include "rigiditykit/combinatorics.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rk {

namespace {

constexpr int kMaxBinom = 300;

struct BinomTable {
  std::vector<uint64_t> t;
  BinomTable() : t(static_cast<size_t>(kMaxBinom) * kMaxBinom, 0) {
    for (int a = 0; a < kMaxBinom; ++a) {
      t[a * kMaxBinom] = 1;
      for (int b = 1; b <= a && b < kMaxBinom; ++b) {
        uint64_t x = t[(a - 1) * kMaxBinom + b - 1] + (b <= a - 1 ? t[(a - 1) * kMaxBinom + b] : 0);
        // saturate; only small values are ever used as ranks
        t[a * kMaxBinom + b] = x < t[(a - 1) * kMaxBinom + b - 1] ? UINT64_MAX : x;
      }
    }
  }
};

const BinomTable& table() {
  static const BinomTable bt;
  return bt;
}

}  // namespace

uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n >= kMaxBinom) throw std::out_of_range("binom argument too large");
  return table().t[n * kMaxBinom + k];
}

mpz_class factorial(int k) {
  mpz_class r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

const IndexSet& index_set(int n, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<IndexSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, m}];
  if (slot) return *slot;
  auto s = std::make_unique<IndexSet>();
  s->n = n;
  s->m = m;
  s->count = sym_dim(n, m);
  s->flat.assign(s->count * static_cast<size_t>(m), 0);
  s->orbit.assign(s->count, 1);
  std::vector<Idx> cur(static_cast<size_t>(m), 0);
  uint64_t mfact = 1;
  for (int i = 2; i <= m; ++i) mfact *= static_cast<uint64_t>(i);
  for (size_t emitted = 0; emitted < s->count; ++emitted) {
    size_t r = rank_sorted(cur.data(), m);
    std::copy(cur.begin(), cur.end(), s->flat.begin() + static_cast<long>(r * m));
    uint64_t denom = 1;
    int run = 1;
    for (int k = 1; k <= m; ++k) {
      if (k < m && cur[k] == cur[k - 1]) {
        ++run;
      } else {
        for (int j = 2; j <= run; ++j) denom *= static_cast<uint64_t>(j);
        run = 1;
      }
    }
    s->orbit[r] = mfact / denom;
    // next non-decreasing tuple (lexicographic)
    int p = m - 1;
    while (p >= 0 && cur[p] == n - 1) --p;
    if (p < 0) break;
    Idx v = static_cast<Idx>(cur[p] + 1);
    for (int k = p; k < m; ++k) cur[k] = v;
  }
  slot = std::move(s);
  return *slot;
}

}  // namespace rk
