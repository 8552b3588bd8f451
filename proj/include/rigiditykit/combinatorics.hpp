#pragma once
// multi-index bookkeeping: sorted tuples ranked in colex order
#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rk {

using Idx = uint8_t;  // 0-based basis index; n <= 255

uint64_t binom(int n, int k);
mpz_class factorial(int k);

// all sorted m-tuples over 0..n-1, stored flat in rank order
struct IndexSet {
  int n = 0, m = 0;
  size_t count = 0;
  std::vector<Idx> flat;
  std::vector<uint64_t> orbit;  // number of distinct orderings of each tuple
  const Idx* at(size_t r) const { return flat.data() + r * static_cast<size_t>(m); }
};

const IndexSet& index_set(int n, int m);

inline size_t sym_dim(int n, int m) { return m == 0 ? 1 : binom(n + m - 1, m); }

// rank of a sorted tuple
inline size_t rank_sorted(const Idx* s, int m) {
  size_t r = 0;
  for (int k = 0; k < m; ++k) r += binom(s[k] + k, k + 1);
  return r;
}

inline void small_sort(Idx* s, int m) {
  for (int i = 1; i < m; ++i) {
    Idx x = s[i];
    int j = i - 1;
    while (j >= 0 && s[j] > x) {
      s[j + 1] = s[j];
      --j;
    }
    s[j + 1] = x;
  }
}

// sorts in place and ranks
inline size_t rank_any(Idx* s, int m) {
  small_sort(s, m);
  return rank_sorted(s, m);
}

// rank of tuple with one extra entry x merged into sorted s (length m), result length m+1
inline size_t rank_insert(const Idx* s, int m, Idx x) {
  size_t r = 0;
  int k = 0, out = 0;
  bool placed = false;
  while (out < m + 1) {
    Idx v;
    if (!placed && (k == m || x <= s[k])) {
      v = x;
      placed = true;
    } else {
      v = s[k++];
    }
    r += binom(v + out, out + 1);
    ++out;
  }
  return r;
}

// rank of s with position p removed (length m-1)
inline size_t rank_remove(const Idx* s, int m, int p) {
  size_t r = 0;
  int out = 0;
  for (int k = 0; k < m; ++k) {
    if (k == p) continue;
    r += binom(s[k] + out, out + 1);
    ++out;
  }
  return r;
}

// rank of s with position p replaced by x (re-sorted), length m
inline size_t rank_replace(const Idx* s, int m, int p, Idx x) {
  Idx buf[64];
  int out = 0;
  for (int k = 0; k < m; ++k)
    if (k != p) buf[out++] = s[k];
  return rank_insert(buf, m - 1, x);
}

}  // namespace rk
