#pragma once
// deterministic random generation of exact test data
#include <cstdint>
#include <random>

#include "rigiditykit/linalg.hpp"
#include "rigiditykit/sym_tensor.hpp"

namespace rk {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  int64_t uniform(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(eng_);
  }
  // p/q with |p| <= range, 1 <= q <= den
  Scalar rational(int64_t range = 5, int64_t den = 3) {
    return Scalar(uniform(-range, range), uniform(1, den));
  }
  Vec vector(int n, int64_t range = 5, int64_t den = 3);
  // exact unit vector via inverse stereographic projection of a random rational point
  Vec unit_vector(int n, int64_t range = 4);
  SymTensor sym_tensor(int n, int m, int64_t range = 5, int64_t den = 3);
  SymTensor trace_free(int n, int m);
  // rational rotation in SO(3) from a random integer quaternion
  Mat rotation3();
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rk
