#include "rigiditykit/rng.hpp"

#include <algorithm>

namespace rk {

Vec Rng::vector(int n, int64_t range, int64_t den) {
  Vec v(static_cast<size_t>(n));
  for (auto& x : v) x = rational(range, den);
  return v;
}

Vec Rng::unit_vector(int n, int64_t range) {
  for (;;) {
    Vec t(static_cast<size_t>(n - 1));
    for (auto& x : t) x = Scalar(uniform(-range, range), uniform(1, 2));
    Scalar s = dot(t, t);
    Vec v(static_cast<size_t>(n));
    Scalar inv = Scalar(1) / (s + Scalar(1));
    for (int i = 0; i < n - 1; ++i) v[i] = Scalar(2) * t[i] * inv;
    v[n - 1] = (s - Scalar(1)) * inv;
    // shuffle coordinates so the odd one out is not always last
    std::shuffle(v.begin(), v.end(), eng_);
    if (!rk::is_zero(v)) return v;
  }
}

SymTensor Rng::sym_tensor(int n, int m, int64_t range, int64_t den) {
  SymTensor t(n, m);
  for (size_t i = 0; i < t.size(); ++i) t[i] = rational(range, den);
  return t;
}

SymTensor Rng::trace_free(int n, int m) { return trace_free_part(sym_tensor(n, m)); }

Mat Rng::rotation3() {
  int64_t w, x, y, z;
  do {
    w = uniform(-3, 3);
    x = uniform(-3, 3);
    y = uniform(-3, 3);
    z = uniform(-3, 3);
  } while (w == 0 && x == 0 && y == 0 && z == 0);
  Scalar N(w * w + x * x + y * y + z * z);
  long e[3][3] = {{w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)},
                  {2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)},
                  {2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z}};
  Mat r(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = Scalar(e[i][j]) / N;
  return r;
}

}  // namespace rk
