#pragma once
// small dense exact matrices and vectors
#include <vector>

#include "rigiditykit/scalar.hpp"

namespace rk {

using Vec = std::vector<Scalar>;

class Mat {
 public:
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static Mat identity(int n);

  Scalar& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Scalar& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat transpose() const;
  Vec col(int j) const;
  void set_col(int j, const Vec& v);
  bool is_zero() const;

  friend Mat operator*(const Mat& x, const Mat& y);
  friend Vec operator*(const Mat& x, const Vec& v);
  friend Mat operator+(const Mat& x, const Mat& y);
  friend Mat operator-(const Mat& x, const Mat& y);
  friend Mat operator*(const Scalar& s, const Mat& x);
  friend bool operator==(const Mat& x, const Mat& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
};

// sparse column view: per column the list of (row, value) nonzeros
struct SparseCols {
  int n = 0;
  std::vector<std::vector<std::pair<int, Scalar>>> cols;
  explicit SparseCols(const Mat& m);
  SparseCols() = default;
};

Scalar dot(const Vec& x, const Vec& y);  // bilinear, no conjugation
Vec axpy(const Scalar& s, const Vec& x, const Vec& y);  // s*x + y
Vec scaled(const Scalar& s, const Vec& x);
Vec basis_vec(int n, int i);
bool is_zero(const Vec& v);

// exact rank by fraction-free style elimination over Q(i)
int exact_rank(Mat m);
// rank modulo a word-size prime; real rational entries only. Returns -1 if some
// denominator vanishes mod p.
int modular_rank(const Mat& m, unsigned long p);
// rank over Q with a cheap certificate first: full column rank mod p implies it over Q
int certified_rank(const Mat& m, bool* used_modular = nullptr);

// basis of the right kernel, one column per kernel vector
std::vector<Vec> kernel(Mat m);

}  // namespace rk
