#include "rigiditykit/octonion.hpp"

#include <stdexcept>

namespace rk {

namespace {

struct Table {
  OctProduct t[8][8];
  Table() {
    for (int i = 0; i < 8; ++i) {
      t[0][i] = {1, i};
      t[i][0] = {1, i};
    }
    for (int i = 1; i < 8; ++i) t[i][i] = {-1, 0};
    for (int i = 1; i <= 7; ++i) {
      int a = i, b = (i % 7) + 1, c = ((i + 2) % 7) + 1;
      // cyclic: ab = c, bc = a, ca = b; reversed order flips the sign
      t[a][b] = {1, c};
      t[b][c] = {1, a};
      t[c][a] = {1, b};
      t[b][a] = {-1, c};
      t[c][b] = {-1, a};
      t[a][c] = {-1, b};
    }
  }
};

const Table& table() {
  static const Table tb;
  return tb;
}

}  // namespace

OctProduct oct_basis_product(int i, int j) { return table().t[i][j]; }

Octonion Octonion::unit(int k) {
  Octonion o;
  o.c[k] = 1;
  return o;
}

Octonion Octonion::conj() const {
  Octonion o = *this;
  for (int i = 1; i < 8; ++i) o.c[i] = -o.c[i];
  return o;
}

Scalar Octonion::norm2() const {
  Scalar s;
  for (const auto& x : c) s.addmul(x, x);
  return s;
}

Octonion Octonion::inverse() const {
  Scalar n = norm2();
  if (n.is_zero()) throw std::domain_error("zero octonion has no inverse");
  return (Scalar(1) / n) * conj();
}

bool Octonion::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

Octonion operator*(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int i = 0; i < 8; ++i) {
    if (a.c[i].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (b.c[j].is_zero()) continue;
      OctProduct p = oct_basis_product(i, j);
      Scalar t = a.c[i] * b.c[j];
      if (p.sign > 0)
        r.c[p.k] += t;
      else
        r.c[p.k] -= t;
    }
  }
  return r;
}

Octonion operator+(const Octonion& a, const Octonion& b) {
  Octonion r = a;
  for (int i = 0; i < 8; ++i) r.c[i] += b.c[i];
  return r;
}

Octonion operator-(const Octonion& a, const Octonion& b) {
  Octonion r = a;
  for (int i = 0; i < 8; ++i) r.c[i] -= b.c[i];
  return r;
}

Octonion operator*(const Scalar& s, const Octonion& a) {
  Octonion r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

}  // namespace rk
