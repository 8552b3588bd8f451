#pragma once
// Octonions over Q(i) coefficients (only real ones are used).
// Table: e_i e_{i+1} = e_{i+3}, indices 1..7 taken mod 7, plus e_i^2 = -1.
#include <array>

#include "rigiditykit/scalar.hpp"

namespace rk {

class Octonion {
 public:
  std::array<Scalar, 8> c;  // c[0] real part, c[1..7] along e_1..e_7

  Octonion() = default;
  static Octonion unit(int k);  // e_k, e_0 = 1

  Octonion conj() const;
  Scalar norm2() const;
  Octonion inverse() const;
  bool is_zero() const;

  friend Octonion operator*(const Octonion& a, const Octonion& b);
  friend Octonion operator+(const Octonion& a, const Octonion& b);
  friend Octonion operator-(const Octonion& a, const Octonion& b);
  friend Octonion operator*(const Scalar& s, const Octonion& a);
  friend bool operator==(const Octonion& a, const Octonion& b) { return a.c == b.c; }
};

// e_i * e_j = sign * e_k
struct OctProduct {
  int sign;
  int k;
};
OctProduct oct_basis_product(int i, int j);

}  // namespace rk
