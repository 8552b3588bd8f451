#pragma once
// Gaussian rationals over GMP. Real-only values skip the imaginary arithmetic.
#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rk {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_);
};

class Scalar {
 public:
  mpq_class re, im;

  Scalar() = default;
  Scalar(long v) : re(v) {}
  Scalar(int v) : re(v) {}
  Scalar(long num, long den) : re(num, den) { re.canonicalize(); }
  Scalar(mpq_class r) : re(std::move(r)) { re.canonicalize(); }
  Scalar(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Scalar I() { return Scalar(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Scalar conj() const { return Scalar(re, -im); }
  mpq_class norm2() const { return re * re + im * im; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  // this += a*b without temporaries when possible
  void addmul(const Scalar& a, const Scalar& b);

  Scalar operator-() const { return Scalar(-re, -im); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // <re_num>/<re_den>[+<im_num>/<im_den>i]
  std::string str() const;
  static Scalar parse(std::string_view s, int line = 0, int col = 1);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace rk
